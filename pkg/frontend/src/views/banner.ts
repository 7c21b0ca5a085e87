/** Renders an error banner; tests and callers find it via .error-banner. */
export function renderBanner(container: HTMLElement, message: string): void {
  const banner = container.ownerDocument.createElement("div");
  banner.className = "error-banner";
  banner.setAttribute("role", "alert");
  banner.textContent = message;
  container.appendChild(banner);
}

export function clear(container: HTMLElement): void {
  while (container.firstChild) {
    container.removeChild(container.firstChild);
  }
}
