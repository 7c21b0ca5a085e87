import type { PlanDocument } from "../types.js";
import { clear, renderBanner } from "./banner.js";

function malformed(plan: unknown): string | null {
  const doc = plan as PlanDocument;
  if (!doc || doc.kind !== "allocation-plan") {
    return "unexpected payload: not an allocation plan document";
  }
  if (doc.status === "OPTIMAL" && !doc.plan) {
    return "optimal response is missing its plan body";
  }
  return null;
}

/** Locality table plus per-entry coverage bars; every number comes verbatim
 * from the payload. The locality sum is asserted against the requested
 * vaccinator total and a mismatch raises a banner instead of a table. */
export function renderAllocationView(
  container: HTMLElement,
  plan: PlanDocument,
  expectedVaccinators: number,
): void {
  clear(container);
  const problem = malformed(plan);
  if (problem) {
    renderBanner(container, problem);
    return;
  }
  const doc = container.ownerDocument;

  if (plan.status !== "OPTIMAL" || !plan.plan) {
    const note = doc.createElement("p");
    note.className = "infeasible-note";
    note.textContent = `INFEASIBLE: ${plan.diagnostic ?? "no plan"}`;
    container.appendChild(note);
    return;
  }
  const body = plan.plan;

  const counts = Object.values(body.vaccinators_by_locality);
  const total = counts.reduce((a, b) => a + b, 0);
  if (total !== expectedVaccinators) {
    renderBanner(
      container,
      `locality totals sum to ${total}, expected ${expectedVaccinators}`,
    );
    return;
  }

  const summary = doc.createElement("p");
  summary.className = "plan-summary";
  summary.textContent =
    `travel hours ${String(body.total_travel_hours)}; ` +
    `alpha max ${String(body.alpha_max)}; alpha min ${String(body.alpha_min)}`;
  container.appendChild(summary);

  const table = doc.createElement("table");
  table.className = "locality-table";
  const head = doc.createElement("tr");
  for (const label of ["locality", "vaccinators"]) {
    const th = doc.createElement("th");
    th.textContent = label;
    head.appendChild(th);
  }
  table.appendChild(head);
  for (const [locality, count] of Object.entries(body.vaccinators_by_locality)) {
    const tr = doc.createElement("tr");
    const name = doc.createElement("td");
    name.textContent = locality;
    const value = doc.createElement("td");
    value.className = "locality-count";
    value.textContent = String(count);
    tr.appendChild(name);
    tr.appendChild(value);
    table.appendChild(tr);
  }
  const totalRow = doc.createElement("tr");
  totalRow.className = "locality-total";
  const totalLabel = doc.createElement("td");
  totalLabel.textContent = "total";
  const totalValue = doc.createElement("td");
  totalValue.textContent = String(total);
  totalRow.appendChild(totalLabel);
  totalRow.appendChild(totalValue);
  table.appendChild(totalRow);
  container.appendChild(table);

  const bars = doc.createElement("div");
  bars.className = "coverage-bars";
  for (const entry of body.coverage) {
    const rowDiv = doc.createElement("div");
    rowDiv.className = "coverage-row";
    const label = doc.createElement("span");
    label.className = "coverage-label";
    label.textContent = `${entry.union_council} ${entry.age}`;
    const track = doc.createElement("div");
    track.className = "coverage-track";
    const bar = doc.createElement("div");
    bar.className = "coverage-bar";
    bar.style.width = `${Math.min(100, Math.max(0, entry.alpha * 100))}%`;
    bar.setAttribute("data-alpha", String(entry.alpha));
    if (entry.alpha > body.alpha_max + 1e-12 || entry.alpha < body.alpha_min - 1e-12) {
      bar.classList.add("out-of-band");
    }
    track.appendChild(bar);
    const value = doc.createElement("span");
    value.className = "coverage-value";
    value.textContent = String(entry.alpha);
    rowDiv.appendChild(label);
    rowDiv.appendChild(track);
    rowDiv.appendChild(value);
    bars.appendChild(rowDiv);
  }
  container.appendChild(bars);
}
