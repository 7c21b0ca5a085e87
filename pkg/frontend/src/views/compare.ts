import type { ComparisonDocument, ComparisonSide } from "../types.js";
import { clear, renderBanner } from "./banner.js";

function malformed(doc: unknown): string | null {
  const comparison = doc as ComparisonDocument;
  if (!comparison || comparison.kind !== "model-comparison") {
    return "unexpected payload: not a model-comparison document";
  }
  if (!comparison.model1 || !comparison.model2 || !comparison.locality_shift) {
    return "comparison document is missing its model sections";
  }
  return null;
}

function describe(side: ComparisonSide): string {
  if (side.status !== "OPTIMAL") {
    return `INFEASIBLE (${side.diagnostic ?? "no diagnostic"})`;
  }
  return `travel hours ${String(side.travel_hours)}`;
}

/** Side-by-side per-locality counts with the service-computed saving. */
export function renderCompareView(container: HTMLElement, doc: ComparisonDocument): void {
  clear(container);
  const problem = malformed(doc);
  if (problem) {
    renderBanner(container, problem);
    return;
  }
  const dom = container.ownerDocument;

  const heading = dom.createElement("p");
  heading.className = "compare-summary";
  heading.textContent =
    `model 1 (band ${String(doc.epsilon)}): ${describe(doc.model1)}; ` +
    `model 2 (exact equity): ${describe(doc.model2)}`;
  container.appendChild(heading);

  const saving = dom.createElement("p");
  saving.className = "compare-saving";
  saving.textContent =
    doc.saving_percent === null
      ? "saving: not available"
      : `saving: ${String(doc.saving_percent.display)}% (raw ${String(doc.saving_percent.raw)})`;
  container.appendChild(saving);

  const table = dom.createElement("table");
  table.className = "compare-table";
  const head = dom.createElement("tr");
  for (const label of ["locality", "model 1", "model 2"]) {
    const th = dom.createElement("th");
    th.textContent = label;
    head.appendChild(th);
  }
  table.appendChild(head);
  for (const [locality, shift] of Object.entries(doc.locality_shift)) {
    const tr = dom.createElement("tr");
    const cells = [
      locality,
      shift.model1 === null ? "-" : String(shift.model1),
      shift.model2 === null ? "-" : String(shift.model2),
    ];
    cells.forEach((text, i) => {
      const td = dom.createElement("td");
      if (i > 0) {
        td.className = `compare-count model${i}`;
      }
      td.textContent = text;
      tr.appendChild(td);
    });
    table.appendChild(tr);
  }
  container.appendChild(table);
}
