import type { TradeoffRowDocument, TradeoffTableDocument } from "../types.js";
import { clear, renderBanner } from "./banner.js";

const WIDTH = 640;
const HEIGHT = 320;
const MARGIN = { left: 70, right: 70, top: 20, bottom: 40 };
const SVG_NS = "http://www.w3.org/2000/svg";

function malformed(table: unknown): string | null {
  const doc = table as TradeoffTableDocument;
  if (!doc || doc.kind !== "tradeoff-table" || !Array.isArray(doc.rows)) {
    return "unexpected payload: not a trade-off table document";
  }
  if (doc.rows.length === 0) {
    return "trade-off table has no rows";
  }
  for (const row of doc.rows) {
    if (typeof row.epsilon !== "number" || typeof row.status !== "string") {
      return "trade-off row is missing epsilon or status";
    }
    if (row.status === "OPTIMAL" && typeof row.travel_hours !== "number") {
      return "optimal row is missing its travel hours";
    }
  }
  return null;
}

/** Chart plus table. Every displayed number is taken verbatim from the
 * service payload; infeasible rows are flagged and excluded from the
 * curve. */
export function renderTradeoffView(container: HTMLElement, table: TradeoffTableDocument): void {
  clear(container);
  const problem = malformed(table);
  if (problem) {
    renderBanner(container, problem);
    return;
  }
  const doc = container.ownerDocument;
  const optimal = table.rows.filter((row) => row.status === "OPTIMAL");

  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("class", "tradeoff-chart");
  container.appendChild(svg);

  if (optimal.length > 0) {
    const epsilons = table.rows.map((row) => row.epsilon);
    const epsMin = Math.min(...epsilons);
    const epsMax = Math.max(...epsilons);
    const hours = optimal.map((row) => row.travel_hours as number);
    const hoursMin = Math.min(...hours);
    const hoursMax = Math.max(...hours);

    const x = (eps: number): number => {
      if (epsMax === epsMin) {
        return (MARGIN.left + WIDTH - MARGIN.right) / 2;
      }
      return (
        MARGIN.left +
        ((eps - epsMin) / (epsMax - epsMin)) * (WIDTH - MARGIN.left - MARGIN.right)
      );
    };
    const yHours = (value: number): number => {
      const span = hoursMax === hoursMin ? 1 : hoursMax - hoursMin;
      return (
        HEIGHT -
        MARGIN.bottom -
        ((value - hoursMin) / span) * (HEIGHT - MARGIN.top - MARGIN.bottom)
      );
    };
    const yAlpha = (value: number): number =>
      HEIGHT - MARGIN.bottom - value * (HEIGHT - MARGIN.top - MARGIN.bottom);

    // coverage band [alpha_min, alpha_max] on the right-hand axis
    if (optimal.length > 1) {
      const band = doc.createElementNS(SVG_NS, "polygon");
      const upper = optimal.map((row) => `${x(row.epsilon)},${yAlpha(row.alpha_max as number)}`);
      const lower = optimal
        .slice()
        .reverse()
        .map((row) => `${x(row.epsilon)},${yAlpha(row.alpha_min as number)}`);
      band.setAttribute("points", [...upper, ...lower].join(" "));
      band.setAttribute("class", "coverage-band");
      band.setAttribute("fill", "#9ecae1");
      band.setAttribute("opacity", "0.5");
      svg.appendChild(band);
    }

    if (optimal.length > 1) {
      const line = doc.createElementNS(SVG_NS, "polyline");
      line.setAttribute(
        "points",
        optimal.map((row) => `${x(row.epsilon)},${yHours(row.travel_hours as number)}`).join(" "),
      );
      line.setAttribute("class", "travel-curve");
      line.setAttribute("fill", "none");
      line.setAttribute("stroke", "#d95f02");
      line.setAttribute("stroke-width", "2");
      svg.appendChild(line);
    }

    for (const row of optimal) {
      const point = doc.createElementNS(SVG_NS, "circle");
      point.setAttribute("cx", String(x(row.epsilon)));
      point.setAttribute("cy", String(yHours(row.travel_hours as number)));
      point.setAttribute("r", "4");
      point.setAttribute("class", "travel-point");
      point.setAttribute("fill", "#d95f02");
      svg.appendChild(point);
    }

    for (const row of table.rows) {
      if (row.status !== "OPTIMAL") {
        const marker = doc.createElementNS(SVG_NS, "text");
        marker.setAttribute("x", String(x(row.epsilon)));
        marker.setAttribute("y", String(HEIGHT - MARGIN.bottom + 16));
        marker.setAttribute("class", "infeasible-marker");
        marker.setAttribute("fill", "#b30000");
        marker.textContent = "x";
        svg.appendChild(marker);
      }
    }
  }

  const flagged = table.rows.filter((row) => row.status !== "OPTIMAL");
  if (flagged.length > 0) {
    const list = doc.createElement("p");
    list.className = "infeasible-list";
    list.textContent =
      "infeasible at: " + flagged.map((row) => String(row.epsilon)).join(", ");
    container.appendChild(list);
  }

  container.appendChild(buildTable(doc, table.rows));
}

function buildTable(doc: Document, rows: TradeoffRowDocument[]): HTMLTableElement {
  const table = doc.createElement("table");
  table.className = "tradeoff-table";
  const head = doc.createElement("tr");
  for (const label of ["deviation", "status", "travel hours", "alpha max", "alpha min", "by locality"]) {
    const th = doc.createElement("th");
    th.textContent = label;
    head.appendChild(th);
  }
  table.appendChild(head);
  for (const row of rows) {
    const tr = doc.createElement("tr");
    tr.className = row.status === "OPTIMAL" ? "row-optimal" : "row-infeasible";
    const cells = [
      String(row.epsilon),
      row.status,
      row.travel_hours === null ? "" : String(row.travel_hours),
      row.alpha_max === null ? "" : String(row.alpha_max),
      row.alpha_min === null ? "" : String(row.alpha_min),
      row.vaccinators_by_locality === null
        ? ""
        : Object.entries(row.vaccinators_by_locality)
            .map(([loc, count]) => `${loc}=${count}`)
            .join(" "),
    ];
    for (const text of cells) {
      const td = doc.createElement("td");
      td.textContent = text;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  return table;
}
