// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from "vitest";

import { renderTradeoffView } from "../src/views/tradeoff.js";
import type { TradeoffTableDocument } from "../src/types.js";
import { fixtureJson } from "./stub_server.js";

let container: HTMLElement;

beforeEach(() => {
  document.body.innerHTML = '<div id="view"></div>';
  container = document.getElementById("view") as HTMLElement;
});

describe("trade-off view", () => {
  it("plots exactly the served rows", () => {
    const table = fixtureJson<TradeoffTableDocument>("sweep_model1.json");
    renderTradeoffView(container, table);
    const points = container.querySelectorAll("circle.travel-point");
    expect(points).toHaveLength(table.rows.filter((r) => r.status === "OPTIMAL").length);
    const rows = container.querySelectorAll("table.tradeoff-table tr");
    expect(rows).toHaveLength(table.rows.length + 1); // header + one per row
    expect(container.querySelector("polyline.travel-curve")).not.toBeNull();
    expect(container.querySelector("polygon.coverage-band")).not.toBeNull();
  });

  it("shows the payload numbers verbatim in the table", () => {
    const table = fixtureJson<TradeoffTableDocument>("sweep_model1.json");
    renderTradeoffView(container, table);
    const bodyRows = Array.from(
      container.querySelectorAll("table.tradeoff-table tr"),
    ).slice(1);
    table.rows.forEach((row, i) => {
      const cells = Array.from(bodyRows[i].querySelectorAll("td")).map(
        (td) => td.textContent,
      );
      expect(cells[0]).toBe(String(row.epsilon));
      expect(cells[1]).toBe(row.status);
      expect(cells[2]).toBe(String(row.travel_hours));
      expect(cells[3]).toBe(String(row.alpha_max));
      expect(cells[4]).toBe(String(row.alpha_min));
    });
  });

  it("flags infeasible rows and keeps them off the curve", () => {
    const table = fixtureJson<TradeoffTableDocument>("sweep_threshold.json");
    const optimal = table.rows.filter((r) => r.status === "OPTIMAL").length;
    const infeasible = table.rows.length - optimal;
    expect(infeasible).toBeGreaterThan(0);
    renderTradeoffView(container, table);
    expect(container.querySelectorAll("circle.travel-point")).toHaveLength(optimal);
    expect(container.querySelectorAll("tr.row-infeasible")).toHaveLength(infeasible);
    expect(container.querySelector("p.infeasible-list")?.textContent).toContain("0.05");
  });

  it("renders a single point without a curve for one-row tables", () => {
    const table = fixtureJson<TradeoffTableDocument>("sweep_model1.json");
    const single: TradeoffTableDocument = { ...table, rows: [table.rows[0]] };
    renderTradeoffView(container, single);
    expect(container.querySelectorAll("circle.travel-point")).toHaveLength(1);
    expect(container.querySelector("polyline.travel-curve")).toBeNull();
  });

  it("renders only flags when everything is infeasible", () => {
    const table = fixtureJson<TradeoffTableDocument>("sweep_threshold.json");
    const allBad: TradeoffTableDocument = {
      ...table,
      rows: table.rows.map((row) => ({
        ...row,
        status: "INFEASIBLE" as const,
        travel_hours: null,
        alpha_max: null,
        alpha_min: null,
        vaccinators_by_locality: null,
      })),
    };
    renderTradeoffView(container, allBad);
    expect(container.querySelectorAll("circle.travel-point")).toHaveLength(0);
    expect(container.querySelector("polyline.travel-curve")).toBeNull();
    expect(container.querySelector("p.infeasible-list")).not.toBeNull();
  });

  it("shows a banner on malformed payloads", () => {
    renderTradeoffView(container, { kind: "nonsense" } as unknown as TradeoffTableDocument);
    expect(container.querySelector(".error-banner")).not.toBeNull();
    renderTradeoffView(container, {
      kind: "tradeoff-table",
      rows: [{ epsilon: "x", status: "OPTIMAL" }],
    } as unknown as TradeoffTableDocument);
    expect(container.querySelector(".error-banner")).not.toBeNull();
  });
});
