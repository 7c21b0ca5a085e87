import { ApiClient, ApiError } from "./api.js";
import { ScenarioState, debounce, validateRequest } from "./state.js";
import type { SolveRequestValues } from "./types.js";
import { clear, renderBanner } from "./views/banner.js";
import { renderAllocationView } from "./views/allocation.js";
import { renderCompareView } from "./views/compare.js";
import { renderTradeoffView } from "./views/tradeoff.js";

const PAPER_GRID = [0.03, 0.05, 0.1, 0.15, 0.2, 0.25];

function element<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

export function wireUp(): void {
  const state = new ScenarioState();
  const baseUrl = element<HTMLInputElement>("base-url");
  const modelSelect = element<HTMLSelectElement>("model");
  const vaccinators = element<HTMLInputElement>("vaccinators");
  const epsilonSlider = element<HTMLInputElement>("epsilon");
  const epsilonValue = element<HTMLSpanElement>("epsilon-value");
  const roundTrip = element<HTMLInputElement>("round-trip");
  const problems = element<HTMLParagraphElement>("problems");
  const status = element<HTMLSpanElement>("status");
  const allocationPane = element<HTMLDivElement>("allocation-view");
  const tradeoffPane = element<HTMLDivElement>("tradeoff-view");
  const comparePane = element<HTMLDivElement>("compare-view");
  const districtPane = element<HTMLDivElement>("district-view");

  const client = (): ApiClient => new ApiClient(baseUrl.value);

  function currentValues(): SolveRequestValues {
    return {
      model: modelSelect.value === "2" ? 2 : 1,
      totalVaccinators: Number(vaccinators.value),
      equityDeviation: Number(epsilonSlider.value),
      roundTripFactor: Number(roundTrip.value),
    };
  }

  /** Returns null and shows the violations when the controls are invalid;
   * no request leaves the browser in that case. */
  function validatedValues(): SolveRequestValues | null {
    const values = currentValues();
    const violations = validateRequest(values);
    problems.textContent = violations.join("; ");
    return violations.length > 0 ? null : values;
  }

  async function runSolve(): Promise<void> {
    const values = validatedValues();
    if (!values) {
      return;
    }
    const token = state.beginPlanRequest();
    status.textContent = "solving...";
    try {
      const doc = await client().solve(values);
      if (!state.acceptPlan(token, doc)) {
        return; // stale response: a newer request is in flight
      }
      renderAllocationView(allocationPane, doc, values.totalVaccinators);
      status.textContent = doc.status;
    } catch (err) {
      state.settle(token, "plan");
      clear(allocationPane);
      renderBanner(allocationPane, err instanceof ApiError ? err.message : String(err));
      status.textContent = "error";
    }
  }

  async function runSweep(): Promise<void> {
    const values = validatedValues();
    if (!values) {
      return;
    }
    const token = state.beginSweepRequest();
    status.textContent = "sweeping...";
    try {
      const doc = await client().sweep(values, PAPER_GRID);
      if (!state.acceptSweep(token, doc)) {
        return;
      }
      renderTradeoffView(tradeoffPane, doc);
      status.textContent = "sweep done";
    } catch (err) {
      state.settle(token, "sweep");
      clear(tradeoffPane);
      renderBanner(tradeoffPane, err instanceof ApiError ? err.message : String(err));
      status.textContent = "error";
    }
  }

  async function runCompare(): Promise<void> {
    const values = validatedValues();
    if (!values) {
      return;
    }
    status.textContent = "comparing...";
    try {
      const doc = await client().compare(values);
      renderCompareView(comparePane, doc);
      status.textContent = "comparison done";
    } catch (err) {
      clear(comparePane);
      renderBanner(comparePane, err instanceof ApiError ? err.message : String(err));
      status.textContent = "error";
    }
  }

  async function loadDistrict(): Promise<void> {
    try {
      const doc = await client().district();
      clear(districtPane);
      const text = document.createElement("p");
      text.textContent =
        `${doc.name}: ${doc.localities.length} localities, ` +
        `${doc.union_councils} union councils, ${doc.centres} centres, ` +
        `need ${doc.need_total_visits} visits/year`;
      districtPane.appendChild(text);
    } catch (err) {
      clear(districtPane);
      renderBanner(districtPane, err instanceof ApiError ? err.message : String(err));
    }
  }

  const autoSolve = debounce(() => {
    void runSolve();
  }, 300);

  epsilonSlider.addEventListener("input", () => {
    epsilonValue.textContent = epsilonSlider.value;
  });
  // auto-solve fires on release, not per tick
  epsilonSlider.addEventListener("change", autoSolve);
  vaccinators.addEventListener("change", autoSolve);
  modelSelect.addEventListener("change", autoSolve);

  element<HTMLButtonElement>("solve-button").addEventListener("click", () => {
    void runSolve();
  });
  element<HTMLButtonElement>("sweep-button").addEventListener("click", () => {
    void runSweep();
  });
  element<HTMLButtonElement>("compare-button").addEventListener("click", () => {
    void runCompare();
  });
  element<HTMLButtonElement>("reload-district").addEventListener("click", () => {
    void loadDistrict();
  });

  void loadDistrict();
}

if (typeof document !== "undefined" && document.getElementById("scenario-app")) {
  wireUp();
}
