import type { PlanDocument, SolveRequestValues, TradeoffTableDocument } from "./types.js";

/** Client-side validation mirroring the service's parameter invariants.
 * Returns human-readable violations; an empty list means the request may be
 * sent. */
export function validateRequest(values: SolveRequestValues): string[] {
  const problems: string[] = [];
  if (!Number.isInteger(values.totalVaccinators) || values.totalVaccinators < 1) {
    problems.push("total vaccinators must be a whole number of at least 1");
  }
  if (
    !Number.isFinite(values.equityDeviation) ||
    values.equityDeviation < 0 ||
    values.equityDeviation > 1
  ) {
    problems.push("equity deviation must lie between 0 and 1");
  }
  if (!Number.isFinite(values.roundTripFactor) || values.roundTripFactor <= 0) {
    problems.push("round-trip factor must be positive");
  }
  if (values.model !== 1 && values.model !== 2) {
    problems.push("model must be 1 or 2");
  }
  return problems;
}

/** Holds the latest responses and discards stale ones: each control group
 * keeps a single in-flight request, identified by a sequence number. */
export class ScenarioState {
  values: SolveRequestValues = {
    model: 1,
    totalVaccinators: 46,
    equityDeviation: 0.03,
    roundTripFactor: 2.0,
  };
  lastPlan: PlanDocument | null = null;
  lastSweep: TradeoffTableDocument | null = null;
  pending = false;

  private planSeq = 0;
  private sweepSeq = 0;

  beginPlanRequest(): number {
    this.pending = true;
    return ++this.planSeq;
  }

  /** Stores the response unless a newer request has been issued. */
  acceptPlan(token: number, doc: PlanDocument): boolean {
    if (token !== this.planSeq) {
      return false;
    }
    this.lastPlan = doc;
    this.pending = false;
    return true;
  }

  beginSweepRequest(): number {
    this.pending = true;
    return ++this.sweepSeq;
  }

  acceptSweep(token: number, doc: TradeoffTableDocument): boolean {
    if (token !== this.sweepSeq) {
      return false;
    }
    this.lastSweep = doc;
    this.pending = false;
    return true;
  }

  settle(token: number, kind: "plan" | "sweep"): void {
    const current = kind === "plan" ? this.planSeq : this.sweepSeq;
    if (token === current) {
      this.pending = false;
    }
  }
}

/** Trailing-edge debounce used for auto-solve on slider release. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  delayMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) {
      clearTimeout(timer);
    }
    timer = setTimeout(() => fn(...args), delayMs);
  };
}
