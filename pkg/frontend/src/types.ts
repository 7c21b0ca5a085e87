/** Payload shapes served by the planning service (documents are rendered
 * verbatim: the UI never recomputes optimization results). */

export interface ParamsDocument {
  total_vaccinators: number;
  children_per_day: number;
  working_days: number;
  equity_deviation: number;
  round_trip_factor: number;
  cross_boundary: boolean;
  exact_equity: boolean;
  annual_capacity_per_vaccinator: number;
}

export interface CoverageEntry {
  union_council: string;
  age: string;
  alpha: number;
}

export interface FlowEntry {
  centre: string;
  union_council: string;
  age: string;
  visits: number;
}

export interface PlanBody {
  vaccinators_by_centre: Record<string, number>;
  vaccinators_by_locality: Record<string, number>;
  alpha_max: number;
  alpha_min: number;
  total_travel_hours: number;
  coverage: CoverageEntry[];
  flows: FlowEntry[];
}

export interface PlanDocument {
  kind: "allocation-plan";
  model: 1 | 2;
  status: "OPTIMAL" | "INFEASIBLE";
  params: ParamsDocument;
  diagnostic: string | null;
  plan: PlanBody | null;
}

export interface TradeoffRowDocument {
  epsilon: number;
  status: "OPTIMAL" | "INFEASIBLE";
  travel_hours: number | null;
  alpha_max: number | null;
  alpha_min: number | null;
  vaccinators_by_locality: Record<string, number> | null;
}

export interface TradeoffTableDocument {
  kind: "tradeoff-table";
  model: 1 | 2;
  params: ParamsDocument;
  baseline_epsilon: number | null;
  rows: TradeoffRowDocument[];
}

export interface DistrictSummaryDocument {
  kind: "district-summary";
  name: string;
  localities: { id: string; name: string; union_councils: number; centres: number }[];
  union_councils: number;
  centres: number;
  age_categories: string[];
  schedule: Record<string, number>;
  need_total_visits: number;
  travel_minutes: { min: number; max: number; mean: number };
}

export interface ComparisonSide {
  status: "OPTIMAL" | "INFEASIBLE";
  diagnostic?: string | null;
  travel_hours?: number;
  alpha_max?: number;
  alpha_min?: number;
  alpha?: number;
  vaccinators_by_locality?: Record<string, number>;
}

export interface ComparisonDocument {
  kind: "model-comparison";
  params: ParamsDocument;
  epsilon: number;
  model1: ComparisonSide;
  model2: ComparisonSide;
  saving_percent: { raw: number; display: number } | null;
  locality_shift: Record<string, { model1: number | null; model2: number | null }>;
}

export interface ErrorDocument {
  kind: "error";
  error: string;
}

export interface SolveRequestValues {
  model: 1 | 2;
  totalVaccinators: number;
  equityDeviation: number;
  roundTripFactor: number;
}
