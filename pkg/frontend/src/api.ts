import type {
  ComparisonDocument,
  DistrictSummaryDocument,
  PlanDocument,
  SolveRequestValues,
  TradeoffTableDocument,
} from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

/** Thin client for the planning service; one base-URL setting, no caching. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  async district(): Promise<DistrictSummaryDocument> {
    const response = await this.fetchFn(this.url("/district"));
    if (!response.ok) {
      throw new ApiError(response.status, await describeError(response));
    }
    return (await response.json()) as DistrictSummaryDocument;
  }

  /** Returns the plan document for both 200 and 422 (INFEASIBLE) responses;
   * anything else is an error. */
  async solve(values: SolveRequestValues): Promise<PlanDocument> {
    const response = await this.fetchFn(this.url("/solve"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        model: values.model,
        total_vaccinators: values.totalVaccinators,
        equity_deviation: values.equityDeviation,
        round_trip_factor: values.roundTripFactor,
      }),
    });
    if (!response.ok && response.status !== 422) {
      throw new ApiError(response.status, await describeError(response));
    }
    return (await response.json()) as PlanDocument;
  }

  async compare(values: SolveRequestValues): Promise<ComparisonDocument> {
    const response = await this.fetchFn(this.url("/compare"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        total_vaccinators: values.totalVaccinators,
        equity_deviation: values.equityDeviation,
        round_trip_factor: values.roundTripFactor,
      }),
    });
    if (!response.ok) {
      throw new ApiError(response.status, await describeError(response));
    }
    return (await response.json()) as ComparisonDocument;
  }

  async sweep(
    values: SolveRequestValues,
    epsilons: number[],
  ): Promise<TradeoffTableDocument> {
    const response = await this.fetchFn(this.url("/sweep"), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({
        model: values.model,
        total_vaccinators: values.totalVaccinators,
        equity_deviation: values.equityDeviation,
        round_trip_factor: values.roundTripFactor,
        epsilons,
      }),
    });
    if (!response.ok) {
      throw new ApiError(response.status, await describeError(response));
    }
    return (await response.json()) as TradeoffTableDocument;
  }
}

async function describeError(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { error?: string };
    if (body && typeof body.error === "string") {
      return body.error;
    }
  } catch {
    // fall through to the generic message
  }
  return `service returned ${response.status}`;
}
