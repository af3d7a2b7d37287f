// Typed client for the trifocal service.  The fetch implementation is
// injectable so tests can intercept every request and serve recorded
// fixtures; the UI itself never computes geometry.

import type {
  ApiErrorBody,
  ContourRequest,
  ContourResponse,
  FieldRequest,
  FieldResponse,
  RegionMetricsRequest,
  RegionMetricsResponse,
  ScenariosResponse,
  SolveRequest,
  SolveResponse,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: ApiErrorBody,
  ) {
    super(`${body.code}: ${body.message}`);
    this.name = "ApiError";
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async post<T>(path: string, payload: unknown): Promise<T> {
    const res = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    if (!res.ok) {
      throw new ApiError(res.status, (await res.json()) as ApiErrorBody);
    }
    return (await res.json()) as T;
  }

  solve(req: SolveRequest): Promise<SolveResponse> {
    return this.post("/api/solve", req);
  }

  contour(req: ContourRequest): Promise<ContourResponse> {
    return this.post("/api/contour", req);
  }

  regionMetrics(req: RegionMetricsRequest): Promise<RegionMetricsResponse> {
    return this.post("/api/region-metrics", req);
  }

  field(req: FieldRequest): Promise<FieldResponse> {
    return this.post("/api/field", req);
  }

  async scenarios(): Promise<ScenariosResponse> {
    const res = await this.fetchImpl(this.baseUrl + "/api/scenarios");
    if (!res.ok) {
      throw new ApiError(res.status, (await res.json()) as ApiErrorBody);
    }
    return (await res.json()) as ScenariosResponse;
  }
}
