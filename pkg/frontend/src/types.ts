// Request/response shapes of the trifocal HTTP service.

export interface FocusPayload {
  x: number;
  y: number;
  w: number;
}

export interface BoxPayload {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export interface SolveRequest {
  foci: FocusPayload[];
  metric?: { p: number; correction: number };
}

export interface ContourRequest extends SolveRequest {
  box: BoxPayload;
  s?: number;
  levels?: number[];
  resolution?: number;
}

export interface RegionMetricsRequest extends SolveRequest {
  box: BoxPayload;
  s: number;
  resolution?: number;
}

export interface FieldRequest extends SolveRequest {
  box: BoxPayload;
  resolution?: number;
}

export interface SolveResponse {
  id: string | null;
  point: { x: number; y: number };
  s0: number;
  status: "interior" | "at-vertex" | "degenerate-coincident";
  vertex: number | null;
  iterations: number;
  residual: number;
  converged: boolean;
}

export interface CurvePayload {
  closed: boolean;
  refine_tol: number;
  vertices: [number, number][];
}

export interface ContourEntry {
  level: number;
  curves: CurvePayload[];
}

export interface ContourResponse extends SolveResponse {
  contours: ContourEntry[];
}

export interface MetricsPayload {
  area: number;
  perimeter: number;
  area_error: number;
  perimeter_error: number;
  grid_step: number;
}

export interface RegionMetricsResponse extends SolveResponse {
  metrics: MetricsPayload;
}

export interface FieldResponse extends SolveResponse {
  field: {
    resolution: number;
    min: { x: number; y: number; value: number };
    max: { x: number; y: number; value: number };
    values: number[][];
  };
}

export interface ScenarioFocusInfo {
  name: string;
  lon: number;
  lat: number;
  w: number;
  px: number;
  py: number;
}

export interface ScenarioInfo {
  name: string;
  s: number | null;
  map: {
    width: number;
    height: number;
    west: number;
    east: number;
    south: number;
    north: number;
  };
  foci: ScenarioFocusInfo[];
  solution: { lon: number; lat: number; s0: number };
}

export interface ScenariosResponse {
  scenarios: ScenarioInfo[];
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: unknown[];
  s0?: number;
}
