// Render-ready scene assembled purely from UI state plus service
// responses.  Every number shown to the planner (marker position, s0,
// area, perimeter) is copied from a response, never derived locally.

import type { Background, FocusState, Mode, UiState } from "./state.js";
import { LADDER_SIZE } from "./state.js";
import type {
  ContourEntry,
  MetricsPayload,
  SolveResponse,
} from "./types.js";

export interface SceneCurve {
  level: number;
  points: [number, number][];
  closed: boolean;
}

export interface SceneBand {
  level: number;
  polygon: [number, number][];
  color: string;
}

export interface Scene {
  foci: FocusState[];
  mode: Mode;
  marker: { x: number; y: number } | null;
  s0: number | null;
  status: string | null;
  s: number;
  degenerate: boolean;
  curves: SceneCurve[];
  bands: SceneBand[];
  metrics: MetricsPayload | null;
  opacity: number;
  background: Background;
  stale: boolean;
  banner: string | null;
}

// dark-to-light ramp for the eight color-mapping bands (inner to outer)
export const BAND_COLORS: readonly string[] = [
  "#31243d",
  "#3f3a63",
  "#40537f",
  "#3e6c8e",
  "#418498",
  "#509ba0",
  "#6fb2a4",
  "#9cc7ab",
];

/** Ladder of levels spaced uniformly strictly between s0 and maxValue. */
export function ladderLevels(
  s0: number,
  maxValue: number,
  count: number = LADDER_SIZE,
): number[] {
  const out: number[] = [];
  for (let k = 1; k <= count; k++) {
    out.push(s0 + (k * (maxValue - s0)) / (count + 1));
  }
  return out;
}

export interface SceneData {
  solve: SolveResponse | null;
  curveEntries: ContourEntry[]; // single-level curves (curve mode)
  ladderEntries: ContourEntry[]; // color-mapping ladder
  metrics: MetricsPayload | null;
}

export function emptySceneData(): SceneData {
  return { solve: null, curveEntries: [], ladderEntries: [], metrics: null };
}

function toSceneCurves(entries: ContourEntry[]): SceneCurve[] {
  const out: SceneCurve[] = [];
  for (const entry of entries) {
    for (const curve of entry.curves) {
      out.push({ level: entry.level, points: curve.vertices, closed: curve.closed });
    }
  }
  return out;
}

function toSceneBands(entries: ContourEntry[]): SceneBand[] {
  // painter's order: fill from the outermost (largest) level down so the
  // overlapping closed regions read as nested bands
  const bands: SceneBand[] = [];
  entries.forEach((entry, i) => {
    for (const curve of entry.curves) {
      if (curve.closed) {
        bands.push({
          level: entry.level,
          polygon: curve.vertices,
          color: BAND_COLORS[Math.min(i, BAND_COLORS.length - 1)],
        });
      }
    }
  });
  bands.sort((a, b) => b.level - a.level);
  return bands;
}

export function buildScene(state: UiState, data: SceneData): Scene {
  const solve = data.solve;
  // sMin can be fresher than the cached solve response (a raced
  // level-below-minimum error carries the new s0), so honor both
  const degenerate = solve !== null && state.s <= Math.max(solve.s0, state.sMin);
  return {
    foci: state.foci.map((f) => ({ ...f })),
    mode: state.mode,
    marker: solve ? { ...solve.point } : null,
    s0: solve ? solve.s0 : null,
    status: solve ? solve.status : null,
    s: state.s,
    degenerate,
    curves: state.mode === "curve" && !degenerate ? toSceneCurves(data.curveEntries) : [],
    bands: state.mode === "color-mapping" ? toSceneBands(data.ladderEntries) : [],
    metrics: state.mode === "curve" && !degenerate ? data.metrics : null,
    opacity: state.opacity,
    background: state.background,
    stale: state.stale,
    banner: state.banner,
  };
}
