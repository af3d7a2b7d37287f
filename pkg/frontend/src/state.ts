// UI state and the slider contracts: weights default to 1 and run from
// 0.01 to 10 in 0.01 steps; the level slider runs up to 2000 with its live
// minimum clamped to the serverside s0; opacity offers five presets plus a
// custom 0..100 value.

export const WEIGHT_SLIDER = { min: 0.01, max: 10, step: 0.01, default: 1 } as const;
export const S_SLIDER_MAX = 2000;
export const OPACITY_PRESETS: readonly number[] = [20, 40, 60, 80, 100];
export const DEBOUNCE_MS = 80;
export const LADDER_SIZE = 8;

export type Mode = "curve" | "color-mapping";

export type Background =
  | { kind: "none" }
  | { kind: "bundled"; id: string }
  | { kind: "upload"; url: string };

export interface FocusState {
  x: number;
  y: number;
  w: number;
}

export interface MapCalibrationForm {
  width: number;
  height: number;
  west: number;
  east: number;
  south: number;
  north: number;
}

export interface UiState {
  foci: [FocusState, FocusState, FocusState];
  mode: Mode;
  s: number;
  sMin: number; // serverside s0; the level slider cannot go below it
  opacity: number;
  background: Background;
  calibration: MapCalibrationForm | null;
  stale: boolean;
  banner: string | null;
}

export function clampWeight(value: number): number {
  const snapped = Math.round(value * 100) / 100;
  return Math.min(WEIGHT_SLIDER.max, Math.max(WEIGHT_SLIDER.min, snapped));
}

export function clampS(value: number, sMin: number): number {
  return Math.min(S_SLIDER_MAX, Math.max(sMin, value));
}

export function clampOpacity(value: number): number {
  return Math.min(100, Math.max(0, value));
}

export function initialState(foci: [FocusState, FocusState, FocusState]): UiState {
  return {
    foci,
    mode: "curve",
    s: 0, // clamped up to s0 after the first solve round trip
    sMin: 0,
    opacity: 100,
    background: { kind: "none" },
    calibration: null,
    stale: false,
    banner: null,
  };
}

// lon/lat of a canvas pixel under the entered calibration (display only)
export function pixelToGeo(
  x: number,
  y: number,
  cal: MapCalibrationForm,
): { lon: number; lat: number } {
  return {
    lon: cal.west + (x / cal.width) * (cal.east - cal.west),
    lat: cal.north - (y / cal.height) * (cal.north - cal.south),
  };
}
