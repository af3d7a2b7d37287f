import { describe, expect, it } from "vitest";

import {
  clampOpacity,
  clampS,
  clampWeight,
  initialState,
  OPACITY_PRESETS,
  pixelToGeo,
  S_SLIDER_MAX,
  WEIGHT_SLIDER,
} from "../src/state.js";
import { BAND_COLORS, ladderLevels } from "../src/scene.js";
import { LADDER_SIZE } from "../src/state.js";

describe("slider contract", () => {
  it("weight slider: default 1, range 0.01..10, step 0.01", () => {
    expect(WEIGHT_SLIDER.default).toBe(1);
    expect(WEIGHT_SLIDER.min).toBe(0.01);
    expect(WEIGHT_SLIDER.max).toBe(10);
    expect(WEIGHT_SLIDER.step).toBe(0.01);
  });

  it("level slider runs up to 2000", () => {
    expect(S_SLIDER_MAX).toBe(2000);
  });

  it("opacity presets are 20/40/60/80/100 plus custom values", () => {
    expect([...OPACITY_PRESETS]).toEqual([20, 40, 60, 80, 100]);
    expect(clampOpacity(37.5)).toBe(37.5); // custom level allowed
    expect(clampOpacity(-3)).toBe(0);
    expect(clampOpacity(140)).toBe(100);
  });
});

describe("clamping", () => {
  it("weights snap to the 0.01 grid inside [0.01, 10]", () => {
    expect(clampWeight(0)).toBe(0.01);
    expect(clampWeight(-5)).toBe(0.01);
    expect(clampWeight(11)).toBe(10);
    expect(clampWeight(2.349)).toBe(2.35);
    expect(clampWeight(1)).toBe(1);
  });

  it("level clamps live to [s0, 2000]", () => {
    expect(clampS(100, 596.4)).toBe(596.4);
    expect(clampS(700, 596.4)).toBe(700);
    expect(clampS(5000, 596.4)).toBe(2000);
  });
});

describe("initial state", () => {
  it("starts in curve mode at full opacity with default weights", () => {
    const st = initialState([
      { x: 0, y: 0, w: 1 },
      { x: 1, y: 0, w: 1 },
      { x: 0, y: 1, w: 1 },
    ]);
    expect(st.mode).toBe("curve");
    expect(st.opacity).toBe(100);
    expect(st.background).toEqual({ kind: "none" });
    expect(st.foci.every((f) => f.w === WEIGHT_SLIDER.default)).toBe(true);
  });
});

describe("color-mapping ladder", () => {
  it("produces eight levels strictly between s0 and the field maximum", () => {
    const levels = ladderLevels(600, 1500);
    expect(levels).toHaveLength(LADDER_SIZE);
    expect(BAND_COLORS).toHaveLength(LADDER_SIZE);
    for (const v of levels) {
      expect(v).toBeGreaterThan(600);
      expect(v).toBeLessThan(1500);
    }
    for (let i = 1; i < levels.length; i++) {
      expect(levels[i]).toBeGreaterThan(levels[i - 1]);
    }
    const step = levels[1] - levels[0];
    expect(levels[0] - 600).toBeCloseTo(step, 9);
    expect(1500 - levels[levels.length - 1]).toBeCloseTo(step, 9);
  });
});

describe("calibration readout", () => {
  it("maps canvas pixels back to lon/lat with the form values", () => {
    const cal = { width: 1000, height: 500, west: 10, east: 30, south: 40, north: 50 };
    expect(pixelToGeo(0, 0, cal)).toEqual({ lon: 10, lat: 50 });
    expect(pixelToGeo(500, 250, cal)).toEqual({ lon: 20, lat: 45 });
  });
});
