// Orchestrates the planning surface: every interaction mutates local UI
// state, then a debounced refresh round-trips through the service and the
// freshest response (by sequence number) becomes the next scene.

import { ApiClient, ApiError } from "./api.js";
import { buildScene, emptySceneData, ladderLevels, type Scene, type SceneData } from "./scene.js";
import { debounce, SequencedApplier, type Debounced } from "./sequencing.js";
import {
  clampOpacity,
  clampS,
  clampWeight,
  DEBOUNCE_MS,
  initialState,
  type Background,
  type FocusState,
  type MapCalibrationForm,
  type Mode,
  type UiState,
} from "./state.js";
import type { BoxPayload, ContourEntry } from "./types.js";

export type SliderId = "wA" | "wB" | "wC" | "S";

export interface ControllerOptions {
  canvas: { width: number; height: number };
  initialFoci: [FocusState, FocusState, FocusState];
  onScene: (scene: Scene) => void;
  resolution?: number;
  fieldResolution?: number;
  debounceMs?: number;
}

const SLIDER_TO_FOCUS: Record<Exclude<SliderId, "S">, number> = {
  wA: 0,
  wB: 1,
  wC: 2,
};

export class PlannerController {
  readonly state: UiState;
  private box: BoxPayload;
  private readonly resolution: number;
  private readonly fieldResolution: number;
  private readonly applier = new SequencedApplier();
  private readonly scheduleRefresh: Debounced<[]>;
  private lastGood: SceneData = emptySceneData();
  private pending: Promise<void> = Promise.resolve();

  constructor(
    private readonly api: ApiClient,
    private readonly opts: ControllerOptions,
  ) {
    this.state = initialState(opts.initialFoci);
    this.box = { x0: 0, y0: 0, x1: opts.canvas.width, y1: opts.canvas.height };
    this.resolution = opts.resolution ?? 128;
    this.fieldResolution = opts.fieldResolution ?? 48;
    this.scheduleRefresh = debounce(() => {
      this.pending = this.refresh();
    }, opts.debounceMs ?? DEBOUNCE_MS);
  }

  start(): void {
    this.scheduleRefresh();
  }

  /** Resolves when the most recently started refresh has settled. */
  whenIdle(): Promise<void> {
    return this.pending;
  }

  onFocusDrag(index: number, x: number, y: number): void {
    const f = this.state.foci[index];
    f.x = Math.min(this.box.x1, Math.max(this.box.x0, x));
    f.y = Math.min(this.box.y1, Math.max(this.box.y0, y));
    this.scheduleRefresh();
  }

  onSliderChange(which: SliderId, value: number): void {
    if (which === "S") {
      this.state.s = clampS(value, this.state.sMin);
    } else {
      this.state.foci[SLIDER_TO_FOCUS[which]].w = clampWeight(value);
    }
    this.scheduleRefresh();
  }

  onModeChange(mode: Mode): void {
    this.state.mode = mode;
    this.scheduleRefresh();
  }

  onOpacityChange(value: number): void {
    // pure style: repaint from cached responses, no service round trip
    this.state.opacity = clampOpacity(value);
    this.emit();
  }

  onBackgroundChange(background: Background): void {
    this.state.background = background;
    this.emit();
  }

  onCalibrationChange(cal: MapCalibrationForm | null): void {
    this.state.calibration = cal;
    this.emit();
  }

  /** Replace the drawing surface (used when a bundled map is loaded). */
  setCanvas(width: number, height: number, foci: [FocusState, FocusState, FocusState]): void {
    this.box = { x0: 0, y0: 0, x1: width, y1: height };
    this.state.foci = foci;
    this.state.sMin = 0;
    this.state.s = 0;
    this.scheduleRefresh();
  }

  private emit(): void {
    this.opts.onScene(buildScene(this.state, this.lastGood));
  }

  private async refresh(): Promise<void> {
    const seq = this.applier.issue();
    const foci = this.state.foci.map((f) => ({ x: f.x, y: f.y, w: f.w }));
    const data: SceneData = emptySceneData();
    try {
      const solve = await this.api.solve({ foci });
      data.solve = solve;
      const s = clampS(this.state.s, solve.s0);

      if (this.state.mode === "curve" && s > solve.s0) {
        const [curveEntries, metrics] = await Promise.all([
          this.fetchCurve(foci, s),
          this.fetchMetrics(foci, s),
        ]);
        data.curveEntries = curveEntries;
        data.metrics = metrics;
      } else if (this.state.mode === "color-mapping") {
        const field = await this.api.field({
          foci,
          box: this.box,
          resolution: this.fieldResolution,
        });
        const levels = ladderLevels(solve.s0, field.field.max.value);
        const ladder = await this.api.contour({
          foci,
          box: this.box,
          levels,
          resolution: this.resolution,
        });
        data.ladderEntries = ladder.contours;
      }

      this.applier.apply(seq, () => {
        this.state.sMin = solve.s0;
        this.state.s = clampS(this.state.s, solve.s0);
        this.state.stale = false;
        this.state.banner = null;
        this.lastGood = data;
        this.emit();
      });
    } catch (err) {
      this.applier.apply(seq, () => {
        if (err instanceof ApiError && err.body.code === "level-below-minimum") {
          // raced a stale s0: clamp to the fresh value and show the
          // degenerate point without another round trip
          const s0 = err.body.s0 ?? this.state.sMin;
          this.state.sMin = s0;
          this.state.s = clampS(this.state.s, s0);
          this.state.stale = false;
          this.state.banner = null;
          if (data.solve) {
            this.lastGood = { ...emptySceneData(), solve: data.solve };
          }
        } else {
          // service unreachable: keep the previous overlay, mark it stale
          this.state.stale = true;
          this.state.banner = "service unreachable - showing last known overlay";
        }
        this.emit();
      });
    }
  }

  private async fetchCurve(
    foci: { x: number; y: number; w: number }[],
    s: number,
  ): Promise<ContourEntry[]> {
    const res = await this.api.contour({
      foci,
      box: this.box,
      s,
      resolution: this.resolution,
    });
    return res.contours;
  }

  private async fetchMetrics(
    foci: { x: number; y: number; w: number }[],
    s: number,
  ) {
    try {
      const res = await this.api.regionMetrics({
        foci,
        box: this.box,
        s,
        resolution: this.resolution,
      });
      return res.metrics;
    } catch (err) {
      if (err instanceof ApiError && err.body.code === "region-not-contained") {
        // curve clipped by the canvas: no well-defined enclosed region
        return null;
      }
      throw err;
    }
  }
}
