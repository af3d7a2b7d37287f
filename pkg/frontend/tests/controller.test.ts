import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { PlannerController } from "../src/controller.js";
import type { Scene } from "../src/scene.js";
import type { FocusState } from "../src/state.js";
import { defaultRouter, FX, fixtureFetch, type Exchange, type Router } from "./fixtures.js";

const S_MID: number = FX.contourMid.request.s;
const S_OUTER: number = FX.contourOuter.request.s;

function defaultFoci(): [FocusState, FocusState, FocusState] {
  return [
    { x: 200, y: 400, w: 1 },
    { x: 600, y: 400, w: 1 },
    { x: 400, y: 150, w: 1 },
  ];
}

function setup(router?: Router) {
  const log: Exchange[] = [];
  const scenes: Scene[] = [];
  const api = new ApiClient("http://service.test", fixtureFetch(log, router));
  const controller = new PlannerController(api, {
    canvas: { width: 800, height: 600 },
    initialFoci: defaultFoci(),
    onScene: (s) => scenes.push(s),
  });
  return { controller, log, scenes };
}

async function settle(controller: PlannerController) {
  await vi.advanceTimersByTimeAsync(120);
  await controller.whenIdle();
}

function polygonArea(points: [number, number][]): number {
  let acc = 0;
  for (let i = 0; i < points.length; i++) {
    const [x1, y1] = points[i];
    const [x2, y2] = points[(i + 1) % points.length];
    acc += x1 * y2 - x2 * y1;
  }
  return Math.abs(acc) / 2;
}

beforeEach(() => vi.useFakeTimers());
afterEach(() => vi.useRealTimers());

describe("initial load", () => {
  it("shows the service's optimum and clamps the level slider to s0", async () => {
    const { controller, scenes } = setup();
    controller.start();
    await settle(controller);
    const scene = scenes.at(-1)!;
    expect(scene.marker).toEqual(FX.solveInterior.response.point);
    expect(scene.s0).toBe(FX.solveInterior.response.s0);
    expect(controller.state.sMin).toBe(FX.solveInterior.response.s0);
    expect(controller.state.s).toBe(FX.solveInterior.response.s0);
    expect(scene.degenerate).toBe(true); // level at s0 renders the point itself
  });
});

describe("focus dragging", () => {
  it("dragging into a wide-angle layout moves the marker onto that vertex", async () => {
    const { controller, scenes } = setup();
    controller.start();
    await settle(controller);
    controller.onFocusDrag(2, 400, 430);
    await settle(controller);
    const scene = scenes.at(-1)!;
    expect(scene.status).toBe("at-vertex");
    expect(scene.marker).toEqual(FX.solveObtuse.response.point);
    expect(scene.marker).toEqual({ x: 400, y: 430 }); // exactly on the dragged focus
  });

  it("drag positions clamp to the canvas", async () => {
    const { controller } = setup();
    controller.onFocusDrag(0, -50, 9000);
    expect(controller.state.foci[0].x).toBe(0);
    expect(controller.state.foci[0].y).toBe(600);
  });
});

describe("weight sliders", () => {
  it("setting w_A = 10 with others at 1 moves the marker onto focus A", async () => {
    const { controller, scenes } = setup();
    controller.start();
    await settle(controller);
    controller.onSliderChange("wA", 10);
    await settle(controller);
    const scene = scenes.at(-1)!;
    expect(scene.status).toBe("at-vertex");
    expect(scene.marker).toEqual(FX.solveDominant.response.point);
    expect(scene.marker).toEqual({ x: 200, y: 400 });
  });
});

describe("level slider", () => {
  it("a level below s0 clamps and renders the degenerate point", async () => {
    const { controller, scenes } = setup();
    controller.start();
    await settle(controller);
    controller.onSliderChange("S", S_MID);
    await settle(controller);
    expect(scenes.at(-1)!.curves.length).toBeGreaterThan(0);

    controller.onSliderChange("S", 100); // below the recorded s0 of ~596.4
    await settle(controller);
    const scene = scenes.at(-1)!;
    expect(controller.state.s).toBe(FX.solveInterior.response.s0);
    expect(scene.degenerate).toBe(true);
    expect(scene.curves).toEqual([]);
    expect(scene.marker).toEqual(FX.solveInterior.response.point);
  });

  it("doubling all weights and the level leaves the curve unchanged", async () => {
    const { controller, scenes } = setup();
    controller.start();
    await settle(controller);
    controller.onSliderChange("S", S_MID);
    await settle(controller);
    const unit = scenes.at(-1)!.curves[0];

    controller.onSliderChange("wA", 2);
    controller.onSliderChange("wB", 2);
    controller.onSliderChange("wC", 2);
    controller.onSliderChange("S", 2 * S_MID);
    await settle(controller);
    const doubled = scenes.at(-1)!.curves[0];
    expect(scenes.at(-1)!.s0).toBe(2 * FX.solveInterior.response.s0);
    expect(doubled.points).toEqual(unit.points);
  });

  it("raising the level never shrinks the displayed curve", async () => {
    const { controller, scenes } = setup();
    controller.start();
    await settle(controller);
    controller.onSliderChange("S", S_MID);
    await settle(controller);
    const inner = scenes.at(-1)!.curves[0];
    controller.onSliderChange("S", S_OUTER);
    await settle(controller);
    const outer = scenes.at(-1)!.curves[0];
    expect(polygonArea(outer.points)).toBeGreaterThan(polygonArea(inner.points));
  });
});

describe("traceability", () => {
  it("every displayed number comes from an intercepted service response", async () => {
    const { controller, log, scenes } = setup();
    controller.start();
    await settle(controller);
    controller.onSliderChange("S", S_MID);
    await settle(controller);
    const scene = scenes.at(-1)!;

    const solveBodies = log.filter((e) => e.path === "/api/solve").map((e) => e.response);
    const contourBodies = log.filter((e) => e.path === "/api/contour").map((e) => e.response);
    const metricBodies = log
      .filter((e) => e.path === "/api/region-metrics")
      .map((e) => e.response);

    expect(solveBodies.some((b) => b.s0 === scene.s0)).toBe(true);
    expect(
      solveBodies.some(
        (b) => b.point.x === scene.marker!.x && b.point.y === scene.marker!.y,
      ),
    ).toBe(true);
    expect(metricBodies.some((b) => b.metrics.area === scene.metrics!.area)).toBe(true);
    expect(
      metricBodies.some((b) => b.metrics.perimeter === scene.metrics!.perimeter),
    ).toBe(true);
    const servedVertices = contourBodies.flatMap((b) =>
      b.contours.flatMap((c: any) => c.curves.map((k: any) => JSON.stringify(k.vertices))),
    );
    expect(servedVertices).toContain(JSON.stringify(scene.curves[0].points));
  });
});

describe("color mapping", () => {
  it("requests the field plus an eight-level ladder and renders bands", async () => {
    const { controller, log, scenes } = setup();
    controller.start();
    await settle(controller);
    controller.onModeChange("color-mapping");
    await settle(controller);

    const fieldCalls = log.filter((e) => e.path === "/api/field");
    expect(fieldCalls.length).toBeGreaterThan(0);
    const ladderCall = log.findLast((e) => e.path === "/api/contour" && e.body.levels);
    expect(ladderCall).toBeDefined();
    const levels: number[] = ladderCall!.body.levels;
    expect(levels).toHaveLength(8);
    const s0 = FX.solveInterior.response.s0;
    const fmax = FX.field.response.field.max.value;
    for (const v of levels) {
      expect(v).toBeGreaterThan(s0);
      expect(v).toBeLessThan(fmax);
    }

    const scene = scenes.at(-1)!;
    expect(scene.bands.length).toBeGreaterThan(0);
    // painter's order: outermost (largest level) first
    for (let i = 1; i < scene.bands.length; i++) {
      expect(scene.bands[i].level).toBeLessThanOrEqual(scene.bands[i - 1].level);
    }
  });

  it("opacity changes repaint without another service round trip", async () => {
    const { controller, log, scenes } = setup();
    controller.start();
    await settle(controller);
    const before = log.length;
    controller.onOpacityChange(40);
    expect(log.length).toBe(before);
    expect(scenes.at(-1)!.opacity).toBe(40);
  });
});

describe("request sequencing", () => {
  it("discards a slow response that arrives after a newer one", async () => {
    const waiters: Array<() => void> = [];
    let calls = 0;
    const api = new ApiClient("http://service.test", async (url, init) => {
      const body = JSON.parse((init?.body as string) ?? "null");
      const idx = calls++;
      await new Promise<void>((resolve) => {
        waiters[idx] = resolve;
      });
      const fixture = body && body.foci[2].y === 430 ? FX.solveObtuse : FX.solveInterior;
      return new Response(JSON.stringify(fixture.response), { status: 200 });
    });
    const scenes: Scene[] = [];
    const controller = new PlannerController(api, {
      canvas: { width: 800, height: 600 },
      initialFoci: defaultFoci(),
      onScene: (s) => scenes.push(s),
    });

    controller.start();
    await vi.advanceTimersByTimeAsync(100); // request 0 in flight (interior)
    const firstIdle = controller.whenIdle();
    controller.onFocusDrag(2, 400, 430);
    await vi.advanceTimersByTimeAsync(100); // request 1 in flight (obtuse)
    const secondIdle = controller.whenIdle();

    waiters[1]!(); // newer response lands first
    await secondIdle;
    expect(scenes.at(-1)!.marker).toEqual(FX.solveObtuse.response.point);

    waiters[0]!(); // older response must be discarded
    await firstIdle;
    expect(scenes.at(-1)!.marker).toEqual(FX.solveObtuse.response.point);
  });
});

describe("failure handling", () => {
  it("keeps the last overlay and shows a banner when the service is down", async () => {
    let failing = false;
    const base = defaultRouter();
    const router: Router = (path, body) => {
      if (failing) throw new Error("connection refused");
      return base(path, body);
    };
    const { controller, scenes } = setup(router);
    controller.start();
    await settle(controller);
    controller.onSliderChange("S", S_MID);
    await settle(controller);
    const healthy = scenes.at(-1)!;
    expect(healthy.curves.length).toBeGreaterThan(0);

    failing = true;
    controller.onFocusDrag(0, 210, 410);
    await settle(controller);
    const scene = scenes.at(-1)!;
    expect(scene.stale).toBe(true);
    expect(scene.banner).toMatch(/unreachable/);
    expect(scene.curves).toEqual(healthy.curves); // stale overlay retained
  });

  it("clamps from the error payload when a raced level is below the fresh s0", async () => {
    const base = defaultRouter();
    const racedS0 = S_MID + 57.5;
    const router: Router = (path, body) => {
      if (path === "/api/contour" && body.s === S_MID) {
        return {
          status: 422,
          response: { ...FX.contourBelowMin.response, s0: racedS0 },
        };
      }
      if (path === "/api/region-metrics") {
        return router("/api/contour", { ...body });
      }
      return base(path, body);
    };
    const { controller, scenes } = setup(router);
    controller.start();
    await settle(controller);
    controller.onSliderChange("S", S_MID);
    await settle(controller);
    const scene = scenes.at(-1)!;
    expect(controller.state.sMin).toBe(racedS0);
    expect(controller.state.s).toBe(racedS0);
    expect(scene.degenerate).toBe(true);
    expect(scene.banner).toBeNull();
  });
});
