// Canvas painting of a Scene.  Backgrounds draw first (uploaded raster or
// a graticule for bundled maps), then color-mapping bands at the chosen
// opacity, the level curve, foci handles, and the optimum marker.

import type { Scene } from "./scene.js";
import type { ScenarioInfo } from "./types.js";
import { pixelToGeo } from "./state.js";

const FOCUS_LABELS = ["A", "B", "C"];

export interface RenderContext {
  canvas: HTMLCanvasElement;
  backgroundImage: HTMLImageElement | null;
  bundledScenario: ScenarioInfo | null;
}

export function renderScene(rc: RenderContext, scene: Scene): void {
  const ctx = rc.canvas.getContext("2d");
  if (!ctx) return;
  const { width, height } = rc.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, width, height);

  if (scene.background.kind === "upload" && rc.backgroundImage) {
    ctx.drawImage(rc.backgroundImage, 0, 0, width, height);
  } else if (scene.background.kind === "bundled" && rc.bundledScenario) {
    drawGraticule(ctx, rc.bundledScenario, width, height);
  }

  ctx.save();
  ctx.globalAlpha = scene.opacity / 100;
  for (const band of scene.bands) {
    ctx.beginPath();
    tracePolygon(ctx, band.polygon, true);
    ctx.fillStyle = band.color;
    ctx.fill();
  }
  for (const curve of scene.curves) {
    ctx.beginPath();
    tracePolygon(ctx, curve.points, curve.closed);
    ctx.strokeStyle = "#c0392b";
    ctx.lineWidth = 2;
    ctx.stroke();
  }
  ctx.restore();

  scene.foci.forEach((f, i) => {
    ctx.beginPath();
    ctx.arc(f.x, f.y, 6, 0, 2 * Math.PI);
    ctx.fillStyle = "#2c3e50";
    ctx.fill();
    ctx.fillStyle = "#2c3e50";
    ctx.font = "13px sans-serif";
    const name = rc.bundledScenario?.foci[i]?.name ?? FOCUS_LABELS[i];
    ctx.fillText(`${name} (w=${f.w})`, f.x + 9, f.y - 9);
  });

  if (scene.marker) {
    const { x, y } = scene.marker;
    ctx.strokeStyle = "#e74c3c";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(x - 7, y);
    ctx.lineTo(x + 7, y);
    ctx.moveTo(x, y - 7);
    ctx.lineTo(x, y + 7);
    ctx.stroke();
    if (scene.degenerate) {
      ctx.beginPath();
      ctx.arc(x, y, 10, 0, 2 * Math.PI);
      ctx.stroke();
    }
  }

  if (scene.stale) {
    ctx.fillStyle = "rgba(127, 127, 127, 0.75)";
    ctx.font = "bold 16px sans-serif";
    ctx.fillText("STALE", 12, 24);
  }
}

function tracePolygon(
  ctx: CanvasRenderingContext2D,
  points: [number, number][],
  close: boolean,
): void {
  points.forEach(([x, y], i) => {
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
  if (close) ctx.closePath();
}

function drawGraticule(
  ctx: CanvasRenderingContext2D,
  scenario: ScenarioInfo,
  width: number,
  height: number,
): void {
  const m = scenario.map;
  ctx.fillStyle = "#f3f7fb";
  ctx.fillRect(0, 0, width, height);
  ctx.strokeStyle = "#c9d8e8";
  ctx.lineWidth = 1;
  ctx.fillStyle = "#8aa4bd";
  ctx.font = "10px sans-serif";
  for (let lon = Math.ceil(m.west); lon <= m.east; lon += 5) {
    const x = (width * (lon - m.west)) / (m.east - m.west);
    ctx.beginPath();
    ctx.moveTo(x, 0);
    ctx.lineTo(x, height);
    ctx.stroke();
    ctx.fillText(`${lon}E`, x + 2, height - 4);
  }
  for (let lat = Math.ceil(m.south); lat <= m.north; lat += 5) {
    const y = (height * (m.north - lat)) / (m.north - m.south);
    ctx.beginPath();
    ctx.moveTo(0, y);
    ctx.lineTo(width, y);
    ctx.stroke();
    ctx.fillText(`${lat}N`, 4, y - 2);
  }
}

export function describeScene(scene: Scene, calibrated: ReturnType<typeof markerGeo>): string {
  const lines: string[] = [];
  if (scene.s0 !== null) {
    lines.push(`s0 = ${scene.s0.toFixed(3)} (${scene.status ?? "?"})`);
  }
  if (scene.degenerate) {
    lines.push(`level clamped to s0: curve degenerates to the optimal point`);
  } else if (scene.mode === "curve" && scene.metrics) {
    const m = scene.metrics;
    lines.push(
      `area = ${m.area.toFixed(2)} ± ${m.area_error.toExponential(2)}`,
      `perimeter = ${m.perimeter.toFixed(2)} ± ${m.perimeter_error.toExponential(2)}`,
    );
  }
  if (calibrated) {
    lines.push(`optimum at ${calibrated.lon.toFixed(4)}E ${calibrated.lat.toFixed(4)}N`);
  }
  return lines.join("\n");
}

export function markerGeo(scene: Scene, calibration: Parameters<typeof pixelToGeo>[2] | null) {
  if (!scene.marker || !calibration) return null;
  return pixelToGeo(scene.marker.x, scene.marker.y, calibration);
}
