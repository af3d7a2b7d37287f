// DOM wiring: sliders, menus, canvas dragging, background/calibration
// forms.  All geometry arrives from the service via the controller.

import { ApiClient } from "./api.js";
import { PlannerController, type SliderId } from "./controller.js";
import { describeScene, markerGeo, renderScene, type RenderContext } from "./render.js";
import type { Scene } from "./scene.js";
import {
  OPACITY_PRESETS,
  S_SLIDER_MAX,
  WEIGHT_SLIDER,
  type FocusState,
  type MapCalibrationForm,
  type Mode,
} from "./state.js";
import type { ScenarioInfo } from "./types.js";

const SERVICE_URL = "http://127.0.0.1:7350";

const DEFAULT_FOCI: [FocusState, FocusState, FocusState] = [
  { x: 200, y: 400, w: 1 },
  { x: 600, y: 400, w: 1 },
  { x: 400, y: 150, w: 1 },
];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setupWeightSlider(input: HTMLInputElement): void {
  input.min = String(WEIGHT_SLIDER.min);
  input.max = String(WEIGHT_SLIDER.max);
  input.step = String(WEIGHT_SLIDER.step);
  input.value = String(WEIGHT_SLIDER.default);
}

function main(): void {
  const canvas = el<HTMLCanvasElement>("canvas");
  const api = new ApiClient(SERVICE_URL);
  const rc: RenderContext = { canvas, backgroundImage: null, bundledScenario: null };
  const readout = el<HTMLPreElement>("readout");
  const banner = el<HTMLDivElement>("banner");
  const sSlider = el<HTMLInputElement>("slider-s");
  const sValue = el<HTMLSpanElement>("value-s");

  let lastScene: Scene | null = null;
  const controller = new PlannerController(api, {
    canvas: { width: canvas.width, height: canvas.height },
    initialFoci: DEFAULT_FOCI,
    onScene: (scene) => {
      lastScene = scene;
      renderScene(rc, scene);
      readout.textContent = describeScene(scene, markerGeo(scene, controller.state.calibration));
      banner.textContent = scene.banner ?? "";
      banner.style.display = scene.banner ? "block" : "none";
      if (scene.s0 !== null) {
        sSlider.min = String(scene.s0);
        sSlider.value = String(scene.s);
      }
      sValue.textContent = scene.s.toFixed(1);
    },
  });

  // weight sliders expose the exact contract: default 1, range 0.01..10
  (["wA", "wB", "wC"] as const).forEach((which) => {
    const input = el<HTMLInputElement>(`slider-${which}`);
    setupWeightSlider(input);
    const label = el<HTMLSpanElement>(`value-${which}`);
    label.textContent = input.value;
    input.addEventListener("input", () => {
      controller.onSliderChange(which as SliderId, Number(input.value));
      label.textContent = input.value;
    });
  });

  sSlider.min = "0";
  sSlider.max = String(S_SLIDER_MAX);
  sSlider.step = "0.1";
  sSlider.value = "0";
  sSlider.addEventListener("input", () => {
    controller.onSliderChange("S", Number(sSlider.value));
    sValue.textContent = sSlider.value;
  });

  const mode = el<HTMLSelectElement>("mode");
  mode.addEventListener("change", () => controller.onModeChange(mode.value as Mode));

  // opacity menu: presets plus a custom 0..100 entry
  const opacity = el<HTMLSelectElement>("opacity");
  const custom = el<HTMLInputElement>("opacity-custom");
  for (const preset of OPACITY_PRESETS) {
    const option = document.createElement("option");
    option.value = String(preset);
    option.textContent = `${preset}%`;
    if (preset === 100) option.selected = true;
    opacity.appendChild(option);
  }
  const customOption = document.createElement("option");
  customOption.value = "custom";
  customOption.textContent = "custom...";
  opacity.appendChild(customOption);
  opacity.addEventListener("change", () => {
    if (opacity.value === "custom") {
      custom.style.display = "inline-block";
      controller.onOpacityChange(Number(custom.value));
    } else {
      custom.style.display = "none";
      controller.onOpacityChange(Number(opacity.value));
    }
  });
  custom.addEventListener("input", () => controller.onOpacityChange(Number(custom.value)));

  // background menu: none, bundled maps from the service, or an upload
  const background = el<HTMLSelectElement>("background");
  const upload = el<HTMLInputElement>("background-upload");
  let scenarios: ScenarioInfo[] = [];
  api
    .scenarios()
    .then((res) => {
      scenarios = res.scenarios;
      for (const sc of scenarios) {
        const option = document.createElement("option");
        option.value = `bundled:${sc.name}`;
        option.textContent = `map: ${sc.name}`;
        background.appendChild(option);
      }
    })
    .catch(() => {
      /* scenarios are optional decoration; the banner reports real outages */
    });
  background.addEventListener("change", () => {
    const v = background.value;
    if (v.startsWith("bundled:")) {
      const sc = scenarios.find((s) => s.name === v.slice("bundled:".length));
      if (sc) {
        rc.bundledScenario = sc;
        rc.backgroundImage = null;
        canvas.width = sc.map.width;
        canvas.height = sc.map.height;
        controller.onCalibrationChange({ ...sc.map });
        controller.setCanvas(sc.map.width, sc.map.height, [
          { x: sc.foci[0].px, y: sc.foci[0].py, w: sc.foci[0].w },
          { x: sc.foci[1].px, y: sc.foci[1].py, w: sc.foci[1].w },
          { x: sc.foci[2].px, y: sc.foci[2].py, w: sc.foci[2].w },
        ]);
        controller.onBackgroundChange({ kind: "bundled", id: sc.name });
      }
    } else if (v === "upload") {
      upload.style.display = "inline-block";
    } else {
      rc.bundledScenario = null;
      rc.backgroundImage = null;
      upload.style.display = "none";
      controller.onBackgroundChange({ kind: "none" });
    }
  });
  upload.addEventListener("change", () => {
    const file = upload.files?.[0];
    if (!file) return;
    const url = URL.createObjectURL(file);
    const img = new Image();
    img.onload = () => {
      rc.bundledScenario = null;
      rc.backgroundImage = img;
      controller.onBackgroundChange({ kind: "upload", url });
    };
    img.src = url;
  });

  // calibration form mirrors the scenario-file [map] fields
  el<HTMLButtonElement>("calibration-apply").addEventListener("click", () => {
    const val = (id: string) => Number(el<HTMLInputElement>(id).value);
    const cal: MapCalibrationForm = {
      width: canvas.width,
      height: canvas.height,
      west: val("cal-west"),
      east: val("cal-east"),
      south: val("cal-south"),
      north: val("cal-north"),
    };
    controller.onCalibrationChange(
      cal.west < cal.east && cal.south < cal.north ? cal : null,
    );
  });

  // dragging foci
  let dragging: number | null = null;
  const pos = (ev: PointerEvent) => {
    const r = canvas.getBoundingClientRect();
    return {
      x: ((ev.clientX - r.left) / r.width) * canvas.width,
      y: ((ev.clientY - r.top) / r.height) * canvas.height,
    };
  };
  canvas.addEventListener("pointerdown", (ev) => {
    const { x, y } = pos(ev);
    const scene = lastScene;
    const foci = scene ? scene.foci : controller.state.foci;
    foci.forEach((f, i) => {
      if (Math.hypot(f.x - x, f.y - y) < 14) dragging = i;
    });
    if (dragging !== null) canvas.setPointerCapture(ev.pointerId);
  });
  canvas.addEventListener("pointermove", (ev) => {
    if (dragging === null) return;
    const { x, y } = pos(ev);
    controller.onFocusDrag(dragging, x, y);
    renderQuickFocus(dragging, x, y);
  });
  canvas.addEventListener("pointerup", () => {
    dragging = null;
  });

  function renderQuickFocus(i: number, x: number, y: number): void {
    // immediate visual feedback for the handle itself; geometry overlays
    // refresh when the debounced service round trip lands
    if (lastScene) {
      lastScene.foci[i] = { ...lastScene.foci[i], x, y };
      renderScene(rc, lastScene);
    }
  }

  controller.start();
}

main();
