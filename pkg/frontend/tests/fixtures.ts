// Recorded service responses (see scripts/record-fixtures.py) and a fetch
// stand-in that serves them while logging every exchange, so tests can
// assert that all displayed numbers came over the wire.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";

const FIXTURE_DIR = join(dirname(fileURLToPath(import.meta.url)), "..", "fixtures");

export interface Fixture<Req = any, Res = any> {
  path: string;
  request: Req;
  status: number;
  response: Res;
}

export function loadFixture<Req = any, Res = any>(name: string): Fixture<Req, Res> {
  return JSON.parse(readFileSync(join(FIXTURE_DIR, `${name}.json`), "utf-8"));
}

export const FX = {
  solveInterior: loadFixture("solve-interior"),
  solveObtuse: loadFixture("solve-obtuse"),
  solveDominant: loadFixture("solve-dominant"),
  contourMid: loadFixture("contour-mid"),
  contourOuter: loadFixture("contour-outer"),
  contourBelowMin: loadFixture("contour-below-min"),
  contourMidDoubled: loadFixture("contour-mid-doubled"),
  metricsMid: loadFixture("metrics-mid"),
  metricsOuter: loadFixture("metrics-outer"),
  field: loadFixture("field"),
  isolinesLadder: loadFixture("isolines-ladder"),
  scenarios: loadFixture("scenarios"),
};

export interface Exchange {
  path: string;
  body: any;
  status: number;
  response: any;
}

export type Router = (path: string, body: any) => { status: number; response: any };

export function defaultRouter(): Router {
  return (path, body) => {
    if (path === "/api/solve") {
      if (body.foci[0].w === 10) return FX.solveDominant;
      if (body.foci[0].w === 2) return FX.contourMidDoubled; // embeds the solve fields
      if (body.foci[2].y === 430) return FX.solveObtuse;
      return FX.solveInterior;
    }
    if (path === "/api/contour") {
      if (body.levels) return FX.isolinesLadder;
      if (body.s === FX.contourMid.request.s) return FX.contourMid;
      if (body.s === FX.contourOuter.request.s) return FX.contourOuter;
      if (body.s === FX.contourMidDoubled.request.s) return FX.contourMidDoubled;
      return FX.contourBelowMin;
    }
    if (path === "/api/region-metrics") {
      if (body.s === FX.metricsOuter.request.s) return FX.metricsOuter;
      return FX.metricsMid;
    }
    if (path === "/api/field") return FX.field;
    if (path === "/api/scenarios") return FX.scenarios;
    throw new Error(`no fixture for ${path}`);
  };
}

export function fixtureFetch(log: Exchange[], router: Router = defaultRouter()): FetchLike {
  return async (url, init) => {
    const path = new URL(url).pathname;
    const body = init?.body ? JSON.parse(init.body as string) : null;
    const { status, response } = router(path, body);
    log.push({ path, body, status, response });
    return new Response(JSON.stringify(response), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  };
}
