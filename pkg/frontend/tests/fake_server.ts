/** In-memory stand-in for the holoviz API, faithful to its status codes
 * and error body shapes, for driving the store in tests.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { MappingDoc, SceneDoc } from "../src/types.js";

const HERE = dirname(fileURLToPath(import.meta.url));

export const IRIS_SCENE: SceneDoc = JSON.parse(
  readFileSync(join(HERE, "fixtures", "iris_scene.json"), "utf-8"),
);
export const IRIS_MAPPING: MappingDoc = JSON.parse(
  readFileSync(join(HERE, "fixtures", "iris_mapping.json"), "utf-8"),
);

export const IRIS_SUMMARY = {
  id: "dataset-iris",
  row_count: 150,
  schema: [
    { name: "sepal.length", kind: "Numeric", missing_count: 0 },
    { name: "sepal.width", kind: "Numeric", missing_count: 0 },
    { name: "petal.length", kind: "Numeric", missing_count: 0 },
    { name: "petal.width", kind: "Numeric", missing_count: 0 },
    { name: "variety", kind: "Categorical", missing_count: 0 },
  ],
  stats: [
    { min: 4.3, max: 7.9, mean: 5.843 },
    { min: 2.0, max: 4.4, mean: 3.054 },
    { min: 1.0, max: 6.9, mean: 3.759 },
    { min: 0.1, max: 2.5, mean: 1.199 },
    { categories: ["Setosa", "Versicolor", "Virginica"] },
  ],
};

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export interface FakeServerOptions {
  /** Delay (ms) applied per scene-create call, in call order. */
  sceneDelays?: number[];
  requireToken?: string;
}

export class FakeServer {
  readonly vizStore = new Map<string, unknown>();
  sceneCalls: MappingDoc[] = [];
  quiltRequests: string[] = [];
  private sceneCounter = 0;

  constructor(private readonly options: FakeServerOptions = {}) {}

  fetch = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    const url = typeof input === "string" ? input : input.toString();
    const method = init?.method ?? "GET";
    const headers = new Headers(init?.headers);
    if (this.options.requireToken) {
      const auth = headers.get("Authorization") ?? "";
      if (auth !== `Bearer ${this.options.requireToken}`) {
        return json(401, { detail: "missing bearer token" });
      }
    }
    if (url.includes("/api/datasets") && method === "POST") {
      const body = String(init?.body ?? "");
      if (body.includes('"broken')) {
        return json(400, {
          detail: { error: "UnbalancedQuoteError", message: "unbalanced quote", line: 2 },
        });
      }
      return json(200, IRIS_SUMMARY);
    }
    if (url.endsWith("/api/scenes") && method === "POST") {
      const payload = JSON.parse(String(init?.body)) as { mapping?: MappingDoc };
      const mapping = payload.mapping ?? IRIS_MAPPING;
      const index = this.sceneCalls.length;
      this.sceneCalls.push(mapping);
      if (mapping.x === "variety") {
        return json(422, {
          detail: {
            diagnostics: [
              { channel: "x", code: "type-mismatch", message: "expected Numeric, got Categorical" },
            ],
          },
        });
      }
      const delay = this.options.sceneDelays?.[index] ?? 0;
      if (delay) await new Promise((resolve) => setTimeout(resolve, delay));
      this.sceneCounter += 1;
      return json(200, {
        scene_id: `scene-${index}-${mapping.x}`,
        report: { nodes_emitted: 150, rows_dropped: 0, dropped_row_indices: [] },
      });
    }
    const quiltMatch = url.match(/\/api\/scenes\/([^/]+)\/quilt\?(.*)$/);
    if (quiltMatch) {
      this.quiltRequests.push(url);
      return new Response(new Blob([new Uint8Array([137, 80, 78, 71])]), {
        status: 200,
        headers: { "Content-Type": "image/png" },
      });
    }
    const sceneMatch = url.match(/\/api\/scenes\/([^/?]+)$/);
    if (sceneMatch) {
      return json(200, { ...IRIS_SCENE, id: sceneMatch[1] });
    }
    const vizMatch = url.match(/\/api\/visualizations\/([^/?]+)$/);
    if (vizMatch && method === "PUT") {
      const doc = {
        id: vizMatch[1],
        created_at: new Date().toISOString(),
        ...(JSON.parse(String(init?.body)) as object),
      };
      this.vizStore.set(vizMatch[1], doc);
      return json(200, doc);
    }
    if (vizMatch && method === "GET") {
      const doc = this.vizStore.get(vizMatch[1]);
      return doc ? json(200, doc) : json(404, { detail: "visualization not found" });
    }
    if (url.endsWith("/api/visualizations")) {
      const entries = [...this.vizStore.values()].map((doc) => {
        const d = doc as { id: string; name: string; created_at: string };
        return { id: d.id, name: d.name, created_at: d.created_at };
      });
      return json(200, { visualizations: entries });
    }
    return json(404, { detail: `no route: ${method} ${url}` });
  };
}
