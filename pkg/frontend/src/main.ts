/** Application wiring: DOM panels around the store, renderer, and API. */

import { ApiClient } from "./api.js";
import { OrbitController } from "./orbit.js";
import { SweepPlayer, quiltParamErrors } from "./quilt.js";
import { SceneRenderer } from "./renderer.js";
import {
  allowedColumns,
  ChannelName,
  StateSnapshot,
  UiStore,
} from "./state.js";
import { DEFAULT_QUILT, MappingDoc, QuiltParams } from "./types.js";

const CHANNELS: ChannelName[] = ["x", "y", "z", "size", "color", "shape"];
const OPTIONAL: ReadonlySet<string> = new Set(["size", "color", "shape"]);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function degrees(radians: number): string {
  return ((radians * 180) / Math.PI).toFixed(1);
}

export function start(): void {
  const api = new ApiClient();
  const store = new UiStore(api);
  const canvas = el<HTMLCanvasElement>("scene-canvas");
  let renderer: SceneRenderer | null = null;
  try {
    renderer = new SceneRenderer(canvas);
  } catch (error) {
    el("canvas-error").textContent = String(error);
  }

  const orbit = new OrbitController(
    {
      target: [0, 0, 0], azimuth: 0.5235987755982988, elevation: 0.3490658503988659,
      distance: 3.2, vertical_fov: 0.8726646259971648, near: 0.1, far: 100,
    },
    (camera) => store.setCamera(camera),
  );
  orbit.attach(canvas);

  const errorBox = el("error-box");
  const tokenRow = el("token-row");
  const schemaTable = el<HTMLTableElement>("schema-table");
  const mappingForm = el("mapping-form");
  const reportBox = el("report-box");
  const hud = el("camera-hud");
  const quiltImage = el<HTMLImageElement>("quilt-image");
  const sweepCanvas = el<HTMLCanvasElement>("sweep-canvas");
  const sweep = new SweepPlayer(sweepCanvas);
  let lastQuilt: { url: string; params: QuiltParams } | null = null;

  function redraw(state: StateSnapshot): void {
    if (renderer && state.scene) renderer.draw(state.camera ?? state.scene.camera);
  }

  function renderSchema(state: StateSnapshot): void {
    const dataset = state.dataset;
    if (!dataset) return;
    const rows = dataset.schema.map((column, i) => {
      const stats = dataset.stats[i];
      const detail =
        column.kind === "Numeric"
          ? `min ${stats.min ?? "-"} · max ${stats.max ?? "-"}`
          : `${stats.categories?.length ?? 0} categories`;
      return `<tr><td>${column.name}</td><td>${column.kind}</td><td>${detail}</td>` +
        `<td>${column.missing_count}</td></tr>`;
    });
    schemaTable.innerHTML =
      `<tr><th>column</th><th>kind</th><th>stats</th><th>missing</th></tr>${rows.join("")}`;
    el("dataset-label").textContent = `${dataset.id.slice(0, 8)}… (${dataset.row_count} rows)`;
  }

  function renderMappingForm(state: StateSnapshot): void {
    const dataset = state.dataset;
    const draft = state.mappingDraft;
    if (!dataset || !draft) return;
    mappingForm.innerHTML = "";
    for (const channel of CHANNELS) {
      const row = document.createElement("label");
      row.className = "channel-row";
      row.textContent = channel;
      const select = document.createElement("select");
      select.dataset.channel = channel;
      if (OPTIONAL.has(channel)) {
        const none = document.createElement("option");
        none.value = "";
        none.textContent = "(none)";
        select.appendChild(none);
      }
      for (const name of allowedColumns(dataset, channel)) {
        const option = document.createElement("option");
        option.value = name;
        option.textContent = name;
        select.appendChild(option);
      }
      const current = draft[channel];
      select.value = current ?? "";
      select.addEventListener("change", () => {
        const next: MappingDoc = { ...draft };
        if (select.value === "") delete next[channel];
        else next[channel] = select.value;
        void store.setMapping(next);
      });
      row.appendChild(select);
      const diag = state.diagnostics.find((d) => d.channel === channel);
      if (diag) {
        const message = document.createElement("span");
        message.className = "diagnostic";
        message.textContent = diag.message;
        row.appendChild(message);
      }
      mappingForm.appendChild(row);
    }
  }

  store.subscribe((state) => {
    errorBox.textContent = state.error ?? "";
    errorBox.hidden = !state.error;
    tokenRow.hidden = !state.tokenNeeded;
    renderSchema(state);
    renderMappingForm(state);
    if (state.report) {
      reportBox.textContent =
        `${state.report.nodes_emitted} nodes` +
        (state.report.rows_dropped
          ? `, ${state.report.rows_dropped} rows dropped`
          : "");
    }
    if (state.scene && renderer) {
      renderer.setScene(state.scene);
      if (state.camera) el("node-count").textContent = String(renderer.nodeCount);
    }
    if (state.camera) {
      if (state.camera !== orbit.current) orbit.sync(state.camera);
      hud.textContent =
        `az ${degrees(state.camera.azimuth)}°  el ${degrees(state.camera.elevation)}°  ` +
        `dist ${state.camera.distance.toFixed(2)}`;
    }
    redraw(state);
  });

  el<HTMLInputElement>("token-input").addEventListener("change", (ev) => {
    api.setToken((ev.target as HTMLInputElement).value.trim() || null);
  });

  el<HTMLInputElement>("file-input").addEventListener("change", async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (file) await store.uploadDataset(file);
  });

  el("save-button").addEventListener("click", async () => {
    const name = el<HTMLInputElement>("viz-name").value.trim() || "untitled";
    const vizId = name.replace(/[^A-Za-z0-9_-]/g, "_").slice(0, 64) || "untitled";
    await store.save(vizId, name);
    await refreshVizList();
  });

  async function refreshVizList(): Promise<void> {
    try {
      const entries = await api.listVisualizations();
      const list = el("viz-list");
      list.innerHTML = "";
      for (const entry of entries) {
        const item = document.createElement("li");
        const button = document.createElement("button");
        button.textContent = `${entry.name} (${entry.created_at.slice(0, 19)})`;
        button.addEventListener("click", () => void store.load(entry.id));
        item.appendChild(button);
        list.appendChild(item);
      }
    } catch {
      // 401 before any write is expected in multi-user mode
    }
  }
  el("refresh-viz").addEventListener("click", () => void refreshVizList());

  function quiltParams(): QuiltParams {
    return {
      ...DEFAULT_QUILT,
      views: Number(el<HTMLInputElement>("quilt-views").value),
      cone_deg: Number(el<HTMLInputElement>("quilt-cone").value),
    };
  }

  el("quilt-button").addEventListener("click", async () => {
    const state = store.snapshot;
    if (!state.sceneId) return;
    const params = quiltParams();
    const errors = quiltParamErrors(params);
    const message = el("quilt-errors");
    message.textContent = errors.join("; ");
    if (errors.length) return; // invalid configs never reach the server
    try {
      const blob = await api.fetchQuilt(state.sceneId, params);
      if (lastQuilt) URL.revokeObjectURL(lastQuilt.url);
      lastQuilt = { url: URL.createObjectURL(blob), params };
      quiltImage.src = lastQuilt.url;
      quiltImage.hidden = false;
    } catch (error) {
      message.textContent = String(error);
    }
  });

  el("sweep-toggle").addEventListener("click", () => {
    if (sweep.active) {
      sweep.stop();
      sweepCanvas.hidden = true;
      return;
    }
    if (!lastQuilt) return;
    const image = new Image();
    image.onload = () => {
      sweepCanvas.hidden = false;
      sweep.start(image, lastQuilt!.params);
    };
    image.src = lastQuilt.url;
  });

  // Continuous redraw keeps orbiting smooth without diffing camera state.
  const tick = () => {
    redraw(store.snapshot);
    requestAnimationFrame(tick);
  };
  requestAnimationFrame(tick);
}

if (typeof document !== "undefined" && document.getElementById("scene-canvas")) {
  start();
}
