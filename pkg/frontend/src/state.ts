/** UI state store: current dataset, mapping draft, loaded scene, camera
 * mirror, and error surfaces.
 *
 * Scene rebuilds are serialized by a request sequence number: only the
 * newest in-flight rebuild may publish its result, so a slow stale
 * response can never clobber a newer scene.
 */

import { ApiClient, ApiError } from "./api.js";
import type {
  CameraDoc,
  ColumnKind,
  DatasetSummary,
  MappingDoc,
  MappingReport,
  SceneDoc,
} from "./types.js";

export interface Diagnostic {
  channel: string;
  message: string;
}

export interface StateSnapshot {
  dataset: DatasetSummary | null;
  mappingDraft: MappingDoc | null;
  scene: SceneDoc | null;
  sceneId: string | null;
  camera: CameraDoc | null;
  report: MappingReport | null;
  diagnostics: Diagnostic[];
  error: string | null;
  tokenNeeded: boolean;
}

type Listener = (state: StateSnapshot) => void;

/** Positional default mapping, mirroring the server's rule: columns 1-3
 * are x/y/z, a numeric column 4 is size, column 5 is color. */
export function defaultMappingFor(dataset: DatasetSummary): MappingDoc | null {
  const schema = dataset.schema;
  if (schema.length < 3 || schema.slice(0, 3).some((c) => c.kind !== "Numeric")) {
    return null;
  }
  const doc: MappingDoc = {
    x: schema[0].name,
    y: schema[1].name,
    z: schema[2].name,
  };
  if (schema.length >= 4 && schema[3].kind === "Numeric") doc.size = schema[3].name;
  if (schema.length >= 5) doc.color = schema[4].name;
  return doc;
}

export type ChannelName = "x" | "y" | "z" | "size" | "color" | "shape";

export function requiredKind(channel: ChannelName): ColumnKind | null {
  return channel === "color" ? null : channel === "shape" ? "Categorical" : "Numeric";
}

export function allowedColumns(dataset: DatasetSummary, channel: ChannelName): string[] {
  const wanted = requiredKind(channel);
  return dataset.schema
    .filter((c) => wanted === null || c.kind === wanted)
    .map((c) => c.name);
}

/** Local mirror of the server's mapping validation: unknown columns and
 * kind mismatches, reported per channel. */
export function validateMappingLocal(
  dataset: DatasetSummary,
  mapping: MappingDoc,
): Diagnostic[] {
  const kinds = new Map(dataset.schema.map((c) => [c.name, c.kind]));
  const diags: Diagnostic[] = [];
  const channels: Array<[ChannelName, string | null | undefined]> = [
    ["x", mapping.x], ["y", mapping.y], ["z", mapping.z],
    ["size", mapping.size], ["color", mapping.color], ["shape", mapping.shape],
  ];
  for (const [channel, column] of channels) {
    if (column === null || column === undefined) {
      if (channel === "x" || channel === "y" || channel === "z") {
        diags.push({ channel, message: "a column is required" });
      }
      continue;
    }
    const kind = kinds.get(column);
    if (kind === undefined) {
      diags.push({ channel, message: `column '${column}' does not exist` });
      continue;
    }
    const wanted = requiredKind(channel);
    if (wanted !== null && kind !== wanted) {
      diags.push({ channel, message: `expected ${wanted}, got ${kind}` });
    }
  }
  return diags;
}

export class UiStore {
  private state: StateSnapshot = {
    dataset: null,
    mappingDraft: null,
    scene: null,
    sceneId: null,
    camera: null,
    report: null,
    diagnostics: [],
    error: null,
    tokenNeeded: false,
  };
  private listeners: Listener[] = [];
  private rebuildSeq = 0;

  constructor(readonly api: ApiClient) {}

  get snapshot(): StateSnapshot {
    return this.state;
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private publish(patch: Partial<StateSnapshot>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  private fail(error: unknown): void {
    if (error instanceof ApiError) {
      const detail = error.detail as { diagnostics?: unknown } | null;
      const diagnostics =
        detail && Array.isArray(detail.diagnostics)
          ? (detail.diagnostics as Array<{ channel?: string; message?: string }>).map(
              (d) => ({ channel: d.channel ?? "?", message: d.message ?? "" }),
            )
          : [];
      this.publish({ error: error.message, tokenNeeded: error.unauthorized, diagnostics });
    } else {
      this.publish({ error: String(error) });
    }
  }

  setCamera(camera: CameraDoc): void {
    this.publish({ camera });
  }

  async uploadDataset(data: Blob | ArrayBuffer | string, delimiter = ","): Promise<void> {
    try {
      const dataset = await this.api.uploadDataset(data, delimiter);
      this.publish({ dataset, error: null, tokenNeeded: false });
      const draft = defaultMappingFor(dataset);
      if (draft) {
        await this.setMapping(draft);
      } else {
        this.publish({
          mappingDraft: null,
          scene: null,
          sceneId: null,
          report: null,
          error: "dataset needs three leading numeric columns for x/y/z",
        });
      }
    } catch (error) {
      this.fail(error);
    }
  }

  /** Rebuild the scene for a new mapping draft; stale responses are
   * discarded by sequence number. Locally invalid drafts publish their
   * diagnostics and never reach the server. */
  async setMapping(mapping: MappingDoc): Promise<void> {
    const dataset = this.state.dataset;
    if (!dataset) return;
    const seq = ++this.rebuildSeq;
    const local = validateMappingLocal(dataset, mapping);
    this.publish({ mappingDraft: mapping, diagnostics: local });
    if (local.length) return;
    try {
      const created = await this.api.createScene(dataset.id, mapping);
      const scene = await this.api.getScene(created.scene_id);
      if (seq !== this.rebuildSeq) return; // a newer rebuild won
      this.publish({
        scene,
        sceneId: created.scene_id,
        report: created.report,
        camera: this.state.camera ?? scene.camera,
        diagnostics: [],
        error: null,
        tokenNeeded: false,
      });
    } catch (error) {
      if (seq !== this.rebuildSeq) return;
      this.fail(error);
    }
  }

  async save(vizId: string, name: string): Promise<void> {
    const { dataset, mappingDraft, camera } = this.state;
    if (!dataset || !mappingDraft || !camera) {
      this.publish({ error: "nothing to save yet" });
      return;
    }
    try {
      await this.api.saveVisualization(vizId, dataset.id, name, mappingDraft, camera);
      this.publish({ error: null, tokenNeeded: false });
    } catch (error) {
      this.fail(error);
    }
  }

  /** Restores mapping draft and camera exactly as saved, then rebuilds. */
  async load(vizId: string): Promise<void> {
    try {
      const doc = await this.api.loadVisualization(vizId);
      this.publish({ camera: doc.camera, error: null, tokenNeeded: false });
      await this.setMapping(doc.mapping);
    } catch (error) {
      this.fail(error);
    }
  }
}
