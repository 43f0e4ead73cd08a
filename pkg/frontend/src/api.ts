/** Typed client for the holoviz HTTP API.
 *
 * Every error path surfaces the server's own diagnostic text verbatim so
 * the UI never invents or swallows messages. A 401 is distinguished so
 * callers can prompt for a token.
 */

import type {
  CameraDoc,
  DatasetSummary,
  MappingDoc,
  QuiltParams,
  SceneDoc,
  SceneResponse,
  VisualizationDoc,
  VisualizationListEntry,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly detail: unknown;

  constructor(status: number, detail: unknown) {
    super(formatDetail(detail));
    this.status = status;
    this.detail = detail;
  }

  get unauthorized(): boolean {
    return this.status === 401;
  }
}

export function formatDetail(detail: unknown): string {
  if (typeof detail === "string") return detail;
  if (detail && typeof detail === "object") {
    const obj = detail as Record<string, unknown>;
    if (Array.isArray(obj.diagnostics)) {
      return obj.diagnostics
        .map((d) => {
          const diag = d as { channel?: string; message?: string };
          return `${diag.channel ?? "?"}: ${diag.message ?? ""}`;
        })
        .join("; ");
    }
    if (Array.isArray(obj.errors)) return obj.errors.join("; ");
    if (typeof obj.message === "string") {
      return obj.line !== undefined ? `line ${obj.line}: ${obj.message}` : obj.message;
    }
  }
  return JSON.stringify(detail);
}

export class ApiClient {
  private token: string | null = null;

  constructor(private readonly base: string = "") {}

  setToken(token: string | null): void {
    this.token = token && token.length > 0 ? token : null;
  }

  hasToken(): boolean {
    return this.token !== null;
  }

  private headers(extra: Record<string, string> = {}): Record<string, string> {
    return this.token ? { ...extra, Authorization: `Bearer ${this.token}` } : extra;
  }

  private async parseError(response: Response): Promise<never> {
    let detail: unknown = `${response.status} ${response.statusText}`;
    try {
      const body = (await response.json()) as { detail?: unknown };
      if (body && body.detail !== undefined) detail = body.detail;
    } catch {
      // non-JSON error body: keep the status line
    }
    throw new ApiError(response.status, detail);
  }

  private async getJson<T>(url: string): Promise<T> {
    const response = await fetch(url, { headers: this.headers() });
    if (!response.ok) await this.parseError(response);
    return (await response.json()) as T;
  }

  async uploadDataset(
    data: Blob | ArrayBuffer | string,
    delimiter = ",",
    hasHeader = true,
  ): Promise<DatasetSummary> {
    const params = new URLSearchParams({
      delimiter,
      has_header: String(hasHeader),
    });
    const response = await fetch(`${this.base}/api/datasets?${params}`, {
      method: "POST",
      body: data,
      headers: this.headers({ "Content-Type": "text/csv" }),
    });
    if (!response.ok) await this.parseError(response);
    return (await response.json()) as DatasetSummary;
  }

  async createScene(datasetId: string, mapping?: MappingDoc): Promise<SceneResponse> {
    const body: Record<string, unknown> = { dataset_id: datasetId };
    if (mapping) body.mapping = mapping;
    const response = await fetch(`${this.base}/api/scenes`, {
      method: "POST",
      body: JSON.stringify(body),
      headers: this.headers({ "Content-Type": "application/json" }),
    });
    if (!response.ok) await this.parseError(response);
    return (await response.json()) as SceneResponse;
  }

  async getScene(sceneId: string): Promise<SceneDoc> {
    return this.getJson<SceneDoc>(`${this.base}/api/scenes/${sceneId}`);
  }

  quiltUrl(sceneId: string, params: QuiltParams): string {
    const query = new URLSearchParams({
      views: String(params.views),
      cone_deg: String(params.cone_deg),
      columns: String(params.columns),
      rows: String(params.rows),
      tile_w: String(params.tile_w),
      tile_h: String(params.tile_h),
    });
    return `${this.base}/api/scenes/${sceneId}/quilt?${query}`;
  }

  async fetchQuilt(sceneId: string, params: QuiltParams): Promise<Blob> {
    const response = await fetch(this.quiltUrl(sceneId, params), {
      headers: this.headers(),
    });
    if (!response.ok) await this.parseError(response);
    return response.blob();
  }

  async saveVisualization(
    vizId: string,
    datasetId: string,
    name: string,
    mapping: MappingDoc,
    camera: CameraDoc,
  ): Promise<VisualizationDoc> {
    const response = await fetch(`${this.base}/api/visualizations/${vizId}`, {
      method: "PUT",
      body: JSON.stringify({ dataset_id: datasetId, name, mapping, camera }),
      headers: this.headers({ "Content-Type": "application/json" }),
    });
    if (!response.ok) await this.parseError(response);
    return (await response.json()) as VisualizationDoc;
  }

  async loadVisualization(vizId: string): Promise<VisualizationDoc> {
    return this.getJson<VisualizationDoc>(`${this.base}/api/visualizations/${vizId}`);
  }

  async listVisualizations(): Promise<VisualizationListEntry[]> {
    const body = await this.getJson<{ visualizations: VisualizationListEntry[] }>(
      `${this.base}/api/visualizations`,
    );
    return body.visualizations;
  }
}
