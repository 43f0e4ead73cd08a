/** Wire-format DTOs shared with the holoviz HTTP API. */

export type ColumnKind = "Numeric" | "Categorical";
export type ShapeName = "Sphere" | "Cube" | "Cylinder";

export interface ColumnSchema {
  name: string;
  kind: ColumnKind;
  missing_count: number;
}

export interface ColumnStatsDoc {
  min?: number | null;
  max?: number | null;
  mean?: number | null;
  categories?: string[];
}

export interface DatasetSummary {
  id: string;
  row_count: number;
  schema: ColumnSchema[];
  stats: ColumnStatsDoc[];
}

/** Canonical channel mapping document; colors are "#RRGGBB" text. */
export interface MappingDoc {
  x: string;
  y: string;
  z: string;
  size?: string | null;
  color?: string | null;
  shape?: string | null;
  size_range?: [number, number];
  palette?: string[];
  gradient?: [string, string];
  default_shape?: ShapeName;
  default_color?: string;
  default_radius?: number;
}

export interface MappingReport {
  nodes_emitted: number;
  rows_dropped: number;
  dropped_row_indices: number[];
}

export interface SceneResponse {
  scene_id: string;
  report: MappingReport;
}

export interface SceneNodeDoc {
  shape: ShapeName;
  position: [number, number, number];
  radius: number;
  color: [number, number, number];
}

export interface CameraDoc {
  target: [number, number, number];
  azimuth: number;
  elevation: number;
  distance: number;
  vertical_fov: number;
  near: number;
  far: number;
}

export interface LightingDoc {
  ambient: number;
  diffuse: number;
  direction: [number, number, number];
}

export interface SceneDoc {
  schema_version: number;
  id: string;
  nodes: SceneNodeDoc[];
  camera: CameraDoc;
  lighting: LightingDoc;
  background: [number, number, number];
}

export interface VisualizationDoc {
  id: string;
  dataset_id: string;
  name: string;
  created_at: string;
  mapping: MappingDoc;
  camera: CameraDoc;
}

export interface VisualizationListEntry {
  id: string;
  name: string;
  created_at: string;
}

export interface QuiltParams {
  views: number;
  cone_deg: number;
  columns: number;
  rows: number;
  tile_w: number;
  tile_h: number;
}

export const DEFAULT_QUILT: QuiltParams = {
  views: 45,
  cone_deg: 40,
  columns: 9,
  rows: 5,
  tile_w: 384,
  tile_h: 512,
};

export const MAX_VIEWS = 100;
