/** Quilt preview helpers: tile geometry and the view-sweep animation that
 * fakes parallax on a flat monitor by cycling tiles left to right at
 * 24 tiles per second.
 */

import type { QuiltParams } from "./types.js";
import { MAX_VIEWS } from "./types.js";

export const SWEEP_RATE = 24; // tiles per second

export interface TileRect {
  x: number;
  y: number;
  width: number;
  height: number;
}

/** Pixel rect of a view tile inside the quilt (view 0 at bottom-left,
 * rows upward; y measured from the image top as canvas APIs expect). */
export function tileRect(params: QuiltParams, viewIndex: number): TileRect {
  const col = viewIndex % params.columns;
  const rowFromBottom = Math.floor(viewIndex / params.columns);
  return {
    x: col * params.tile_w,
    y: (params.rows - 1 - rowFromBottom) * params.tile_h,
    width: params.tile_w,
    height: params.tile_h,
  };
}

/** Tile index shown at a given time since sweep start; cycles all views. */
export function sweepIndex(params: QuiltParams, elapsedSeconds: number): number {
  const step = Math.floor(elapsedSeconds * SWEEP_RATE);
  return ((step % params.views) + params.views) % params.views;
}

/** Client-side validation mirroring the server's 422 rules; invalid
 * configs never leave the browser. */
export function quiltParamErrors(params: QuiltParams): string[] {
  const errors: string[] = [];
  if (!(params.views >= 1 && params.views <= MAX_VIEWS)) {
    errors.push(`views must be between 1 and ${MAX_VIEWS}`);
  }
  if (!(params.cone_deg > 0)) errors.push("cone must be a positive angle");
  if (params.columns < 1 || params.rows < 1) {
    errors.push("tile grid must be at least 1x1");
  } else if (params.columns * params.rows < params.views) {
    errors.push("tile grid has fewer cells than views");
  }
  if (params.tile_w < 1 || params.tile_h < 1) errors.push("tile dimensions must be positive");
  return errors;
}

/** Drives the sweep on a canvas: draws one tile of the quilt image per
 * frame, advancing at SWEEP_RATE. */
export class SweepPlayer {
  private running = false;
  private startedAt = 0;
  private frameHandle = 0;

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly now: () => number = () => performance.now(),
  ) {}

  get active(): boolean {
    return this.running;
  }

  start(image: CanvasImageSource, params: QuiltParams): void {
    this.stop();
    this.running = true;
    this.startedAt = this.now();
    this.canvas.width = params.tile_w;
    this.canvas.height = params.tile_h;
    const context = this.canvas.getContext("2d");
    if (!context) return;
    const draw = () => {
      if (!this.running) return;
      const elapsed = (this.now() - this.startedAt) / 1000;
      const rect = tileRect(params, sweepIndex(params, elapsed));
      context.clearRect(0, 0, this.canvas.width, this.canvas.height);
      context.drawImage(
        image,
        rect.x, rect.y, rect.width, rect.height,
        0, 0, this.canvas.width, this.canvas.height,
      );
      this.frameHandle = requestAnimationFrame(draw);
    };
    draw();
  }

  stop(): void {
    this.running = false;
    if (this.frameHandle) cancelAnimationFrame(this.frameHandle);
    this.frameHandle = 0;
  }
}
