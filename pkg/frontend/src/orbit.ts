/** Orbit interaction: pointer drags map to azimuth/elevation at
 * 0.01 rad/px, wheel notches scale distance by 1.1, elevation clamps to
 * +/-85 degrees so the view basis never degenerates.
 */

import type { CameraDoc } from "./types.js";

export const DRAG_SENSITIVITY = 0.01; // radians per pixel
export const ZOOM_FACTOR = 1.1; // per wheel notch
export const ELEVATION_LIMIT = (85 * Math.PI) / 180;
export const MIN_DISTANCE = 0.05;
export const MAX_DISTANCE = 100;

export function applyDrag(camera: CameraDoc, dxPixels: number, dyPixels: number): CameraDoc {
  const azimuth = camera.azimuth + dxPixels * DRAG_SENSITIVITY;
  const raw = camera.elevation + dyPixels * DRAG_SENSITIVITY;
  const elevation = Math.min(ELEVATION_LIMIT, Math.max(-ELEVATION_LIMIT, raw));
  return { ...camera, azimuth, elevation };
}

/** notches > 0 zooms out (distance grows), < 0 zooms in. */
export function applyZoom(camera: CameraDoc, notches: number): CameraDoc {
  const scaled = camera.distance * Math.pow(ZOOM_FACTOR, notches);
  const distance = Math.min(MAX_DISTANCE, Math.max(MIN_DISTANCE, scaled));
  return { ...camera, distance };
}

/** Wires pointer/wheel events on a canvas to camera updates. */
export class OrbitController {
  private dragging = false;
  private lastX = 0;
  private lastY = 0;

  constructor(
    private camera: CameraDoc,
    private readonly onChange: (camera: CameraDoc) => void,
  ) {}

  get current(): CameraDoc {
    return this.camera;
  }

  /** Adopt an externally restored camera without echoing a change event. */
  sync(camera: CameraDoc): void {
    this.camera = camera;
  }

  attach(canvas: HTMLElement): void {
    canvas.addEventListener("pointerdown", (ev) => {
      this.dragging = true;
      this.lastX = ev.clientX;
      this.lastY = ev.clientY;
      canvas.setPointerCapture?.(ev.pointerId);
    });
    canvas.addEventListener("pointermove", (ev) => {
      if (!this.dragging) return;
      const dx = ev.clientX - this.lastX;
      const dy = ev.clientY - this.lastY;
      this.lastX = ev.clientX;
      this.lastY = ev.clientY;
      this.camera = applyDrag(this.camera, dx, dy);
      this.onChange(this.camera);
    });
    canvas.addEventListener("pointerup", () => {
      this.dragging = false;
    });
    canvas.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      this.camera = applyZoom(this.camera, Math.sign(ev.deltaY));
      this.onChange(this.camera);
    }, { passive: false });
  }
}
