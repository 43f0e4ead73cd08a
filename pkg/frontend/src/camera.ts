/** Camera math mirroring the server's scene conventions exactly:
 * +Y world up, right-handed, orbit pose eye = target + d*(cos e sin a,
 * sin e, cos e cos a), view looks down -z, symmetric GL-style projection.
 * The canvas must match server renders, so these formulas are ports, not
 * approximations.
 */

import type { CameraDoc } from "./types.js";

export type Vec3 = [number, number, number];
export type Mat4 = Float32Array; // column-major, WebGL order

export function sub(a: Vec3, b: Vec3): Vec3 {
  return [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
}

export function cross(a: Vec3, b: Vec3): Vec3 {
  return [
    a[1] * b[2] - a[2] * b[1],
    a[2] * b[0] - a[0] * b[2],
    a[0] * b[1] - a[1] * b[0],
  ];
}

export function dot(a: Vec3, b: Vec3): number {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

export function normalize(v: Vec3): Vec3 {
  const n = Math.hypot(v[0], v[1], v[2]);
  return [v[0] / n, v[1] / n, v[2] / n];
}

export interface CameraPose {
  eye: Vec3;
  forward: Vec3;
  right: Vec3;
  up: Vec3;
}

const WORLD_UP: Vec3 = [0, 1, 0];

export function cameraPose(camera: CameraDoc): CameraPose {
  const { azimuth: a, elevation: e, distance: d } = camera;
  const offset: Vec3 = [
    Math.cos(e) * Math.sin(a),
    Math.sin(e),
    Math.cos(e) * Math.cos(a),
  ];
  const eye: Vec3 = [
    camera.target[0] + d * offset[0],
    camera.target[1] + d * offset[1],
    camera.target[2] + d * offset[2],
  ];
  const forward = normalize(sub(camera.target, eye));
  const right = normalize(cross(forward, WORLD_UP));
  const up = cross(right, forward);
  return { eye, forward, right, up };
}

/** World-to-view matrix (column-major for WebGL). */
export function viewMatrix(camera: CameraDoc): Mat4 {
  const { eye, forward, right, up } = cameraPose(camera);
  const m = new Float32Array(16);
  m[0] = right[0]; m[4] = right[1]; m[8] = right[2]; m[12] = -dot(right, eye);
  m[1] = up[0]; m[5] = up[1]; m[9] = up[2]; m[13] = -dot(up, eye);
  m[2] = -forward[0]; m[6] = -forward[1]; m[10] = -forward[2]; m[14] = dot(forward, eye);
  m[15] = 1;
  return m;
}

/** Symmetric perspective projection, clip z in [-w, w] (column-major). */
export function perspectiveMatrix(
  verticalFov: number,
  aspect: number,
  near: number,
  far: number,
): Mat4 {
  const t = Math.tan(verticalFov / 2);
  const m = new Float32Array(16);
  m[0] = 1 / (t * aspect);
  m[5] = 1 / t;
  m[10] = (far + near) / (near - far);
  m[14] = (2 * far * near) / (near - far);
  m[11] = -1;
  return m;
}
