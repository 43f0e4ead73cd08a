import { describe, expect, it } from "vitest";

import { cameraPose, perspectiveMatrix, viewMatrix } from "../src/camera.js";
import type { CameraDoc } from "../src/types.js";

// Frozen oracle values produced by the server implementation for the same
// inputs; the canvas must reproduce server camera conventions exactly.
const DEFAULT_CAMERA: CameraDoc = {
  target: [0, 0, 0],
  azimuth: 0.5235987755982988,
  elevation: 0.3490658503988659,
  distance: 3.2,
  vertical_fov: 0.8726646259971648,
  near: 0.1,
  far: 100,
};

const SKEWED_CAMERA: CameraDoc = {
  target: [0.5, -0.25, 1.0],
  azimuth: 1.1,
  elevation: -0.7,
  distance: 2.5,
  vertical_fov: 0.9,
  near: 0.1,
  far: 100,
};

describe("cameraPose", () => {
  it("matches the server pose for the default camera", () => {
    const { eye, forward } = cameraPose(DEFAULT_CAMERA);
    expect(eye[0]).toBeCloseTo(1.5035081932574534, 12);
    expect(eye[1]).toBeCloseTo(1.09446445864214, 12);
    expect(eye[2]).toBeCloseTo(2.6041525803179963, 12);
    expect(forward[0]).toBeCloseTo(-0.46984631039295416, 12);
    expect(forward[1]).toBeCloseTo(-0.3420201433256687, 12);
    expect(forward[2]).toBeCloseTo(-0.8137976813493738, 12);
  });

  it("matches the server pose for a skewed camera", () => {
    const { eye, forward, right, up } = cameraPose(SKEWED_CAMERA);
    expect(eye[0]).toBeCloseTo(2.204082466483557, 12);
    expect(eye[1]).toBeCloseTo(-1.8605442180942275, 12);
    expect(eye[2]).toBeCloseTo(1.8673236241372475, 12);
    expect(forward[0]).toBeCloseTo(-0.6816329865934229, 12);
    expect(right[0]).toBeCloseTo(0.4535961214255774, 12);
    expect(right[1]).toBeCloseTo(0.0, 12);
    expect(up[0]).toBeCloseTo(0.5741315443479861, 12);
    expect(up[2]).toBeCloseTo(0.29221464428477234, 12);
  });

  it("keeps the basis orthonormal across random orbits", () => {
    let seed = 42;
    const rand = () => {
      seed = (seed * 1103515245 + 12345) % 2 ** 31;
      return seed / 2 ** 31;
    };
    for (let i = 0; i < 200; i++) {
      const camera: CameraDoc = {
        ...DEFAULT_CAMERA,
        azimuth: (rand() - 0.5) * 12,
        elevation: (rand() - 0.5) * 2.8,
        distance: 0.1 + rand() * 20,
      };
      const { forward, right, up } = cameraPose(camera);
      for (const v of [forward, right, up]) {
        expect(Math.hypot(...v)).toBeCloseTo(1, 9);
      }
      const dot = (a: number[], b: number[]) =>
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
      expect(Math.abs(dot(forward, right))).toBeLessThan(1e-9);
      expect(Math.abs(dot(forward, up))).toBeLessThan(1e-9);
      expect(Math.abs(dot(right, up))).toBeLessThan(1e-9);
    }
  });
});

describe("matrices", () => {
  it("perspective entries match the server for aspect 0.75", () => {
    const m = perspectiveMatrix(DEFAULT_CAMERA.vertical_fov, 0.75, 0.1, 100);
    // column-major: [0]=m00, [5]=m11, [10]=m22, [14]=m23; float32 storage
    // limits agreement with the server's float64 values to ~7 digits.
    expect(m[0]).toBeCloseTo(2.8593425606794116, 6);
    expect(m[5]).toBeCloseTo(2.1445069205095586, 6);
    expect(m[10]).toBeCloseTo(-1.002002002002002, 6);
    expect(m[14]).toBeCloseTo(-0.20020020020020018, 6);
    expect(m[11]).toBe(-1);
  });

  it("view matrix sends the eye to the origin", () => {
    const m = viewMatrix(SKEWED_CAMERA);
    const { eye } = cameraPose(SKEWED_CAMERA);
    const x = m[0] * eye[0] + m[4] * eye[1] + m[8] * eye[2] + m[12];
    const y = m[1] * eye[0] + m[5] * eye[1] + m[9] * eye[2] + m[13];
    const z = m[2] * eye[0] + m[6] * eye[1] + m[10] * eye[2] + m[14];
    expect(Math.hypot(x, y, z)).toBeLessThan(1e-6);
  });

  it("view matrix sends the target distance down -z", () => {
    const m = viewMatrix(SKEWED_CAMERA);
    const t = SKEWED_CAMERA.target;
    const z = m[2] * t[0] + m[6] * t[1] + m[10] * t[2] + m[14];
    expect(z).toBeCloseTo(-SKEWED_CAMERA.distance, 6);
  });
});
