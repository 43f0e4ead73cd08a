/** Unit meshes for the three node shapes, matching the server's
 * conventions (outward normals, +Y cylinder axis, height = diameter,
 * cube half-extent 1). Interactive segment counts are lower than the
 * server's offline defaults.
 */

import type { ShapeName } from "./types.js";

export interface MeshBuffers {
  positions: Float32Array; // xyz per vertex
  normals: Float32Array;
  indices: Uint16Array;
}

export function sphereMesh(latSegments = 12, radialSegments = 24): MeshBuffers {
  const positions: number[] = [];
  const normals: number[] = [];
  const indices: number[] = [];
  for (let i = 0; i <= latSegments; i++) {
    const phi = Math.PI / 2 - (Math.PI * i) / latSegments;
    for (let j = 0; j <= radialSegments; j++) {
      const theta = (2 * Math.PI * j) / radialSegments;
      const x = Math.cos(phi) * Math.sin(theta);
      const y = Math.sin(phi);
      const z = Math.cos(phi) * Math.cos(theta);
      positions.push(x, y, z);
      normals.push(x, y, z);
    }
  }
  const stride = radialSegments + 1;
  for (let i = 0; i < latSegments; i++) {
    for (let j = 0; j < radialSegments; j++) {
      const a = i * stride + j;
      const b = (i + 1) * stride + j;
      const c = (i + 1) * stride + j + 1;
      const d = i * stride + j + 1;
      if (i !== latSegments - 1) indices.push(a, b, c);
      if (i !== 0) indices.push(a, c, d);
    }
  }
  return {
    positions: new Float32Array(positions),
    normals: new Float32Array(normals),
    indices: new Uint16Array(indices),
  };
}

const CUBE_FACES: Array<[number[], number[], number[]]> = [
  [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
  [[-1, 0, 0], [0, 1, 0], [0, 0, -1]],
  [[0, 1, 0], [0, 0, 1], [1, 0, 0]],
  [[0, -1, 0], [0, 0, -1], [1, 0, 0]],
  [[0, 0, 1], [0, 1, 0], [-1, 0, 0]],
  [[0, 0, -1], [0, 1, 0], [1, 0, 0]],
];

export function cubeMesh(): MeshBuffers {
  const positions: number[] = [];
  const normals: number[] = [];
  const indices: number[] = [];
  for (const [n, u, v] of CUBE_FACES) {
    const base = positions.length / 3;
    for (const [su, sv] of [[-1, -1], [1, -1], [1, 1], [-1, 1]]) {
      positions.push(
        n[0] + su * u[0] + sv * v[0],
        n[1] + su * u[1] + sv * v[1],
        n[2] + su * u[2] + sv * v[2],
      );
      normals.push(n[0], n[1], n[2]);
    }
    indices.push(base, base + 1, base + 2, base, base + 2, base + 3);
  }
  return {
    positions: new Float32Array(positions),
    normals: new Float32Array(normals),
    indices: new Uint16Array(indices),
  };
}

export function cylinderMesh(radialSegments = 24): MeshBuffers {
  const positions: number[] = [];
  const normals: number[] = [];
  const indices: number[] = [];
  const push = (p: number[], n: number[]) => {
    positions.push(p[0], p[1], p[2]);
    normals.push(n[0], n[1], n[2]);
  };
  for (const y of [1, -1]) {
    for (let j = 0; j <= radialSegments; j++) {
      const theta = (2 * Math.PI * j) / radialSegments;
      const s = Math.sin(theta);
      const c = Math.cos(theta);
      push([s, y, c], [s, 0, c]);
    }
  }
  for (let j = 0; j < radialSegments; j++) {
    const top = j;
    const bottom = radialSegments + 1 + j;
    indices.push(top, bottom, bottom + 1, top, bottom + 1, top + 1);
  }
  for (const y of [1, -1]) {
    const center = positions.length / 3;
    push([0, y, 0], [0, y, 0]);
    const rim = positions.length / 3;
    for (let j = 0; j <= radialSegments; j++) {
      const theta = (2 * Math.PI * j) / radialSegments;
      push([Math.sin(theta), y, Math.cos(theta)], [0, y, 0]);
    }
    for (let j = 0; j < radialSegments; j++) {
      if (y > 0) indices.push(center, rim + j, rim + j + 1);
      else indices.push(center, rim + j + 1, rim + j);
    }
  }
  return {
    positions: new Float32Array(positions),
    normals: new Float32Array(normals),
    indices: new Uint16Array(indices),
  };
}

export function meshFor(shape: ShapeName): MeshBuffers {
  if (shape === "Sphere") return sphereMesh();
  if (shape === "Cylinder") return cylinderMesh();
  return cubeMesh();
}
