/** WebGL2 scene renderer: instanced unit meshes per shape, Lambert
 * shading with the server's exact formula (color * min(1, ambient +
 * diffuse * max(0, n.l)), l = -direction), same camera matrices. The
 * canvas therefore visually matches server-side quilt tiles.
 */

import { perspectiveMatrix, viewMatrix } from "./camera.js";
import { meshFor } from "./geometry.js";
import type { CameraDoc, SceneDoc, ShapeName } from "./types.js";

const SHAPES: ShapeName[] = ["Sphere", "Cube", "Cylinder"];

export interface InstanceBatch {
  shape: ShapeName;
  count: number;
  /** Interleaved per-instance [x, y, z, radius, r, g, b]. */
  data: Float32Array;
}

/** Pure grouping step, unit-testable without a GL context. */
export function buildInstanceBatches(scene: SceneDoc): InstanceBatch[] {
  const batches: InstanceBatch[] = [];
  for (const shape of SHAPES) {
    const nodes = scene.nodes.filter((n) => n.shape === shape);
    if (!nodes.length) continue;
    const data = new Float32Array(nodes.length * 7);
    nodes.forEach((node, i) => {
      data.set(
        [...node.position, node.radius, ...node.color],
        i * 7,
      );
    });
    batches.push({ shape, count: nodes.length, data });
  }
  return batches;
}

export function instanceCount(batches: InstanceBatch[]): number {
  return batches.reduce((total, batch) => total + batch.count, 0);
}

const VERTEX_SHADER = `#version 300 es
layout(location = 0) in vec3 aPosition;
layout(location = 1) in vec3 aNormal;
layout(location = 2) in vec4 aOffsetRadius;
layout(location = 3) in vec3 aColor;
uniform mat4 uView;
uniform mat4 uProjection;
uniform vec3 uLightDir;
uniform float uAmbient;
uniform float uDiffuse;
out vec3 vColor;
void main() {
  vec3 world = aOffsetRadius.xyz + aPosition * aOffsetRadius.w;
  float ndotl = max(0.0, dot(aNormal, -uLightDir));
  float intensity = min(1.0, uAmbient + uDiffuse * ndotl);
  vColor = aColor * intensity;
  gl_Position = uProjection * uView * vec4(world, 1.0);
}`;

const FRAGMENT_SHADER = `#version 300 es
precision mediump float;
in vec3 vColor;
out vec4 outColor;
void main() { outColor = vec4(vColor, 1.0); }`;

interface ShapeBuffers {
  vao: WebGLVertexArrayObject;
  instanceBuffer: WebGLBuffer;
  indexCount: number;
}

export class SceneRenderer {
  private gl: WebGL2RenderingContext;
  private program: WebGLProgram;
  private shapeBuffers = new Map<ShapeName, ShapeBuffers>();
  private batches: InstanceBatch[] = [];
  private scene: SceneDoc | null = null;

  constructor(private readonly canvas: HTMLCanvasElement) {
    const gl = canvas.getContext("webgl2");
    if (!gl) throw new Error("WebGL2 is not available in this browser");
    this.gl = gl;
    this.program = this.compileProgram();
    for (const shape of SHAPES) this.shapeBuffers.set(shape, this.buildShape(shape));
    gl.enable(gl.DEPTH_TEST);
    gl.enable(gl.CULL_FACE);
    gl.cullFace(gl.BACK);
  }

  get nodeCount(): number {
    return instanceCount(this.batches);
  }

  setScene(scene: SceneDoc): void {
    this.scene = scene;
    this.batches = buildInstanceBatches(scene);
    for (const batch of this.batches) {
      const buffers = this.shapeBuffers.get(batch.shape)!;
      this.gl.bindBuffer(this.gl.ARRAY_BUFFER, buffers.instanceBuffer);
      this.gl.bufferData(this.gl.ARRAY_BUFFER, batch.data, this.gl.DYNAMIC_DRAW);
    }
  }

  draw(camera: CameraDoc): void {
    const { gl } = this;
    const scene = this.scene;
    if (!scene) return;
    const width = this.canvas.clientWidth || this.canvas.width;
    const height = this.canvas.clientHeight || this.canvas.height;
    if (this.canvas.width !== width || this.canvas.height !== height) {
      this.canvas.width = width;
      this.canvas.height = height;
    }
    gl.viewport(0, 0, width, height);
    const [br, bg, bb] = scene.background;
    gl.clearColor(br, bg, bb, 1);
    gl.clear(gl.COLOR_BUFFER_BIT | gl.DEPTH_BUFFER_BIT);
    gl.useProgram(this.program);
    const view = viewMatrix(camera);
    const projection = perspectiveMatrix(
      camera.vertical_fov, width / height, camera.near, camera.far,
    );
    gl.uniformMatrix4fv(gl.getUniformLocation(this.program, "uView"), false, view);
    gl.uniformMatrix4fv(
      gl.getUniformLocation(this.program, "uProjection"), false, projection,
    );
    gl.uniform3fv(
      gl.getUniformLocation(this.program, "uLightDir"), scene.lighting.direction,
    );
    gl.uniform1f(gl.getUniformLocation(this.program, "uAmbient"), scene.lighting.ambient);
    gl.uniform1f(gl.getUniformLocation(this.program, "uDiffuse"), scene.lighting.diffuse);
    for (const batch of this.batches) {
      const buffers = this.shapeBuffers.get(batch.shape)!;
      gl.bindVertexArray(buffers.vao);
      gl.drawElementsInstanced(
        gl.TRIANGLES, buffers.indexCount, gl.UNSIGNED_SHORT, 0, batch.count,
      );
    }
    gl.bindVertexArray(null);
  }

  private compileShader(kind: number, source: string): WebGLShader {
    const { gl } = this;
    const shader = gl.createShader(kind)!;
    gl.shaderSource(shader, source);
    gl.compileShader(shader);
    if (!gl.getShaderParameter(shader, gl.COMPILE_STATUS)) {
      throw new Error(gl.getShaderInfoLog(shader) ?? "shader compile failed");
    }
    return shader;
  }

  private compileProgram(): WebGLProgram {
    const { gl } = this;
    const program = gl.createProgram()!;
    gl.attachShader(program, this.compileShader(gl.VERTEX_SHADER, VERTEX_SHADER));
    gl.attachShader(program, this.compileShader(gl.FRAGMENT_SHADER, FRAGMENT_SHADER));
    gl.linkProgram(program);
    if (!gl.getProgramParameter(program, gl.LINK_STATUS)) {
      throw new Error(gl.getProgramInfoLog(program) ?? "program link failed");
    }
    return program;
  }

  private buildShape(shape: ShapeName): ShapeBuffers {
    const { gl } = this;
    const mesh = meshFor(shape);
    const vao = gl.createVertexArray()!;
    gl.bindVertexArray(vao);

    const positionBuffer = gl.createBuffer()!;
    gl.bindBuffer(gl.ARRAY_BUFFER, positionBuffer);
    gl.bufferData(gl.ARRAY_BUFFER, mesh.positions, gl.STATIC_DRAW);
    gl.enableVertexAttribArray(0);
    gl.vertexAttribPointer(0, 3, gl.FLOAT, false, 0, 0);

    const normalBuffer = gl.createBuffer()!;
    gl.bindBuffer(gl.ARRAY_BUFFER, normalBuffer);
    gl.bufferData(gl.ARRAY_BUFFER, mesh.normals, gl.STATIC_DRAW);
    gl.enableVertexAttribArray(1);
    gl.vertexAttribPointer(1, 3, gl.FLOAT, false, 0, 0);

    const instanceBuffer = gl.createBuffer()!;
    gl.bindBuffer(gl.ARRAY_BUFFER, instanceBuffer);
    gl.enableVertexAttribArray(2);
    gl.vertexAttribPointer(2, 4, gl.FLOAT, false, 28, 0);
    gl.vertexAttribDivisor(2, 1);
    gl.enableVertexAttribArray(3);
    gl.vertexAttribPointer(3, 3, gl.FLOAT, false, 28, 16);
    gl.vertexAttribDivisor(3, 1);

    const indexBuffer = gl.createBuffer()!;
    gl.bindBuffer(gl.ELEMENT_ARRAY_BUFFER, indexBuffer);
    gl.bufferData(gl.ELEMENT_ARRAY_BUFFER, mesh.indices, gl.STATIC_DRAW);

    gl.bindVertexArray(null);
    return { vao, instanceBuffer, indexCount: mesh.indices.length };
  }
}
