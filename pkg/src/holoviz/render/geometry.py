"""Geometry stage shared by both raster kernels.

Scene assembly (tessellation, world placement, vertex shading) is
view-independent and done once; each view then only transforms, projects,
culls, and packs triangles. The packed output is a (T, 18) float64 array:

    x0 y0 z0  x1 y1 z1  x2 y2 z2  r0 g0 b0  r1 g1 b1  r2 g2 b2

in screen coordinates (x right, y down, origin at the top-left pixel
corner, z = NDC depth), back-faces culled and winding normalized so every
emitted triangle has positive doubled area. Both kernels consume this
layout, so a scene rasterizes bit-identically on either backend.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..multiview import ViewCamera
from ..scene import Lighting, Scene
from .meshes import unit_mesh

__all__ = ["SceneGeometry", "assemble_scene", "build_screen_triangles", "project_to_screen"]


@dataclass(frozen=True, eq=False)
class SceneGeometry:
    """World-space triangle soup with pre-shaded vertex colors."""

    vertices: np.ndarray  # (V, 3) float64
    colors: np.ndarray  # (V, 3) float64
    triangles: np.ndarray  # (T, 3) int64


def _shade_vertices(
    normals: np.ndarray, color: tuple[float, float, float], lighting: Lighting
) -> np.ndarray:
    """Per-vertex Lambert factor: color * min(1, ambient + diffuse*max(0, n.l))."""
    light_dir = np.asarray(lighting.direction)
    n_dot_l = normals @ -light_dir
    intensity = np.minimum(1.0, lighting.ambient + lighting.diffuse * np.maximum(0.0, n_dot_l))
    return intensity[:, None] * np.asarray(color)[None, :]


def assemble_scene(
    scene: Scene, lat_segments: int = 16, radial_segments: int = 32
) -> SceneGeometry:
    """Tessellate and shade every node once; nodes keep submission order."""
    if not scene.nodes:
        empty3 = np.empty((0, 3))
        return SceneGeometry(empty3, empty3.copy(), np.empty((0, 3), dtype=np.int64))
    positions: list[np.ndarray] = []
    colors: list[np.ndarray] = []
    triangles: list[np.ndarray] = []
    offset = 0
    for node in scene.nodes:
        mesh = unit_mesh(node.shape, lat_segments, radial_segments)
        positions.append(mesh.positions * node.radius + np.asarray(node.position))
        colors.append(_shade_vertices(mesh.normals, node.color, scene.lighting))
        triangles.append(mesh.triangles.astype(np.int64) + offset)
        offset += mesh.vertex_count
    return SceneGeometry(
        vertices=np.concatenate(positions),
        colors=np.concatenate(colors),
        triangles=np.concatenate(triangles),
    )


def project_to_screen(
    geometry: SceneGeometry, view: ViewCamera, width: int, height: int
) -> np.ndarray:
    """Project assembled geometry for one view into packed screen triangles.

    Triangles with any vertex behind the near plane are dropped whole (no
    polygon clipping; mapped scenes live in the unit cube well inside the
    default frustum).
    """
    tris = geometry.triangles
    if not len(tris):
        return np.empty((0, 18))
    matrix = view.projection @ view.view_transform
    verts = geometry.vertices
    hom = np.empty((len(verts), 4))
    hom[:, :3] = verts
    hom[:, 3] = 1.0
    clip = hom @ matrix.T
    w = clip[:, 3]
    visible = (w >= 1e-12) & (clip[:, 2] >= -w)
    with np.errstate(divide="ignore", invalid="ignore"):
        ndc = clip[:, :3] / w[:, None]
    screen = np.empty_like(ndc)
    screen[:, 0] = (ndc[:, 0] + 1.0) * 0.5 * width
    screen[:, 1] = (1.0 - ndc[:, 1]) * 0.5 * height
    screen[:, 2] = ndc[:, 2]

    keep = visible[tris].all(axis=1)
    tris = tris[keep]
    if not len(tris):
        return np.empty((0, 18))

    v0 = screen[tris[:, 0]]
    v1 = screen[tris[:, 1]]
    v2 = screen[tris[:, 2]]
    # The NDC->screen y flip mirrors orientation: front faces (CCW from the
    # eye) come out clockwise in y-down screen space, i.e. negative area.
    area2 = (v1[:, 0] - v0[:, 0]) * (v2[:, 1] - v0[:, 1]) - (v1[:, 1] - v0[:, 1]) * (
        v2[:, 0] - v0[:, 0]
    )
    front = area2 < 0.0
    tris = tris[front]
    if not len(tris):
        return np.empty((0, 18))

    # Swap v1/v2 so kernels always see positive-area triangles.
    out = np.empty((len(tris), 18))
    out[:, 0:3] = screen[tris[:, 0]]
    out[:, 3:6] = screen[tris[:, 2]]
    out[:, 6:9] = screen[tris[:, 1]]
    out[:, 9:12] = geometry.colors[tris[:, 0]]
    out[:, 12:15] = geometry.colors[tris[:, 2]]
    out[:, 15:18] = geometry.colors[tris[:, 1]]
    return out


def build_screen_triangles(
    scene: Scene,
    view: ViewCamera,
    width: int,
    height: int,
    lat_segments: int = 16,
    radial_segments: int = 32,
) -> np.ndarray:
    """Assemble-and-project convenience for single-view rendering."""
    geometry = assemble_scene(scene, lat_segments, radial_segments)
    return project_to_screen(geometry, view, width, height)
