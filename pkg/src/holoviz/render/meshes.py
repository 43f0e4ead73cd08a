"""Triangle tessellation of the three node shapes.

All meshes are generated with outward unit normals and counter-clockwise
winding when seen from outside (right-handed world, +Y up). Unit-radius
meshes are cached; callers scale by node radius.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from ..scene import Shape

__all__ = ["InvalidSegmentCountError", "TriangleMesh", "tessellate", "unit_mesh"]


class InvalidSegmentCountError(ValueError):
    def __init__(self, got: int) -> None:
        super().__init__(f"segment counts must be >= 3, got {got}")


@dataclass(frozen=True, eq=False)
class TriangleMesh:
    positions: np.ndarray  # (V, 3) float64
    normals: np.ndarray  # (V, 3) float64, unit length
    triangles: np.ndarray  # (T, 3) int32, CCW from outside

    @property
    def vertex_count(self) -> int:
        return len(self.positions)

    @property
    def triangle_count(self) -> int:
        return len(self.triangles)


def _sphere(lat_segments: int, radial_segments: int) -> TriangleMesh:
    """Latitude/longitude grid with duplicated seam column; the two pole
    rows collapse, so their quads emit single triangles."""
    lat, lon = lat_segments, radial_segments
    phis = np.pi / 2 - np.pi * np.arange(lat + 1) / lat  # +pole down to -pole
    thetas = 2 * np.pi * np.arange(lon + 1) / lon
    cos_phi = np.cos(phis)[:, None]
    sin_phi = np.sin(phis)[:, None]
    sin_theta = np.sin(thetas)[None, :]
    cos_theta = np.cos(thetas)[None, :]
    x = cos_phi * sin_theta
    y = np.broadcast_to(sin_phi, x.shape)
    z = cos_phi * cos_theta
    positions = np.stack([x, y, z], axis=-1).reshape(-1, 3)
    tris: list[tuple[int, int, int]] = []
    stride = lon + 1
    for i in range(lat):
        for j in range(lon):
            a = i * stride + j
            b = (i + 1) * stride + j
            c = (i + 1) * stride + j + 1
            d = i * stride + j + 1
            if i != lat - 1:
                tris.append((a, b, c))
            if i != 0:
                tris.append((a, c, d))
    return TriangleMesh(
        positions=positions,
        normals=positions.copy(),
        triangles=np.asarray(tris, dtype=np.int32),
    )


_CUBE_FACES = (
    ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
    ((-1, 0, 0), (0, 1, 0), (0, 0, -1)),
    ((0, 1, 0), (0, 0, 1), (1, 0, 0)),
    ((0, -1, 0), (0, 0, -1), (1, 0, 0)),
    ((0, 0, 1), (0, 1, 0), (-1, 0, 0)),
    ((0, 0, -1), (0, 1, 0), (1, 0, 0)),
)


def _cube() -> TriangleMesh:
    """24 vertices (4 per face for flat normals), 12 triangles."""
    positions = []
    normals = []
    tris = []
    for n, u, v in _CUBE_FACES:
        n_v = np.asarray(n, dtype=np.float64)
        u_v = np.asarray(u, dtype=np.float64)
        v_v = np.asarray(v, dtype=np.float64)
        base = len(positions)
        for su, sv in ((-1, -1), (1, -1), (1, 1), (-1, 1)):
            positions.append(n_v + su * u_v + sv * v_v)
            normals.append(n_v)
        tris.append((base, base + 1, base + 2))
        tris.append((base, base + 2, base + 3))
    return TriangleMesh(
        positions=np.asarray(positions),
        normals=np.asarray(normals),
        triangles=np.asarray(tris, dtype=np.int32),
    )


def _cylinder(radial_segments: int) -> TriangleMesh:
    """Radial wall plus two cap fans. +Y axis, height = 2 * radius.

    Wall vertices carry radial normals; caps duplicate the rim with flat
    axial normals so cap shading stays flat.
    """
    n = radial_segments
    thetas = 2 * np.pi * np.arange(n + 1) / n
    sin_t = np.sin(thetas)
    cos_t = np.cos(thetas)
    positions: list[np.ndarray] = []
    normals: list[np.ndarray] = []
    tris: list[tuple[int, int, int]] = []
    # Wall rings: top row then bottom row, seam duplicated.
    for y in (1.0, -1.0):
        for j in range(n + 1):
            positions.append(np.array([sin_t[j], y, cos_t[j]]))
            normals.append(np.array([sin_t[j], 0.0, cos_t[j]]))
    for j in range(n):
        top, bottom = j, (n + 1) + j
        tris.append((top, bottom, bottom + 1))
        tris.append((top, bottom + 1, top + 1))
    # Caps: center vertex plus duplicated rim with axial normals.
    for y, normal_y in ((1.0, 1.0), (-1.0, -1.0)):
        center = len(positions)
        positions.append(np.array([0.0, y, 0.0]))
        normals.append(np.array([0.0, normal_y, 0.0]))
        rim = len(positions)
        for j in range(n + 1):
            positions.append(np.array([sin_t[j], y, cos_t[j]]))
            normals.append(np.array([0.0, normal_y, 0.0]))
        for j in range(n):
            if normal_y > 0:
                tris.append((center, rim + j, rim + j + 1))
            else:
                tris.append((center, rim + j + 1, rim + j))
    return TriangleMesh(
        positions=np.asarray(positions),
        normals=np.asarray(normals),
        triangles=np.asarray(tris, dtype=np.int32),
    )


@functools.lru_cache(maxsize=32)
def unit_mesh(shape: Shape, lat_segments: int = 16, radial_segments: int = 32) -> TriangleMesh:
    """Cached unit-radius mesh for a shape."""
    if shape is Shape.SPHERE:
        if lat_segments < 3 or radial_segments < 3:
            raise InvalidSegmentCountError(min(lat_segments, radial_segments))
        return _sphere(lat_segments, radial_segments)
    if shape is Shape.CYLINDER:
        if radial_segments < 3:
            raise InvalidSegmentCountError(radial_segments)
        return _cylinder(radial_segments)
    return _cube()


def tessellate(
    shape: Shape,
    radius: float,
    lat_segments: int = 16,
    radial_segments: int = 32,
) -> TriangleMesh:
    """Mesh for a shape of the given radius (cube half-extent, cylinder
    radius with height 2 * radius)."""
    if not (radius > 0):
        raise ValueError(f"radius must be > 0, got {radius!r}")
    unit = unit_mesh(shape, lat_segments, radial_segments)
    return TriangleMesh(
        positions=unit.positions * radius,
        normals=unit.normals,
        triangles=unit.triangles,
    )
