"""Multi-view camera rig for quilt rendering.

Views are spaced linearly across a horizontal cone; each one translates the
eye along the camera right axis and shears the projection so the focal
plane lands on identical normalized device coordinates in every view. That
fixed plane is what makes the assembled quilt read as a single object with
parallax instead of N unrelated renders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scene import OrbitCamera, camera_pose

__all__ = [
    "MAX_VIEWS",
    "QuiltConfig",
    "ViewCamera",
    "default_quilt_config",
    "perspective_matrix",
    "project_point",
    "quilt_config_errors",
    "quilt_config_from_query",
    "rig_views",
    "view_angles",
    "view_matrix",
]

MAX_VIEWS = 100


@dataclass(frozen=True)
class QuiltConfig:
    """View count, cone width, and tile layout for one quilt render."""

    view_count: int = 45
    cone_angle: float = math.radians(40.0)
    columns: int = 9
    rows: int = 5
    tile_width: int = 384
    tile_height: int = 512
    focal_distance: float | None = None  # None: use the camera distance

    @property
    def aspect(self) -> float:
        return self.tile_width / self.tile_height


def default_quilt_config() -> QuiltConfig:
    return QuiltConfig()


def quilt_config_errors(config: QuiltConfig) -> list[str]:
    """Human-readable constraint violations; empty when the config is valid."""
    errors: list[str] = []
    if not (1 <= config.view_count <= MAX_VIEWS):
        errors.append(f"view_count must be between 1 and {MAX_VIEWS}")
    if not (config.cone_angle > 0) or not math.isfinite(config.cone_angle):
        errors.append("cone_angle must be a positive angle")
    if config.columns < 1 or config.rows < 1:
        errors.append("tile grid must be at least 1x1")
    elif config.columns * config.rows < config.view_count:
        errors.append("tile grid has fewer cells than views")
    if config.tile_width < 1 or config.tile_height < 1:
        errors.append("tile dimensions must be positive")
    if config.focal_distance is not None and not (config.focal_distance > 0):
        errors.append("focal_distance must be > 0")
    return errors


def _require_valid(config: QuiltConfig) -> None:
    errors = quilt_config_errors(config)
    if errors:
        raise ValueError("; ".join(errors))


@dataclass(frozen=True, eq=False)
class ViewCamera:
    """One quilt viewpoint: pose plus sheared projection.

    The projection differs from the base perspective matrix only in the
    entry that couples view-space depth to clip-space x.
    """

    view_index: int
    eye_offset: float
    view_transform: np.ndarray  # 4x4, world -> view
    projection: np.ndarray  # 4x4, view -> clip


def view_angles(config: QuiltConfig) -> list[float]:
    """Linear angles across the cone, endpoints inclusive.

    Computed as cone * (2i - (N-1)) / (2(N-1)) so the list is exactly
    antisymmetric and an odd rig has an exact 0.0 center angle.
    """
    _require_valid(config)
    n = config.view_count
    if n == 1:
        return [0.0]
    return [config.cone_angle * (2 * i - (n - 1)) / (2 * (n - 1)) for i in range(n)]


def view_matrix(camera: OrbitCamera) -> np.ndarray:
    """World-to-view transform; view space looks down -z."""
    eye, forward, right, up = camera_pose(camera)
    e = np.asarray(eye)
    r = np.asarray(right)
    u = np.asarray(up)
    f = np.asarray(forward)
    m = np.identity(4)
    m[0, :3] = r
    m[1, :3] = u
    m[2, :3] = -f
    m[0, 3] = -float(r @ e)
    m[1, 3] = -float(u @ e)
    m[2, 3] = float(f @ e)
    return m


def perspective_matrix(
    vertical_fov: float, aspect: float, near: float, far: float
) -> np.ndarray:
    """Symmetric perspective projection, clip z in [-w, w]."""
    t = math.tan(vertical_fov / 2.0)
    m = np.zeros((4, 4))
    m[0, 0] = 1.0 / (t * aspect)
    m[1, 1] = 1.0 / t
    m[2, 2] = (far + near) / (near - far)
    m[2, 3] = 2.0 * far * near / (near - far)
    m[3, 2] = -1.0
    return m


def rig_views(camera: OrbitCamera, config: QuiltConfig) -> list[ViewCamera]:
    """Build the per-view cameras for a quilt.

    Eye i sits focal_distance*tan(angle_i) along the camera right axis; the
    projection's depth-to-x entry is adjusted so every point on the focal
    plane projects to the same NDC in all views. The center view of an odd
    rig reproduces the base matrices bit-for-bit.
    """
    _require_valid(config)
    focal = config.focal_distance if config.focal_distance is not None else camera.distance
    base_view = view_matrix(camera)
    base_proj = perspective_matrix(
        camera.vertical_fov, config.aspect, camera.near, camera.far
    )
    shear_scale = focal * math.tan(camera.vertical_fov / 2.0) * config.aspect
    views: list[ViewCamera] = []
    for i, angle in enumerate(view_angles(config)):
        offset = focal * math.tan(angle)
        view = base_view.copy()
        # Moving the eye by +offset along camera right shifts view-space x.
        view[0, 3] = base_view[0, 3] - offset
        proj = base_proj.copy()
        proj[0, 2] = base_proj[0, 2] + (0.0 - offset) / shear_scale
        views.append(
            ViewCamera(view_index=i, eye_offset=offset, view_transform=view, projection=proj)
        )
    return views


def project_point(
    view: ViewCamera, point: tuple[float, float, float] | np.ndarray
) -> tuple[tuple[float, float], float] | None:
    """Project a world point to ((ndc_x, ndc_y), ndc_depth).

    Returns None (clipped) for points behind the near plane or with a
    vanishing homogeneous w.
    """
    p = np.array([point[0], point[1], point[2], 1.0])
    clip = view.projection @ (view.view_transform @ p)
    w = clip[3]
    if w < 1e-12 or clip[2] < -w:
        return None
    ndc = clip / w
    return (float(ndc[0]), float(ndc[1])), float(ndc[2])
