"""Headless software renderer: per-view rasterization and quilt assembly."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..multiview import QuiltConfig, ViewCamera, rig_views
from ..scene import Color, Scene
from . import kernels
from .geometry import assemble_scene, build_screen_triangles, project_to_screen
from .image import encode_image, encode_png, encode_ppm
from .meshes import InvalidSegmentCountError, TriangleMesh, tessellate

__all__ = [
    "Framebuffer",
    "InvalidSegmentCountError",
    "QuiltImage",
    "TriangleMesh",
    "encode_image",
    "encode_png",
    "encode_ppm",
    "new_framebuffer",
    "quilt_filename",
    "render_quilt",
    "render_view",
    "tessellate",
]


@dataclass(frozen=True, eq=False)
class Framebuffer:
    width: int
    height: int
    color: np.ndarray  # (H, W, 4) uint8
    depth: np.ndarray  # (H, W) float64, +inf sentinel


@dataclass(frozen=True, eq=False)
class QuiltImage:
    config: QuiltConfig
    pixels: np.ndarray  # (rows*tile_h, columns*tile_w, 4) uint8


def _color_u8(color: Color) -> np.ndarray:
    channels = [min(c * 255.0 + 0.5, 255.0) for c in color] + [255.0]
    return np.asarray(channels, dtype=np.uint8)


def new_framebuffer(width: int, height: int, background: Color) -> Framebuffer:
    color = np.empty((height, width, 4), dtype=np.uint8)
    color[:] = _color_u8(background)
    depth = np.full((height, width), np.inf)
    return Framebuffer(width=width, height=height, color=color, depth=depth)


def render_view(
    scene: Scene,
    view: ViewCamera,
    width: int,
    height: int,
    lat_segments: int = 16,
    radial_segments: int = 32,
) -> Framebuffer:
    """Rasterize one viewpoint: clear, transform, z-buffered triangle fill."""
    fb = new_framebuffer(width, height, scene.background)
    tris = build_screen_triangles(scene, view, width, height, lat_segments, radial_segments)
    kernels.rasterize(tris, fb.color, fb.depth)
    return fb


def render_quilt(scene: Scene, config: QuiltConfig, workers: int = 1) -> QuiltImage:
    """Render every rig view at tile resolution and assemble the quilt.

    Tiles fill left-to-right, bottom-to-top, view 0 at the bottom-left;
    grid cells past view_count stay background. Views render sequentially
    or on a thread pool; the result is bit-identical either way because
    each view owns its framebuffer and assembly is a plain copy.
    """
    views = rig_views(scene.camera, config)
    tile_w, tile_h = config.tile_width, config.tile_height
    pixels = np.empty((config.rows * tile_h, config.columns * tile_w, 4), dtype=np.uint8)
    pixels[:] = _color_u8(scene.background)
    geometry = assemble_scene(scene)  # node tessellation/shading is view-independent

    def _render(view: ViewCamera) -> np.ndarray:
        fb = new_framebuffer(tile_w, tile_h, scene.background)
        tris = project_to_screen(geometry, view, tile_w, tile_h)
        kernels.rasterize(tris, fb.color, fb.depth)
        return fb.color

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tiles = list(pool.map(_render, views))
    else:
        tiles = [_render(view) for view in views]

    for view, tile in zip(views, tiles):
        col = view.view_index % config.columns
        row_from_bottom = view.view_index // config.columns
        y0 = (config.rows - 1 - row_from_bottom) * tile_h
        x0 = col * tile_w
        pixels[y0 : y0 + tile_h, x0 : x0 + tile_w] = tile
    return QuiltImage(config=config, pixels=pixels)


def quilt_filename(name: str, config: QuiltConfig) -> str:
    """Conventional quilt name encoding the tile layout and tile aspect."""
    aspect = config.tile_width / config.tile_height
    return f"{name}_qs{config.columns}x{config.rows}a{aspect:g}.png"
