"""Vectorized numpy raster kernel (fallback when the C extension is absent).

Expands triangles into per-pixel fragment lists and resolves the z-buffer
with a stable lexsort, which reproduces the sequential kernel's semantics
exactly: nearest fragment wins, ties go to the earliest-submitted triangle.
Every arithmetic expression mirrors the compiled kernel term for term so
both backends produce bit-identical framebuffers.
"""

from __future__ import annotations

import numpy as np

__all__ = ["rasterize"]

# Fragment budget per resolve batch; bounds peak temporary memory.
_FRAGMENT_BATCH = 1 << 22


def rasterize(tris: np.ndarray, color: np.ndarray, depth: np.ndarray) -> None:
    """Rasterize screen-space triangles into the given buffers, in place.

    tris: (T, 18) float64 from the geometry stage (positive-area winding).
    color: (H, W, 4) uint8. depth: (H, W) float64, +inf where unwritten.
    """
    if len(tris) == 0:
        return
    height, width = depth.shape

    xs = tris[:, 0:9:3]
    ys = tris[:, 1:9:3]
    xlo = np.maximum(np.ceil(xs.min(axis=1) - 0.5), 0.0)
    xhi = np.minimum(np.floor(xs.max(axis=1) - 0.5), width - 1.0)
    ylo = np.maximum(np.ceil(ys.min(axis=1) - 0.5), 0.0)
    yhi = np.minimum(np.floor(ys.max(axis=1) - 0.5), height - 1.0)
    keep = (xhi >= xlo) & (yhi >= ylo)
    if not keep.any():
        return
    tris = tris[keep]
    xlo_i = xlo[keep].astype(np.int64)
    ylo_i = ylo[keep].astype(np.int64)
    bbox_w = (xhi[keep] - xlo[keep]).astype(np.int64) + 1
    bbox_h = (yhi[keep] - ylo[keep]).astype(np.int64) + 1
    counts = bbox_w * bbox_h
    starts = np.zeros(len(counts) + 1, dtype=np.int64)
    np.cumsum(counts, out=starts[1:])

    color_flat = color.reshape(-1, 4)
    depth_flat = depth.reshape(-1)

    t0 = 0
    total = len(tris)
    while t0 < total:
        # Advance while the cumulative fragment count stays under budget;
        # always take at least one triangle.
        t1 = int(np.searchsorted(starts, starts[t0] + _FRAGMENT_BATCH, side="right")) - 1
        t1 = min(max(t1, t0 + 1), total)
        _rasterize_batch(
            tris[t0:t1],
            xlo_i[t0:t1],
            ylo_i[t0:t1],
            bbox_w[t0:t1],
            counts[t0:t1],
            starts[t0:t1] - starts[t0],
            width,
            color_flat,
            depth_flat,
        )
        t0 = t1


def _rasterize_batch(
    tris: np.ndarray,
    xlo: np.ndarray,
    ylo: np.ndarray,
    bbox_w: np.ndarray,
    counts: np.ndarray,
    starts: np.ndarray,
    width: int,
    color_flat: np.ndarray,
    depth_flat: np.ndarray,
) -> None:
    n_frags = int(starts[-1] + counts[-1])
    tri_of = np.repeat(np.arange(len(tris), dtype=np.int64), counts)
    frag = np.arange(n_frags, dtype=np.int64) - starts[tri_of]
    w_of = bbox_w[tri_of]
    px = xlo[tri_of] + frag % w_of
    py = ylo[tri_of] + frag // w_of
    sx = px + 0.5
    sy = py + 0.5

    cols = tris[:, :9][tri_of]
    x0, y0, z0 = cols[:, 0], cols[:, 1], cols[:, 2]
    x1, y1, z1 = cols[:, 3], cols[:, 4], cols[:, 5]
    x2, y2, z2 = cols[:, 6], cols[:, 7], cols[:, 8]

    w0 = (x2 - x1) * (sy - y1) - (y2 - y1) * (sx - x1)
    w1 = (x0 - x2) * (sy - y2) - (y0 - y2) * (sx - x2)
    w2 = (x1 - x0) * (sy - y0) - (y1 - y0) * (sx - x0)

    # Top-left fill rule: boundary pixels belong to top (dy == 0, dx > 0)
    # and left (dy < 0) edges only, in y-down screen coordinates.
    def _accepts(ax: np.ndarray, ay: np.ndarray, bx: np.ndarray, by: np.ndarray) -> np.ndarray:
        dx = bx - ax
        dy = by - ay
        return ((dy == 0.0) & (dx > 0.0)) | (dy < 0.0)

    inside = (
        ((w0 > 0.0) | ((w0 == 0.0) & _accepts(x1, y1, x2, y2)))
        & ((w1 > 0.0) | ((w1 == 0.0) & _accepts(x2, y2, x0, y0)))
        & ((w2 > 0.0) | ((w2 == 0.0) & _accepts(x0, y0, x1, y1)))
    )
    frag_idx = np.nonzero(inside)[0]
    if not len(frag_idx):
        return

    area2 = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0)
    b0 = w0[frag_idx] / area2[frag_idx]
    b1 = w1[frag_idx] / area2[frag_idx]
    b2 = w2[frag_idx] / area2[frag_idx]
    z = b0 * z0[frag_idx] + b1 * z1[frag_idx] + b2 * z2[frag_idx]
    pix = py[frag_idx] * width + px[frag_idx]

    # Stable sort by (pixel, depth): the first fragment of each pixel run is
    # the nearest, earliest-submitted one -- sequential z-buffer semantics.
    order = np.lexsort((z, pix))
    pix_sorted = pix[order]
    first = np.empty(len(order), dtype=bool)
    first[0] = True
    first[1:] = pix_sorted[1:] != pix_sorted[:-1]
    winners = order[first]
    win_pix = pix[winners]
    win_z = z[winners]
    nearer = win_z < depth_flat[win_pix]
    if not nearer.any():
        return
    winners = winners[nearer]
    win_pix = win_pix[nearer]
    win_z = win_z[nearer]

    tri_w = tri_of[frag_idx[winners]]
    b0w, b1w, b2w = b0[winners], b1[winners], b2[winners]
    shades = tris[:, 9:][tri_w]
    rgb = np.empty((len(winners), 3))
    for c in range(3):
        rgb[:, c] = b0w * shades[:, c] + b1w * shades[:, 3 + c] + b2w * shades[:, 6 + c]
    encoded = np.minimum(rgb * 255.0 + 0.5, 255.0).astype(np.uint8)

    depth_flat[win_pix] = win_z
    color_flat[win_pix, :3] = encoded
    color_flat[win_pix, 3] = 255
