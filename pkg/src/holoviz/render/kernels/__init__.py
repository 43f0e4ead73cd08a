"""Raster kernel backends.

The compiled Cython kernel is preferred when its extension built; the
numpy kernel is the always-available fallback. Both implement the same
``rasterize(tris, color, depth)`` contract and produce bit-identical
buffers. Set HOLOVIZ_KERNEL=python or =compiled to force a choice.
"""

from __future__ import annotations

import os

from . import pure

try:
    from . import _rasterize as _compiled
except ImportError:
    _compiled = None

__all__ = ["ACTIVE_BACKEND", "available_backends", "get_kernel", "rasterize"]


def available_backends() -> list[str]:
    names = ["python"]
    if _compiled is not None:
        names.insert(0, "compiled")
    return names


def get_kernel(backend: str):
    """Rasterize callable for an explicit backend name."""
    if backend == "python":
        return pure.rasterize
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled raster kernel is not built")
        return _compiled.rasterize
    raise ValueError(f"unknown kernel backend {backend!r}")


def _select() -> str:
    forced = os.environ.get("HOLOVIZ_KERNEL")
    if forced:
        get_kernel(forced)  # validates
        return forced
    return "compiled" if _compiled is not None else "python"


ACTIVE_BACKEND = _select()
rasterize = get_kernel(ACTIVE_BACKEND)
