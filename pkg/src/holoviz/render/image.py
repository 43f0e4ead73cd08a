"""Image encoding: PNG (primary) and binary PPM (fallback).

Hand-rolled PNG keeps the byte stream deterministic: fixed zlib level,
filter type 0 on every scanline, no ancillary chunks.
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

__all__ = ["encode_image", "encode_png", "encode_ppm"]

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_ZLIB_LEVEL = 6


def _chunk(tag: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + tag
        + payload
        + struct.pack(">I", zlib.crc32(tag + payload))
    )


def _as_rgba(pixels: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(pixels)
    if arr.dtype != np.uint8 or arr.ndim != 3 or arr.shape[2] != 4 or arr.size == 0:
        raise ValueError("expected a non-empty (H, W, 4) uint8 pixel grid")
    return arr


def encode_png(pixels: np.ndarray) -> bytes:
    """RGBA8 PNG bytes; deterministic for a fixed pixel grid."""
    arr = _as_rgba(pixels)
    height, width = arr.shape[:2]
    scanlines = np.empty((height, width * 4 + 1), dtype=np.uint8)
    scanlines[:, 0] = 0  # filter: none
    scanlines[:, 1:] = arr.reshape(height, width * 4)
    ihdr = struct.pack(">IIBBBBB", width, height, 8, 6, 0, 0, 0)
    idat = zlib.compress(scanlines.tobytes(), _ZLIB_LEVEL)
    return b"".join(
        [_PNG_SIGNATURE, _chunk(b"IHDR", ihdr), _chunk(b"IDAT", idat), _chunk(b"IEND", b"")]
    )


def encode_ppm(pixels: np.ndarray) -> bytes:
    """Binary P6 PPM; the alpha channel is dropped."""
    arr = _as_rgba(pixels)
    height, width = arr.shape[:2]
    header = f"P6\n{width} {height}\n255\n".encode("ascii")
    return header + arr[:, :, :3].tobytes()


def encode_image(pixels: np.ndarray, fmt: str = "png") -> bytes:
    if fmt == "png":
        return encode_png(pixels)
    if fmt == "ppm":
        return encode_ppm(pixels)
    raise ValueError(f"unknown image format {fmt!r}")
