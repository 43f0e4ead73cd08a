"""Regenerate the golden quilt fixtures from the Iris test data.

Writes tests/fixtures/iris_quilt_small.png (45 views, 9x5 grid, 96x128
tiles) and tests/fixtures/iris_quilt_default.sha256 (hash of the
default-config 384x512 quilt PNG, too large to commit). Audits the small
quilt structurally before freezing: every tile rendered, all tiles
distinct, parallax smooth between neighbors, all three Iris colors present.
"""

from __future__ import annotations

import hashlib
import sys
from pathlib import Path

import numpy as np

from holoviz.ingest import ingest_csv
from holoviz.mapping import apply_mapping, default_mapping
from holoviz.multiview import QuiltConfig
from holoviz.render import encode_png, render_quilt
from holoviz.scene import Scene, default_camera, default_lighting

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

SMALL = QuiltConfig(view_count=45, columns=9, rows=5, tile_width=96, tile_height=128)


def iris_scene() -> Scene:
    data = (FIXTURES / "iris.csv").read_bytes()
    dataset = ingest_csv(data, dataset_id="iris")
    nodes, report = apply_mapping(dataset, default_mapping(dataset))
    assert report.rows_dropped == 0
    camera = default_camera()
    return Scene(
        id="iris-golden", nodes=nodes, camera=camera, lighting=default_lighting(camera)
    )


def tiles_of(pixels: np.ndarray, config: QuiltConfig) -> list[np.ndarray]:
    out = []
    for i in range(config.view_count):
        col = i % config.columns
        row_from_bottom = i // config.columns
        y0 = (config.rows - 1 - row_from_bottom) * config.tile_height
        x0 = col * config.tile_width
        out.append(pixels[y0 : y0 + config.tile_height, x0 : x0 + config.tile_width])
    return out


def audit(pixels: np.ndarray, config: QuiltConfig, background: np.ndarray) -> None:
    tiles = tiles_of(pixels, config)
    fingerprints = set()
    prev = None
    for i, tile in enumerate(tiles):
        non_bg = (tile[:, :, :3] != background[:3]).any(axis=2)
        assert non_bg.sum() > 200, f"tile {i} is nearly empty"
        fingerprints.add(hashlib.sha256(tile.tobytes()).hexdigest())
        if prev is not None:
            changed = (tile != prev).any(axis=2).mean()
            assert 0 < changed < 0.25, f"tiles {i - 1}->{i} changed {changed:.1%}"
        prev = tile
    assert len(fingerprints) == config.view_count, "views are not all distinct"
    # The three Iris classes must land as red-, yellow-, and blue-family
    # pixels somewhere in the quilt.
    rgb = pixels[:, :, :3].astype(int)
    not_bg = (pixels[:, :, :3] != background[:3]).any(axis=2)
    r, g, b = rgb[:, :, 0], rgb[:, :, 1], rgb[:, :, 2]
    red_family = not_bg & (r > 60) & (g * 2 < r) & (b * 2 < r)
    yellow_family = not_bg & (r > 60) & (abs(r - g) < 30) & (b * 2 < r)
    blue_family = not_bg & (b > 60) & (r * 2 < b) & (g * 2 < b)
    for name, mask in (("red", red_family), ("yellow", yellow_family), ("blue", blue_family)):
        assert mask.sum() > 100, f"no {name} points visible"
    print(
        f"audit ok: 45 distinct tiles; color pixel counts "
        f"r={red_family.sum()} y={yellow_family.sum()} b={blue_family.sum()}"
    )


def main() -> int:
    scene = iris_scene()
    background = np.array(
        [int(min(c * 255.0 + 0.5, 255.0)) for c in scene.background], dtype=np.uint8
    )
    small = render_quilt(scene, SMALL)
    audit(small.pixels, SMALL, background)
    small_png = encode_png(small.pixels)
    (FIXTURES / "iris_quilt_small.png").write_bytes(small_png)
    print(f"wrote iris_quilt_small.png ({len(small_png)} bytes)")

    default = render_quilt(scene, QuiltConfig())
    audit(default.pixels, QuiltConfig(), background)
    digest = hashlib.sha256(encode_png(default.pixels)).hexdigest()
    (FIXTURES / "iris_quilt_default.sha256").write_text(digest + "\n")
    print(f"wrote iris_quilt_default.sha256 ({digest})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
