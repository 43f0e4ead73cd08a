"""Benchmark the compiled raster kernel against the numpy fallback.

Times the bare kernels on pre-packed screen triangles, then the end-to-end
quilt path, and verifies both backends stay bit-identical while doing so.

    python benchmarks/bench_raster.py [--nodes N] [--views V] [--tile WxH]
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from holoviz.multiview import QuiltConfig, rig_views
from holoviz.render import new_framebuffer, render_quilt
from holoviz.render.geometry import assemble_scene, project_to_screen
from holoviz.render.kernels import available_backends, get_kernel
from holoviz.scene import Scene, SceneNode, Shape, default_camera, default_lighting


def synthetic_scene(node_count: int, seed: int = 7) -> Scene:
    rng = random.Random(seed)
    shapes = [Shape.SPHERE, Shape.CUBE, Shape.CYLINDER]
    camera = default_camera()
    nodes = [
        SceneNode(
            rng.choice(shapes),
            (rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)),
            rng.uniform(0.02, 0.09),
            (rng.random(), rng.random(), rng.random()),
        )
        for _ in range(node_count)
    ]
    return Scene(id="bench", nodes=nodes, camera=camera, lighting=default_lighting(camera))


def bench_kernel(scene: Scene, config: QuiltConfig, repeats: int) -> dict[str, float]:
    views = rig_views(scene.camera, config)
    geometry = assemble_scene(scene)
    packed = [
        project_to_screen(geometry, v, config.tile_width, config.tile_height) for v in views
    ]
    tri_total = sum(len(p) for p in packed)
    print(f"kernel workload: {len(views)} views, {tri_total} packed triangles")
    times: dict[str, float] = {}
    outputs: dict[str, bytes] = {}
    for backend in available_backends():
        kernel = get_kernel(backend)
        best = float("inf")
        for _ in range(repeats):
            buffers = [
                new_framebuffer(config.tile_width, config.tile_height, scene.background)
                for _ in views
            ]
            start = time.perf_counter()
            for tris, fb in zip(packed, buffers):
                kernel(tris, fb.color, fb.depth)
            best = min(best, time.perf_counter() - start)
        times[backend] = best
        outputs[backend] = b"".join(fb.color.tobytes() for fb in buffers)
    if len(outputs) == 2:
        assert outputs["compiled"] == outputs["python"], "backends diverged"
    return times


def bench_quilt(scene: Scene, config: QuiltConfig) -> dict[str, float]:
    import holoviz.render.kernels as kernels_mod

    times: dict[str, float] = {}
    hashes = set()
    original = kernels_mod.rasterize
    try:
        for backend in available_backends():
            kernels_mod.rasterize = get_kernel(backend)
            start = time.perf_counter()
            quilt = render_quilt(scene, config)
            times[backend] = time.perf_counter() - start
            hashes.add(hash(quilt.pixels.tobytes()))
    finally:
        kernels_mod.rasterize = original
    assert len(hashes) == 1, "backends diverged"
    return times


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nodes", type=int, default=150)
    parser.add_argument("--views", type=int, default=45)
    parser.add_argument("--tile", default="384x512")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    tile_w, tile_h = (int(v) for v in args.tile.split("x"))
    columns = min(args.views, 9)
    rows = (args.views + columns - 1) // columns
    config = QuiltConfig(
        view_count=args.views, columns=columns, rows=rows, tile_width=tile_w, tile_height=tile_h
    )
    scene = synthetic_scene(args.nodes)
    backends = available_backends()
    print(f"backends: {', '.join(backends)}")

    kernel_times = bench_kernel(scene, config, args.repeats)
    print("\nraster kernel only (geometry pre-packed, best of "
          f"{args.repeats}):")
    for backend, seconds in kernel_times.items():
        print(f"  {backend:>8}: {seconds * 1000:8.1f} ms")
    if len(kernel_times) == 2:
        print(f"  speedup : {kernel_times['python'] / kernel_times['compiled']:8.2f}x")

    quilt_times = bench_quilt(scene, config)
    print("\nend-to-end quilt (geometry + kernel + assembly):")
    for backend, seconds in quilt_times.items():
        print(f"  {backend:>8}: {seconds * 1000:8.1f} ms")
    if len(quilt_times) == 2:
        print(f"  speedup : {quilt_times['python'] / quilt_times['compiled']:8.2f}x")


if __name__ == "__main__":
    main()
