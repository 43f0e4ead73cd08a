from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from holoviz.multiview import QuiltConfig, rig_views
from holoviz.render import new_framebuffer, quilt_filename, render_quilt, render_view
from holoviz.render.geometry import build_screen_triangles
from holoviz.render.kernels import available_backends, get_kernel
from holoviz.scene import (
    Lighting,
    OrbitCamera,
    Scene,
    SceneNode,
    Shape,
    camera_pose,
    default_camera,
    default_lighting,
)

BLACK = (0.0, 0.0, 0.0)


def scene_with(nodes, camera=None, lighting=None, background=BLACK) -> Scene:
    camera = camera or default_camera()
    lighting = lighting or default_lighting(camera)
    return Scene(id="t", nodes=nodes, camera=camera, lighting=lighting, background=background)


def single_view(camera: OrbitCamera, width: int, height: int):
    (view,) = rig_views(
        camera, QuiltConfig(view_count=1, columns=1, rows=1, tile_width=width, tile_height=height)
    )
    return view


def analytic_sphere_mask(
    camera: OrbitCamera, center, radius: float, width: int, height: int
) -> np.ndarray:
    """Ray-cast silhouette oracle: true where the pixel-center ray hits the
    sphere in front of the eye. Shares no code with the rasterizer."""
    eye, forward, right, up = (np.asarray(v) for v in camera_pose(camera))
    t = math.tan(camera.vertical_fov / 2)
    aspect = width / height
    px = np.arange(width) + 0.5
    py = np.arange(height) + 0.5
    ndc_x = 2.0 * px / width - 1.0
    ndc_y = 1.0 - 2.0 * py / height
    dirs = (
        ndc_x[None, :, None] * (t * aspect) * right
        + ndc_y[:, None, None] * t * up
        + forward
    )
    oc = eye - np.asarray(center)
    a = (dirs * dirs).sum(axis=2)
    b = 2.0 * (dirs @ oc)
    c = oc @ oc - radius * radius
    disc = b * b - 4.0 * a * c
    hit = disc >= 0.0
    sqrt_disc = np.sqrt(np.where(hit, disc, 0.0))
    s_near = (-b - sqrt_disc) / (2.0 * a)
    return hit & (s_near > 0.0)


class TestRenderView:
    def test_empty_scene_is_background(self):
        scene = scene_with([], background=(0.2, 0.4, 0.6))
        fb = render_view(scene, single_view(scene.camera, 32, 32), 32, 32)
        expected = np.array([51, 102, 153, 255], dtype=np.uint8)
        assert (fb.color == expected).all()
        assert (fb.depth == np.inf).all()

    def test_headlight_sphere_center_intensity(self):
        # Light along camera forward: the facing pole shades at
        # min(1, ambient + diffuse) * color.
        camera = default_camera()
        lighting = default_lighting(camera)
        node = SceneNode(Shape.SPHERE, (0.0, 0.0, 0.0), 0.5, (0.8, 0.4, 0.2))
        scene = scene_with([node], camera=camera, lighting=lighting)
        fb = render_view(scene, single_view(camera, 129, 129), 129, 129)
        center = fb.color[64, 64]
        factor = min(1.0, lighting.ambient + lighting.diffuse)
        expected = [int(min(c * factor * 255.0 + 0.5, 255.0)) for c in node.color]
        assert np.abs(center[:3].astype(int) - expected).max() <= 2
        assert center[3] == 255

    def test_sphere_silhouette_vs_analytic(self):
        camera = default_camera()
        node = SceneNode(Shape.SPHERE, (0.1, -0.05, 0.0), 0.4, (1.0, 1.0, 1.0))
        scene = scene_with([node])
        fb = render_view(scene, single_view(camera, 512, 512), 512, 512, 32, 64)
        rendered = fb.depth != np.inf
        analytic = analytic_sphere_mask(camera, node.position, node.radius, 512, 512)
        mismatch = (rendered ^ analytic).sum()
        assert mismatch <= 0.02 * analytic.sum()

    def test_depth_order_independence_bit_exact(self):
        rng = random.Random(2024)
        camera = default_camera()
        _, forward, _, _ = camera_pose(camera)
        shapes = [Shape.SPHERE, Shape.CUBE, Shape.CYLINDER]
        for _ in range(100):
            base = np.array([rng.uniform(-0.6, 0.6) for _ in range(3)])
            r1, r2 = rng.uniform(0.05, 0.3), rng.uniform(0.05, 0.3)
            gap = (r1 + r2) * rng.uniform(1.2, 2.0)
            jitter = np.array([rng.uniform(-0.1, 0.1) for _ in range(3)])
            a = SceneNode(rng.choice(shapes), tuple(base), r1, (1.0, 0.0, 0.0))
            b = SceneNode(
                rng.choice(shapes),
                tuple(base + np.asarray(forward) * gap + jitter),
                r2,
                (0.0, 1.0, 0.0),
            )
            fb_ab = render_view(scene_with([a, b]), single_view(camera, 96, 96), 96, 96, 8, 12)
            fb_ba = render_view(scene_with([b, a]), single_view(camera, 96, 96), 96, 96, 8, 12)
            assert fb_ab.color.tobytes() == fb_ba.color.tobytes()
            assert fb_ab.depth.tobytes() == fb_ba.depth.tobytes()

    def test_occlusion_matches_analytic_ray_oracle(self):
        # Two spheres on the view axis at depths 2 and 4: wherever both
        # analytically overlap and the near sphere rasterizes, the composite
        # must show exactly the near sphere's pixels, either submission order.
        camera = default_camera()
        eye, forward, _, _ = (np.asarray(v) for v in camera_pose(camera))
        near_c = tuple(eye + 2.0 * forward)
        far_c = tuple(eye + 4.0 * forward)
        near = SceneNode(Shape.SPHERE, near_c, 0.3, (1.0, 0.0, 0.0))
        far = SceneNode(Shape.SPHERE, far_c, 0.5, (0.0, 0.0, 1.0))
        view = single_view(camera, 128, 128)
        fb_near = render_view(scene_with([near]), view, 128, 128)
        fb_both = render_view(scene_with([far, near]), view, 128, 128)
        fb_both2 = render_view(scene_with([near, far]), view, 128, 128)
        assert fb_both.color.tobytes() == fb_both2.color.tobytes()
        both_hit = analytic_sphere_mask(camera, near_c, 0.3, 128, 128) & analytic_sphere_mask(
            camera, far_c, 0.5, 128, 128
        )
        disputed = both_hit & (fb_near.depth != np.inf)
        assert disputed.sum() > 50  # the test must actually bite
        assert (fb_both.color[disputed] == fb_near.color[disputed]).all()

    def test_shading_bound(self):
        rng = random.Random(8)
        camera = default_camera()
        for _ in range(10):
            ambient, diffuse = rng.uniform(0, 1), rng.uniform(0, 1)
            direction = np.array([rng.gauss(0, 1) for _ in range(3)])
            direction /= np.linalg.norm(direction)
            lighting = Lighting(ambient=ambient, diffuse=diffuse, direction=tuple(direction))
            color = (rng.random(), rng.random(), rng.random())
            node = SceneNode(Shape.SPHERE, (0, 0, 0), 0.6, color)
            scene = scene_with([node], lighting=lighting)
            fb = render_view(scene, single_view(camera, 96, 96), 96, 96)
            lit = fb.depth != np.inf
            bound = min(1.0, ambient + diffuse)
            for ch in range(3):
                limit = int(min(color[ch] * bound * 255.0 + 0.5, 255.0))
                assert fb.color[:, :, ch][lit].max() <= limit

    def test_gouraud_gradient_across_sphere(self):
        # Side light: intensity must fall off across the silhouette.
        camera = OrbitCamera(azimuth=0.0, elevation=0.0, distance=3.2)
        lighting = Lighting(ambient=0.1, diffuse=0.9, direction=(-1.0, 0.0, 0.0))
        node = SceneNode(Shape.SPHERE, (0.0, 0.0, 0.0), 0.6, (1.0, 1.0, 1.0))
        scene = scene_with([node], camera=camera, lighting=lighting)
        fb = render_view(scene, single_view(camera, 128, 128), 128, 128)
        row = fb.color[64, :, 0].astype(int)
        lit_cols = np.nonzero(fb.depth[64] != np.inf)[0]
        left_mean = row[lit_cols[: len(lit_cols) // 3]].mean()
        right_mean = row[lit_cols[-len(lit_cols) // 3 :]].mean()
        assert right_mean > left_mean + 30


class TestKernels:
    def test_backends_bit_identical(self):
        if "compiled" not in available_backends():
            pytest.skip("compiled kernel not built")
        rng = random.Random(31)
        shapes = [Shape.SPHERE, Shape.CUBE, Shape.CYLINDER]
        camera = default_camera()
        for _ in range(5):
            nodes = [
                SceneNode(
                    rng.choice(shapes),
                    (rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)),
                    rng.uniform(0.02, 0.5),
                    (rng.random(), rng.random(), rng.random()),
                )
                for _ in range(rng.randint(1, 30))
            ]
            scene = scene_with(nodes)
            view = single_view(camera, 111, 97)
            tris = build_screen_triangles(scene, view, 111, 97)
            fb_c = new_framebuffer(111, 97, scene.background)
            fb_p = new_framebuffer(111, 97, scene.background)
            get_kernel("compiled")(tris, fb_c.color, fb_c.depth)
            get_kernel("python")(tris, fb_p.color, fb_p.depth)
            assert fb_c.color.tobytes() == fb_p.color.tobytes()
            assert fb_c.depth.tobytes() == fb_p.depth.tobytes()

    @pytest.mark.parametrize("backend_pick", [0, 1])
    def test_shared_edge_no_double_coverage_no_gaps(self, backend_pick):
        backends = available_backends()
        backend = backends[min(backend_pick, len(backends) - 1)]
        kernel = get_kernel(backend)
        rng = random.Random(77)
        size = 48

        def tri_row(p, q, r):
            return [p[0], p[1], 0.5, q[0], q[1], 0.5, r[0], r[1], 0.5] + [1.0] * 9

        for _ in range(60):
            # Split a triangle at an interior point: the three sub-triangles
            # must tile it exactly (top-left fill rule), sharing three edges.
            p, q, r = ((rng.uniform(2, 46), rng.uniform(2, 46)) for _ in range(3))
            area2 = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
            if abs(area2) < 1.0:
                continue
            if area2 < 0:
                q, r = r, q
            wa = rng.uniform(0.1, 0.8)
            wb = rng.uniform(0.1, 0.9 - wa)
            wc = 1.0 - wa - wb
            m = tuple(wa * p[i] + wb * q[i] + wc * r[i] for i in range(2))
            subs = [tri_row(p, q, m), tri_row(q, r, m), tri_row(r, p, m)]
            masks = []
            for row in subs:
                fb = new_framebuffer(size, size, BLACK)
                kernel(np.array([row]), fb.color, fb.depth)
                masks.append(fb.depth != np.inf)
            assert (masks[0] & masks[1]).sum() == 0
            assert (masks[1] & masks[2]).sum() == 0
            assert (masks[0] & masks[2]).sum() == 0
            fb = new_framebuffer(size, size, BLACK)
            kernel(np.array([tri_row(p, q, r)]), fb.color, fb.depth)
            whole = fb.depth != np.inf
            assert ((masks[0] | masks[1] | masks[2]) == whole).all()

    def test_empty_triangle_list_is_noop(self):
        fb = new_framebuffer(8, 8, BLACK)
        before = fb.color.copy()
        for backend in available_backends():
            get_kernel(backend)(np.empty((0, 18)), fb.color, fb.depth)
        assert (fb.color == before).all()


class TestRenderQuilt:
    def test_single_view_quilt_equals_framebuffer(self, iris_dataset):
        scene = scene_with([SceneNode(Shape.SPHERE, (0, 0, 0), 0.3, (1, 0, 0))])
        config = QuiltConfig(view_count=1, columns=1, rows=1, tile_width=64, tile_height=48)
        quilt = render_quilt(scene, config)
        fb = render_view(scene, rig_views(scene.camera, config)[0], 64, 48)
        assert quilt.pixels.tobytes() == fb.color.tobytes()

    def test_center_tile_matches_base_camera_render(self):
        scene = scene_with(
            [
                SceneNode(Shape.SPHERE, (-0.4, 0.0, 0.2), 0.25, (1, 0, 0)),
                SceneNode(Shape.CUBE, (0.5, 0.1, -0.3), 0.2, (0, 1, 0)),
            ]
        )
        config = QuiltConfig(view_count=9, columns=3, rows=3, tile_width=40, tile_height=50)
        quilt = render_quilt(scene, config)
        views = rig_views(scene.camera, config)
        center = views[4]
        assert center.eye_offset == 0.0
        fb = render_view(scene, center, 40, 50)
        col, row_from_bottom = 4 % 3, 4 // 3
        y0 = (3 - 1 - row_from_bottom) * 50
        x0 = col * 40
        tile = quilt.pixels[y0 : y0 + 50, x0 : x0 + 40]
        assert tile.tobytes() == fb.color.tobytes()

    def test_tile_copy_invariant_every_view(self):
        scene = scene_with([SceneNode(Shape.CYLINDER, (0.2, -0.1, 0.0), 0.3, (0, 0.5, 1))])
        config = QuiltConfig(view_count=6, columns=3, rows=2, tile_width=32, tile_height=24)
        quilt = render_quilt(scene, config)
        views = rig_views(scene.camera, config)
        for view in views:
            fb = render_view(scene, view, 32, 24)
            col = view.view_index % 3
            row_from_bottom = view.view_index // 3
            y0 = (2 - 1 - row_from_bottom) * 24
            x0 = col * 32
            tile = quilt.pixels[y0 : y0 + 24, x0 : x0 + 32]
            assert (tile == fb.color).all()

    def test_unused_cells_are_background(self):
        scene = scene_with(
            [SceneNode(Shape.SPHERE, (0, 0, 0), 0.4, (1, 1, 1))], background=(0.1, 0.2, 0.3)
        )
        config = QuiltConfig(view_count=3, columns=2, rows=2, tile_width=16, tile_height=16)
        quilt = render_quilt(scene, config)
        # View 3 would sit top-right; the cell must stay background.
        cell = quilt.pixels[0:16, 16:32]
        expected = np.array(
            [int(min(c * 255.0 + 0.5, 255.0)) for c in (0.1, 0.2, 0.3)] + [255], dtype=np.uint8
        )
        assert (cell == expected).all()

    def test_concurrent_and_sequential_bit_identical(self):
        scene = scene_with(
            [
                SceneNode(Shape.SPHERE, (0.3, 0.2, -0.1), 0.3, (1, 0, 0)),
                SceneNode(Shape.CUBE, (-0.3, -0.2, 0.4), 0.25, (0, 1, 0)),
            ]
        )
        config = QuiltConfig(view_count=12, columns=4, rows=3, tile_width=48, tile_height=36)
        sequential = render_quilt(scene, config, workers=1)
        concurrent = render_quilt(scene, config, workers=4)
        assert sequential.pixels.tobytes() == concurrent.pixels.tobytes()

    def test_render_views_thread_safe(self):
        # Distinct framebuffers per view: parallel render_view calls agree
        # with serial ones bit for bit.
        scene = scene_with([SceneNode(Shape.SPHERE, (0, 0, 0), 0.4, (1, 0.6, 0.2))])
        config = QuiltConfig(view_count=8, columns=8, rows=1, tile_width=40, tile_height=40)
        views = rig_views(scene.camera, config)
        serial = [render_view(scene, v, 40, 40).color for v in views]
        with ThreadPoolExecutor(max_workers=4) as pool:
            parallel = list(pool.map(lambda v: render_view(scene, v, 40, 40).color, views))
        for s, p in zip(serial, parallel):
            assert s.tobytes() == p.tobytes()

    def test_quilt_filename_convention(self):
        config = QuiltConfig()
        assert quilt_filename("iris", config) == "iris_qs9x5a0.75.png"
        square = QuiltConfig(view_count=4, columns=2, rows=2, tile_width=256, tile_height=256)
        assert quilt_filename("x", square) == "x_qs2x2a1.png"
