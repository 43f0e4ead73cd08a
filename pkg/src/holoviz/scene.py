"""Renderable scene model and its canonical JSON serialization.

The JSON form (sorted keys, compact separators, shortest round-trip floats)
is the wire contract between the service and the UI, versioned with a
top-level ``schema_version``.
"""

from __future__ import annotations

import json
import math
import secrets
from dataclasses import dataclass
from enum import Enum
from typing import Any

__all__ = [
    "Color",
    "GimbalDegenerateError",
    "InvariantViolationError",
    "Lighting",
    "MalformedDocumentError",
    "OrbitCamera",
    "Scene",
    "SceneNode",
    "Shape",
    "Vec3",
    "camera_pose",
    "default_camera",
    "default_lighting",
    "deserialize_scene",
    "serialize_scene",
    "validate_scene",
]

SCHEMA_VERSION = 1

Vec3 = tuple[float, float, float]
Color = tuple[float, float, float]

WORLD_UP: Vec3 = (0.0, 1.0, 0.0)


class Shape(str, Enum):
    SPHERE = "Sphere"
    CUBE = "Cube"
    CYLINDER = "Cylinder"


class MalformedDocumentError(ValueError):
    """Document is not structurally a scene (bad JSON, types, or keys)."""

    def __init__(self, path: str, reason: str = "") -> None:
        detail = f": {reason}" if reason else ""
        super().__init__(f"malformed document at {path}{detail}")
        self.path = path


class InvariantViolationError(ValueError):
    """Structurally valid document with an out-of-range value."""

    def __init__(self, field_path: str, reason: str) -> None:
        super().__init__(f"{field_path}: {reason}")
        self.field = field_path
        self.reason = reason


class GimbalDegenerateError(ValueError):
    def __init__(self, elevation: float) -> None:
        super().__init__(f"camera elevation {elevation!r} collapses the view basis")


@dataclass(frozen=True)
class SceneNode:
    """One plotted mark: a shape at a position with a size and a color.

    ``radius`` is the sphere radius, the cube half-extent, or the cylinder
    radius (cylinder height is twice the radius).
    """

    shape: Shape
    position: Vec3
    radius: float
    color: Color


@dataclass(frozen=True)
class OrbitCamera:
    target: Vec3 = (0.0, 0.0, 0.0)
    azimuth: float = 0.0
    elevation: float = 0.0
    distance: float = 3.2
    vertical_fov: float = math.radians(50.0)
    near: float = 0.1
    far: float = 100.0


@dataclass(frozen=True)
class Lighting:
    ambient: float = 0.2
    diffuse: float = 0.8
    direction: Vec3 = (0.0, 0.0, -1.0)


@dataclass(frozen=True)
class Scene:
    id: str
    nodes: list[SceneNode]
    camera: OrbitCamera
    lighting: Lighting
    background: Color = (0.05, 0.05, 0.08)


def default_camera() -> OrbitCamera:
    """Whole-unit-cube framing: 30°/20° orbit at distance 3.2, 50° fov."""
    return OrbitCamera(
        target=(0.0, 0.0, 0.0),
        azimuth=math.radians(30.0),
        elevation=math.radians(20.0),
        distance=3.2,
        vertical_fov=math.radians(50.0),
        near=0.1,
        far=100.0,
    )


def default_lighting(camera: OrbitCamera) -> Lighting:
    """Headlight setup: light travels along the camera forward axis."""
    _, forward, _, _ = camera_pose(camera)
    return Lighting(ambient=0.2, diffuse=0.8, direction=forward)


def _norm(v: Vec3) -> float:
    return math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


def _normalized(v: Vec3) -> Vec3:
    n = _norm(v)
    return (v[0] / n, v[1] / n, v[2] / n)


def _cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def camera_pose(camera: OrbitCamera) -> tuple[Vec3, Vec3, Vec3, Vec3]:
    """Resolve an orbit camera into (eye, forward, right, up).

    World up is +Y; the basis is right-handed and orthonormal. Raises
    GimbalDegenerateError when the elevation reaches ±90° and the forward
    axis collides with world up.
    """
    if abs(camera.elevation) >= math.pi / 2:
        raise GimbalDegenerateError(camera.elevation)
    a, e = camera.azimuth, camera.elevation
    offset = (
        math.cos(e) * math.sin(a),
        math.sin(e),
        math.cos(e) * math.cos(a),
    )
    eye = (
        camera.target[0] + camera.distance * offset[0],
        camera.target[1] + camera.distance * offset[1],
        camera.target[2] + camera.distance * offset[2],
    )
    forward = _normalized(
        (camera.target[0] - eye[0], camera.target[1] - eye[1], camera.target[2] - eye[2])
    )
    right = _normalized(_cross(forward, WORLD_UP))
    up = _cross(right, forward)
    return eye, forward, right, up


def _require_finite(value: float, path: str) -> None:
    if not math.isfinite(value):
        raise InvariantViolationError(path, "must be finite")


def validate_scene(scene: Scene) -> None:
    """Raise InvariantViolationError on the first violated scene invariant."""
    for i, node in enumerate(scene.nodes):
        prefix = f"nodes[{i}]"
        if not (node.radius > 0):
            raise InvariantViolationError(f"{prefix}.radius", "must be > 0")
        for axis, v in zip("xyz", node.position):
            _require_finite(v, f"{prefix}.position.{axis}")
        for j, c in enumerate(node.color):
            if not (0.0 <= c <= 1.0):
                raise InvariantViolationError(f"{prefix}.color[{j}]", "must be in [0, 1]")
    cam = scene.camera
    for axis, v in zip("xyz", cam.target):
        _require_finite(v, f"camera.target.{axis}")
    _require_finite(cam.azimuth, "camera.azimuth")
    if not (-math.pi / 2 < cam.elevation < math.pi / 2):
        raise InvariantViolationError("camera.elevation", "must be in (-pi/2, pi/2)")
    if not (cam.distance > 0):
        raise InvariantViolationError("camera.distance", "must be > 0")
    if not (0 < cam.vertical_fov < math.pi):
        raise InvariantViolationError("camera.vertical_fov", "must be in (0, pi)")
    if not (cam.near > 0):
        raise InvariantViolationError("camera.near", "must be > 0")
    if not (cam.far > cam.near):
        raise InvariantViolationError("camera.far", "must exceed near")
    light = scene.lighting
    if not (0.0 <= light.ambient <= 1.0):
        raise InvariantViolationError("lighting.ambient", "must be in [0, 1]")
    if not (0.0 <= light.diffuse <= 1.0):
        raise InvariantViolationError("lighting.diffuse", "must be in [0, 1]")
    if abs(_norm(light.direction) - 1.0) > 1e-9:
        raise InvariantViolationError("lighting.direction", "must be a unit vector")
    for j, c in enumerate(scene.background):
        if not (0.0 <= c <= 1.0):
            raise InvariantViolationError(f"background[{j}]", "must be in [0, 1]")


def _scene_document(scene: Scene) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "id": scene.id,
        "nodes": [
            {
                "shape": node.shape.value,
                "position": list(node.position),
                "radius": node.radius,
                "color": list(node.color),
            }
            for node in scene.nodes
        ],
        "camera": {
            "target": list(scene.camera.target),
            "azimuth": scene.camera.azimuth,
            "elevation": scene.camera.elevation,
            "distance": scene.camera.distance,
            "vertical_fov": scene.camera.vertical_fov,
            "near": scene.camera.near,
            "far": scene.camera.far,
        },
        "lighting": {
            "ambient": scene.lighting.ambient,
            "diffuse": scene.lighting.diffuse,
            "direction": list(scene.lighting.direction),
        },
        "background": list(scene.background),
    }


def serialize_scene(scene: Scene) -> bytes:
    """Canonical JSON bytes: sorted keys, compact separators, floats in
    shortest round-trip form. Deterministic for equal scenes."""
    doc = _scene_document(scene)
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")


def _as_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedDocumentError(path, "expected a number")
    return float(value)


def _as_vec3(value: Any, path: str) -> Vec3:
    if not isinstance(value, list) or len(value) != 3:
        raise MalformedDocumentError(path, "expected a 3-element array")
    return (
        _as_number(value[0], f"{path}[0]"),
        _as_number(value[1], f"{path}[1]"),
        _as_number(value[2], f"{path}[2]"),
    )


def _as_object(value: Any, path: str, keys: set[str]) -> dict[str, Any]:
    if not isinstance(value, dict):
        raise MalformedDocumentError(path, "expected an object")
    missing = keys - value.keys()
    if missing:
        raise MalformedDocumentError(path, f"missing key {sorted(missing)[0]!r}")
    return value


def deserialize_scene(data: bytes) -> Scene:
    """Parse canonical scene JSON; validates every scene invariant."""
    try:
        doc = json.loads(data)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedDocumentError("$", str(exc)) from None
    root = _as_object(
        doc, "$", {"schema_version", "id", "nodes", "camera", "lighting", "background"}
    )
    if root["schema_version"] != SCHEMA_VERSION:
        raise MalformedDocumentError("$.schema_version", f"expected {SCHEMA_VERSION}")
    if not isinstance(root["id"], str):
        raise MalformedDocumentError("$.id", "expected a string")
    if not isinstance(root["nodes"], list):
        raise MalformedDocumentError("$.nodes", "expected an array")
    nodes: list[SceneNode] = []
    for i, raw in enumerate(root["nodes"]):
        path = f"$.nodes[{i}]"
        obj = _as_object(raw, path, {"shape", "position", "radius", "color"})
        try:
            shape = Shape(obj["shape"])
        except ValueError:
            raise MalformedDocumentError(f"{path}.shape", f"unknown shape {obj['shape']!r}") from None
        nodes.append(
            SceneNode(
                shape=shape,
                position=_as_vec3(obj["position"], f"{path}.position"),
                radius=_as_number(obj["radius"], f"{path}.radius"),
                color=_as_vec3(obj["color"], f"{path}.color"),
            )
        )
    cam_obj = _as_object(
        root["camera"],
        "$.camera",
        {"target", "azimuth", "elevation", "distance", "vertical_fov", "near", "far"},
    )
    camera = OrbitCamera(
        target=_as_vec3(cam_obj["target"], "$.camera.target"),
        azimuth=_as_number(cam_obj["azimuth"], "$.camera.azimuth"),
        elevation=_as_number(cam_obj["elevation"], "$.camera.elevation"),
        distance=_as_number(cam_obj["distance"], "$.camera.distance"),
        vertical_fov=_as_number(cam_obj["vertical_fov"], "$.camera.vertical_fov"),
        near=_as_number(cam_obj["near"], "$.camera.near"),
        far=_as_number(cam_obj["far"], "$.camera.far"),
    )
    light_obj = _as_object(root["lighting"], "$.lighting", {"ambient", "diffuse", "direction"})
    lighting = Lighting(
        ambient=_as_number(light_obj["ambient"], "$.lighting.ambient"),
        diffuse=_as_number(light_obj["diffuse"], "$.lighting.diffuse"),
        direction=_as_vec3(light_obj["direction"], "$.lighting.direction"),
    )
    scene = Scene(
        id=root["id"],
        nodes=nodes,
        camera=camera,
        lighting=lighting,
        background=_as_vec3(root["background"], "$.background"),
    )
    validate_scene(scene)
    return scene


def new_scene_id() -> str:
    return secrets.token_hex(16)
