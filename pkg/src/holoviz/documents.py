"""JSON codecs for stored documents (datasets and saved visualizations).

Scene documents use the canonical form from holoviz.scene; mapping
documents the canonical form from holoviz.mapping. Stored numeric stats
use null for the undefined min/max/mean of an all-missing column.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .ingest import ColumnKind, ColumnSchema, ColumnStats, Dataset, RawTable
from .mapping import ChannelMapping, mapping_from_json, mapping_to_json
from .scene import MalformedDocumentError, OrbitCamera

__all__ = [
    "camera_from_doc",
    "camera_to_doc",
    "dataset_to_bytes",
    "dataset_from_bytes",
    "dataset_summary",
    "visualization_to_bytes",
    "visualization_from_bytes",
]


def _stat_doc(kind: ColumnKind, stats: ColumnStats) -> dict[str, Any]:
    if kind is ColumnKind.CATEGORICAL:
        return {"categories": stats.categories}
    none_if_nan = lambda v: None if math.isnan(v) else v
    return {
        "min": none_if_nan(stats.min),
        "max": none_if_nan(stats.max),
        "mean": none_if_nan(stats.mean),
    }


def dataset_summary(dataset: Dataset) -> dict[str, Any]:
    """The id/row_count/schema/stats block shared by API responses and the
    stored dataset document."""
    return {
        "id": dataset.id,
        "row_count": len(dataset.table.rows),
        "schema": [
            {"name": s.name, "kind": s.kind.value, "missing_count": s.missing_count}
            for s in dataset.schemas
        ],
        "stats": [
            _stat_doc(s.kind, st) for s, st in zip(dataset.schemas, dataset.stats)
        ],
    }


def dataset_to_bytes(dataset: Dataset) -> bytes:
    doc = dataset_summary(dataset)
    doc["headers"] = dataset.table.headers
    doc["rows"] = dataset.table.rows
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")


def dataset_from_bytes(data: bytes) -> Dataset:
    doc = json.loads(data)
    schemas = [
        ColumnSchema(name=s["name"], kind=ColumnKind(s["kind"]), missing_count=s["missing_count"])
        for s in doc["schema"]
    ]
    stats = []
    for schema, st in zip(schemas, doc["stats"]):
        if schema.kind is ColumnKind.CATEGORICAL:
            stats.append(ColumnStats(categories=list(st["categories"])))
        else:
            as_nan = lambda v: math.nan if v is None else float(v)
            stats.append(
                ColumnStats(min=as_nan(st["min"]), max=as_nan(st["max"]), mean=as_nan(st["mean"]))
            )
    table = RawTable(headers=list(doc["headers"]), rows=[list(r) for r in doc["rows"]])
    return Dataset(id=doc["id"], table=table, schemas=schemas, stats=stats)


def camera_to_doc(camera: OrbitCamera) -> dict[str, Any]:
    return {
        "target": list(camera.target),
        "azimuth": camera.azimuth,
        "elevation": camera.elevation,
        "distance": camera.distance,
        "vertical_fov": camera.vertical_fov,
        "near": camera.near,
        "far": camera.far,
    }


def camera_from_doc(doc: Any) -> OrbitCamera:
    if not isinstance(doc, dict):
        raise MalformedDocumentError("$.camera", "expected an object")
    try:
        return OrbitCamera(
            target=tuple(float(v) for v in doc["target"]),
            azimuth=float(doc["azimuth"]),
            elevation=float(doc["elevation"]),
            distance=float(doc["distance"]),
            vertical_fov=float(doc["vertical_fov"]),
            near=float(doc["near"]),
            far=float(doc["far"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocumentError("$.camera", str(exc)) from None


def visualization_to_bytes(
    viz_id: str,
    dataset_id: str,
    mapping: ChannelMapping,
    camera: OrbitCamera,
    created_at: str,
    name: str,
) -> bytes:
    doc = {
        "id": viz_id,
        "dataset_id": dataset_id,
        "mapping": mapping_to_json(mapping),
        "camera": camera_to_doc(camera),
        "created_at": created_at,
        "name": name,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")


def visualization_from_bytes(data: bytes) -> dict[str, Any]:
    """Decoded visualization document with typed mapping/camera attached."""
    doc = json.loads(data)
    for key in ("id", "dataset_id", "mapping", "camera", "created_at", "name"):
        if key not in doc:
            raise MalformedDocumentError(f"$.{key}", "missing")
    doc["mapping_obj"] = mapping_from_json(doc["mapping"])
    doc["camera_obj"] = camera_from_doc(doc["camera"])
    return doc
