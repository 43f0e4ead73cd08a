"""HTTP API tying the pipeline together.

Resources live in token namespaces: any bearer token owns an isolated
partition, created on its first write. Reads with a token that has never
written are rejected as unknown (401). Single-user mode skips auth and
uses one fixed namespace; the CLI shares that layout.
"""

from __future__ import annotations

import math
import os
import threading
from datetime import datetime, timezone
from typing import Any

from fastapi import FastAPI, HTTPException, Query, Request, Response
from fastapi.staticfiles import StaticFiles

from .documents import (
    camera_from_doc,
    dataset_from_bytes,
    dataset_summary,
    dataset_to_bytes,
    visualization_from_bytes,
    visualization_to_bytes,
)
from .ingest import CsvError, RaggedRowError, UnbalancedQuoteError, ingest_csv
from .mapping import (
    InsufficientNumericColumnsError,
    apply_mapping,
    default_mapping,
    mapping_from_json,
    validate_mapping,
)
from .multiview import QuiltConfig, quilt_config_errors
from .render import encode_png, quilt_filename, render_quilt
from .scene import (
    MalformedDocumentError,
    Scene,
    default_camera,
    default_lighting,
    deserialize_scene,
    serialize_scene,
)
from .store import DEFAULT_NAMESPACE, DocumentStore, namespace_for_token, new_id, valid_id

__all__ = ["create_app", "app_from_env"]

DEFAULT_MAX_UPLOAD = 64 * 1024 * 1024
# Guards against absurd allocations, not a quilt-format limit.
MAX_QUILT_PIXELS = 64 * 1024 * 1024
MAX_TILE_DIM = 4096


def create_app(
    data_dir: str,
    *,
    single_user: bool = False,
    max_upload_bytes: int = DEFAULT_MAX_UPLOAD,
    render_cap: int = 2,
    render_workers: int = 1,
    ui_dir: str | None = None,
) -> FastAPI:
    store = DocumentStore(data_dir)
    render_gate = threading.BoundedSemaphore(max(1, render_cap))
    app = FastAPI(title="holoviz", docs_url=None, redoc_url=None)

    def resolve_namespace(request: Request, *, write: bool) -> str:
        if single_user:
            if write:
                store.create_namespace(DEFAULT_NAMESPACE)
            return DEFAULT_NAMESPACE
        header = request.headers.get("authorization", "")
        if not header.startswith("Bearer "):
            raise HTTPException(status_code=401, detail="missing bearer token")
        token = header[len("Bearer ") :].strip()
        if not token:
            raise HTTPException(status_code=401, detail="missing bearer token")
        namespace = namespace_for_token(token)
        if write:
            store.create_namespace(namespace)
        elif not store.namespace_exists(namespace):
            raise HTTPException(status_code=401, detail="unknown token")
        return namespace

    def fetch(namespace: str, collection: str, resource_id: str, what: str) -> bytes:
        data = store.get(namespace, collection, resource_id) if valid_id(resource_id) else None
        if data is None:
            raise HTTPException(status_code=404, detail=f"{what} {resource_id!r} not found")
        return data

    @app.post("/api/datasets")
    async def upload_dataset(
        request: Request,
        delimiter: str = Query(default=","),
        has_header: bool = Query(default=True),
    ) -> dict[str, Any]:
        namespace = resolve_namespace(request, write=True)
        declared = request.headers.get("content-length")
        if declared and declared.isdigit() and int(declared) > max_upload_bytes:
            raise HTTPException(status_code=413, detail="upload exceeds size limit")
        body = await request.body()
        if len(body) > max_upload_bytes:
            raise HTTPException(status_code=413, detail="upload exceeds size limit")
        try:
            dataset = ingest_csv(body, delimiter=delimiter, has_header=has_header)
        except CsvError as exc:
            detail: dict[str, Any] = {"error": type(exc).__name__, "message": str(exc)}
            if isinstance(exc, (RaggedRowError, UnbalancedQuoteError)):
                detail["line"] = exc.line
            raise HTTPException(status_code=400, detail=detail) from None
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        store.put(namespace, "datasets", dataset.id, dataset_to_bytes(dataset))
        return dataset_summary(dataset)

    @app.post("/api/scenes")
    async def create_scene(request: Request) -> dict[str, Any]:
        namespace = resolve_namespace(request, write=True)
        try:
            payload = await request.json()
        except Exception:
            raise HTTPException(status_code=422, detail="body must be JSON") from None
        if not isinstance(payload, dict) or not isinstance(payload.get("dataset_id"), str):
            raise HTTPException(status_code=422, detail="body must carry a dataset_id")
        dataset = dataset_from_bytes(
            fetch(namespace, "datasets", payload["dataset_id"], "dataset")
        )
        try:
            if payload.get("mapping") is not None:
                mapping = mapping_from_json(payload["mapping"])
            else:
                mapping = default_mapping(dataset)
        except MalformedDocumentError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        except InsufficientNumericColumnsError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        diagnostics = validate_mapping(dataset, mapping)
        if diagnostics:
            raise HTTPException(
                status_code=422,
                detail={
                    "diagnostics": [
                        {"channel": d.channel, "code": d.code, "message": d.message}
                        for d in diagnostics
                    ]
                },
            )
        nodes, report = apply_mapping(dataset, mapping)
        camera = default_camera()
        scene = Scene(
            id=new_id(),
            nodes=nodes,
            camera=camera,
            lighting=default_lighting(camera),
        )
        store.put(namespace, "scenes", scene.id, serialize_scene(scene))
        return {
            "scene_id": scene.id,
            "report": {
                "nodes_emitted": report.nodes_emitted,
                "rows_dropped": report.rows_dropped,
                "dropped_row_indices": report.dropped_row_indices,
            },
        }

    @app.get("/api/scenes/{scene_id}")
    def get_scene(scene_id: str, request: Request) -> Response:
        namespace = resolve_namespace(request, write=False)
        data = fetch(namespace, "scenes", scene_id, "scene")
        return Response(content=data, media_type="application/json")

    @app.get("/api/scenes/{scene_id}/quilt")
    def get_quilt(
        scene_id: str,
        request: Request,
        views: int = Query(default=45),
        cone_deg: float = Query(default=40.0),
        columns: int = Query(default=9),
        rows: int = Query(default=5),
        tile_w: int = Query(default=384),
        tile_h: int = Query(default=512),
    ) -> Response:
        namespace = resolve_namespace(request, write=False)
        config = QuiltConfig(
            view_count=views,
            cone_angle=math.radians(cone_deg),
            columns=columns,
            rows=rows,
            tile_width=tile_w,
            tile_height=tile_h,
        )
        errors = quilt_config_errors(config)
        if max(tile_w, tile_h) > MAX_TILE_DIM:
            errors.append(f"tile dimensions are limited to {MAX_TILE_DIM}")
        elif columns * rows * tile_w * tile_h > MAX_QUILT_PIXELS:
            errors.append(f"quilt exceeds {MAX_QUILT_PIXELS} pixels")
        if errors:
            raise HTTPException(status_code=422, detail={"errors": errors})
        scene = deserialize_scene(fetch(namespace, "scenes", scene_id, "scene"))
        with render_gate:
            quilt = render_quilt(scene, config, workers=render_workers)
        filename = quilt_filename(scene_id, config)
        return Response(
            content=encode_png(quilt.pixels),
            media_type="image/png",
            headers={"Content-Disposition": f'inline; filename="{filename}"'},
        )

    @app.put("/api/visualizations/{viz_id}")
    async def save_visualization(viz_id: str, request: Request) -> Response:
        namespace = resolve_namespace(request, write=True)
        if not valid_id(viz_id):
            raise HTTPException(
                status_code=422, detail="ids are 1-64 chars of [A-Za-z0-9_-]"
            )
        try:
            payload = await request.json()
        except Exception:
            raise HTTPException(status_code=422, detail="body must be JSON") from None
        if not isinstance(payload, dict):
            raise HTTPException(status_code=422, detail="body must be an object")
        dataset_id = payload.get("dataset_id")
        if not isinstance(dataset_id, str):
            raise HTTPException(status_code=422, detail="body must carry a dataset_id")
        if not (valid_id(dataset_id) and store.exists(namespace, "datasets", dataset_id)):
            raise HTTPException(status_code=404, detail=f"dataset {dataset_id!r} not found")
        name = payload.get("name", viz_id)
        if not isinstance(name, str):
            raise HTTPException(status_code=422, detail="name must be text")
        try:
            mapping = mapping_from_json(payload.get("mapping"))
            camera = camera_from_doc(payload.get("camera"))
        except MalformedDocumentError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        created_at = datetime.now(timezone.utc).isoformat()
        data = visualization_to_bytes(viz_id, dataset_id, mapping, camera, created_at, name)
        store.put(namespace, "viz", viz_id, data)
        return Response(content=data, media_type="application/json")

    @app.get("/api/visualizations/{viz_id}")
    def load_visualization(viz_id: str, request: Request) -> Response:
        namespace = resolve_namespace(request, write=False)
        data = fetch(namespace, "viz", viz_id, "visualization")
        return Response(content=data, media_type="application/json")

    @app.get("/api/visualizations")
    def list_visualizations(request: Request) -> dict[str, Any]:
        namespace = resolve_namespace(request, write=False)
        entries = []
        for viz_id in store.list_ids(namespace, "viz"):
            data = store.get(namespace, "viz", viz_id)
            if data is None:
                continue
            doc = visualization_from_bytes(data)
            entries.append(
                {"id": doc["id"], "name": doc["name"], "created_at": doc["created_at"]}
            )
        entries.sort(key=lambda e: (e["created_at"], e["id"]))
        return {"visualizations": entries}

    if ui_dir and os.path.isdir(ui_dir):
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    else:

        @app.get("/")
        def index() -> Response:
            return Response(
                content="<html><body><h1>holoviz</h1><p>API at /api; no UI build found.</p></body></html>",
                media_type="text/html",
            )

    return app


def app_from_env() -> FastAPI:
    """App configured from HOLOVIZ_* environment variables."""
    return create_app(
        data_dir=os.environ.get("HOLOVIZ_DATA_DIR", "holoviz_data"),
        single_user=os.environ.get("HOLOVIZ_SINGLE_USER", "") not in ("", "0", "false"),
        max_upload_bytes=int(os.environ.get("HOLOVIZ_MAX_UPLOAD_BYTES", DEFAULT_MAX_UPLOAD)),
        render_cap=int(os.environ.get("HOLOVIZ_RENDER_CAP", "2")),
        render_workers=int(os.environ.get("HOLOVIZ_RENDER_WORKERS", "1")),
        ui_dir=os.environ.get("HOLOVIZ_UI_DIR") or _default_ui_dir(),
    )


def _default_ui_dir() -> str | None:
    from pathlib import Path

    candidate = Path(__file__).resolve().parents[2].parent / "frontend" / "dist"
    return str(candidate) if candidate.is_dir() else None
