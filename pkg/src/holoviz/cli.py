"""Command line interface: ingest, scene, render, serve.

The first three subcommands run the pipeline against the local single-user
store (the same layout the server uses in --single-user mode). Exit codes:
0 success, 1 validation failure, 2 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .documents import dataset_from_bytes, dataset_to_bytes
from .ingest import CsvError, ingest_csv
from .mapping import MappingError, apply_mapping, default_mapping, mapping_from_json, validate_mapping
from .multiview import QuiltConfig, quilt_config_errors
from .render import encode_image, quilt_filename, render_quilt
from .scene import (
    MalformedDocumentError,
    Scene,
    default_camera,
    default_lighting,
    deserialize_scene,
    serialize_scene,
)
from .store import DEFAULT_NAMESPACE, DocumentStore, new_id

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


class ValidationFailure(Exception):
    pass


class IoFailure(Exception):
    pass


def _store(args: argparse.Namespace) -> DocumentStore:
    try:
        return DocumentStore(args.data_dir)
    except OSError as exc:
        raise IoFailure(f"cannot open data dir {args.data_dir!r}: {exc}") from None


def _cmd_ingest(args: argparse.Namespace) -> None:
    try:
        data = open(args.csv, "rb").read()
    except OSError as exc:
        raise IoFailure(f"cannot read {args.csv!r}: {exc}") from None
    try:
        dataset = ingest_csv(data, delimiter=args.delimiter, has_header=not args.no_header)
    except (CsvError, ValueError) as exc:
        raise ValidationFailure(str(exc)) from None
    store = _store(args)
    store.create_namespace(DEFAULT_NAMESPACE)
    store.put(DEFAULT_NAMESPACE, "datasets", dataset.id, dataset_to_bytes(dataset))
    print(f"dataset {dataset.id} ({len(dataset.table.rows)} rows)")
    width = max(len(h) for h in dataset.headers)
    for schema, stats in zip(dataset.schemas, dataset.stats):
        if schema.kind.value == "Numeric":
            detail = f"min {stats.min:g}  max {stats.max:g}  mean {stats.mean:g}"
            if math.isnan(stats.min):
                detail = "all missing"
        else:
            detail = f"{len(stats.categories)} categories"
        missing = f"  missing {schema.missing_count}" if schema.missing_count else ""
        print(f"  {schema.name:<{width}}  {schema.kind.value:<12} {detail}{missing}")


def _cmd_scene(args: argparse.Namespace) -> None:
    store = _store(args)
    data = store.get(DEFAULT_NAMESPACE, "datasets", args.dataset_id)
    if data is None:
        raise ValidationFailure(f"dataset {args.dataset_id!r} not found")
    dataset = dataset_from_bytes(data)
    try:
        if args.map:
            try:
                doc = json.load(open(args.map, "r", encoding="utf-8"))
            except OSError as exc:
                raise IoFailure(f"cannot read {args.map!r}: {exc}") from None
            except json.JSONDecodeError as exc:
                raise ValidationFailure(f"{args.map}: {exc}") from None
            mapping = mapping_from_json(doc)
        else:
            mapping = default_mapping(dataset)
        diagnostics = validate_mapping(dataset, mapping)
        if diagnostics:
            raise ValidationFailure("; ".join(f"{d.channel}: {d.message}" for d in diagnostics))
        nodes, report = apply_mapping(dataset, mapping)
    except (MappingError, MalformedDocumentError) as exc:
        raise ValidationFailure(str(exc)) from None
    camera = default_camera()
    scene = Scene(id=new_id(), nodes=nodes, camera=camera, lighting=default_lighting(camera))
    store.put(DEFAULT_NAMESPACE, "scenes", scene.id, serialize_scene(scene))
    print(f"scene {scene.id} ({report.nodes_emitted} nodes, {report.rows_dropped} rows dropped)")


def _cmd_render(args: argparse.Namespace) -> None:
    store = _store(args)
    data = store.get(DEFAULT_NAMESPACE, "scenes", args.scene_id)
    if data is None:
        raise ValidationFailure(f"scene {args.scene_id!r} not found")
    scene = deserialize_scene(data)
    config = QuiltConfig(
        view_count=args.views,
        cone_angle=math.radians(args.cone),
        columns=args.columns,
        rows=args.rows,
        tile_width=args.tile_width,
        tile_height=args.tile_height,
    )
    errors = quilt_config_errors(config)
    if errors:
        raise ValidationFailure("; ".join(errors))
    quilt = render_quilt(scene, config, workers=args.workers)
    fmt = "ppm" if args.ppm else "png"
    out = args.out or quilt_filename(args.scene_id, config)
    if args.ppm and out.endswith(".png"):
        out = out[: -len(".png")] + ".ppm"
    try:
        with open(out, "wb") as fh:
            fh.write(encode_image(quilt.pixels, fmt=fmt))
    except OSError as exc:
        raise IoFailure(f"cannot write {out!r}: {exc}") from None
    print(out)


def _cmd_serve(args: argparse.Namespace) -> None:
    import uvicorn

    from .service import create_app

    app = create_app(
        data_dir=args.data_dir,
        single_user=args.single_user,
        ui_dir=args.ui_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holoviz",
        description="3D scatter scenes and holographic quilt renders from CSV data",
    )
    default_data = os.environ.get("HOLOVIZ_DATA_DIR", "holoviz_data")
    parser.add_argument("--data-dir", default=default_data, help="document store directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a CSV file into the store")
    p.add_argument("csv")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--no-header", action="store_true", help="synthesize col1..colN names")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("scene", help="build a scene from a stored dataset")
    p.add_argument("dataset_id")
    p.add_argument("--map", help="channel mapping JSON file (default: positional mapping)")
    p.set_defaults(func=_cmd_scene)

    p = sub.add_parser("render", help="render a stored scene to a quilt image")
    p.add_argument("scene_id")
    p.add_argument("--views", type=int, default=45)
    p.add_argument("--cone", type=float, default=40.0, help="view cone width, degrees")
    p.add_argument("--columns", type=int, default=9)
    p.add_argument("--rows", type=int, default=5)
    p.add_argument("--tile-width", type=int, default=384)
    p.add_argument("--tile-height", type=int, default=512)
    p.add_argument("--workers", type=int, default=1, help="concurrent view renders")
    p.add_argument("--out", help="output path (default: <scene>_qs{c}x{r}a{aspect}.png)")
    p.add_argument("--ppm", action="store_true", help="write binary PPM instead of PNG")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=int(os.environ.get("HOLOVIZ_PORT", "8000")))
    p.add_argument(
        "--single-user",
        action="store_true",
        default=os.environ.get("HOLOVIZ_SINGLE_USER", "") not in ("", "0", "false"),
        help="no auth, one shared namespace",
    )
    p.add_argument("--ui-dir", default=os.environ.get("HOLOVIZ_UI_DIR"))
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except IoFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
