"""Channel mapping: dataset columns onto the six visual channels.

A mapping assigns columns to x/y/z position, size, color, and shape. Rows
missing any mapped value are dropped and reported rather than guessed at.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .ingest import ColumnKind, ColumnStats, Dataset, normalize, normalized01, parse_number
from .scene import Color, MalformedDocumentError, SceneNode, Shape

__all__ = [
    "ChannelMapping",
    "Diagnostic",
    "InsufficientNumericColumnsError",
    "InvalidMappingError",
    "MappingError",
    "MappingReport",
    "TypeMismatchError",
    "UnknownColumnError",
    "apply_mapping",
    "default_mapping",
    "mapping_from_json",
    "mapping_to_json",
    "validate_mapping",
]

# First three entries are the classic red/yellow/blue; the rest keep
# categorical palettes distinct up to eight categories before cycling.
DEFAULT_PALETTE: tuple[str, ...] = (
    "#FF0000",
    "#FFFF00",
    "#0000FF",
    "#00C853",
    "#FF00FF",
    "#00E5FF",
    "#FF8C00",
    "#8E24AA",
)
DEFAULT_GRADIENT: tuple[str, str] = ("#ADD8E6", "#00008B")  # light blue -> dark blue
DEFAULT_SIZE_RANGE: tuple[float, float] = (0.02, 0.08)
DEFAULT_RADIUS = 0.04
DEFAULT_COLOR = "#FF0000"

SHAPE_CYCLE: tuple[Shape, Shape, Shape] = (Shape.SPHERE, Shape.CUBE, Shape.CYLINDER)


def hex_to_rgb(text: str) -> Color:
    if len(text) != 7 or text[0] != "#":
        raise ValueError(f"expected #RRGGBB color, got {text!r}")
    try:
        r, g, b = (int(text[i : i + 2], 16) for i in (1, 3, 5))
    except ValueError:
        raise ValueError(f"expected #RRGGBB color, got {text!r}") from None
    return (r / 255.0, g / 255.0, b / 255.0)


def rgb_to_hex(color: Color) -> str:
    return "#" + "".join(f"{round(c * 255):02X}" for c in color)


class MappingError(ValueError):
    """Base class for channel mapping failures."""


class InsufficientNumericColumnsError(MappingError):
    def __init__(self, found: int) -> None:
        super().__init__(
            f"default mapping needs the first three columns to be numeric; got {found}"
        )


class UnknownColumnError(MappingError):
    def __init__(self, channel: str, column: str) -> None:
        super().__init__(f"channel {channel!r} references unknown column {column!r}")
        self.channel = channel
        self.column = column


class TypeMismatchError(MappingError):
    def __init__(self, channel: str, expected: str, got: str) -> None:
        super().__init__(f"channel {channel!r} expects a {expected} column, got {got}")
        self.channel = channel
        self.expected = expected
        self.got = got


class InvalidMappingError(MappingError):
    def __init__(self, channel: str, reason: str) -> None:
        super().__init__(f"channel {channel!r}: {reason}")
        self.channel = channel
        self.reason = reason


@dataclass(frozen=True)
class Diagnostic:
    channel: str
    code: str  # unknown-column | type-mismatch | invalid-value
    message: str
    column: str | None = None
    expected: str | None = None
    got: str | None = None

    def to_error(self) -> MappingError:
        if self.code == "unknown-column":
            return UnknownColumnError(self.channel, self.column or "?")
        if self.code == "type-mismatch":
            return TypeMismatchError(self.channel, self.expected or "?", self.got or "?")
        return InvalidMappingError(self.channel, self.message)


@dataclass(frozen=True)
class ChannelMapping:
    """Column-to-channel assignment plus the visual encoding parameters."""

    x: str
    y: str
    z: str
    size: str | None = None
    color: str | None = None
    shape: str | None = None
    size_range: tuple[float, float] = DEFAULT_SIZE_RANGE
    palette: tuple[Color, ...] = tuple(hex_to_rgb(h) for h in DEFAULT_PALETTE)
    gradient: tuple[Color, Color] = (
        hex_to_rgb(DEFAULT_GRADIENT[0]),
        hex_to_rgb(DEFAULT_GRADIENT[1]),
    )
    default_shape: Shape = Shape.SPHERE
    default_color: Color = hex_to_rgb(DEFAULT_COLOR)
    default_radius: float = DEFAULT_RADIUS


@dataclass(frozen=True)
class MappingReport:
    nodes_emitted: int
    rows_dropped: int
    dropped_row_indices: list[int] = field(default_factory=list)


def default_mapping(dataset: Dataset) -> ChannelMapping:
    """Positional default: columns 1-3 are x/y/z, a numeric column 4 drives
    size, column 5 drives color; anything further is left unmapped."""
    schemas = dataset.schemas
    leading_numeric = 0
    for schema in schemas[:3]:
        if schema.kind is ColumnKind.NUMERIC:
            leading_numeric += 1
    if len(schemas) < 3 or leading_numeric < 3:
        raise InsufficientNumericColumnsError(leading_numeric)
    size = None
    if len(schemas) >= 4 and schemas[3].kind is ColumnKind.NUMERIC:
        size = schemas[3].name
    color = schemas[4].name if len(schemas) >= 5 else None
    return ChannelMapping(
        x=schemas[0].name,
        y=schemas[1].name,
        z=schemas[2].name,
        size=size,
        color=color,
    )


_NUMERIC_CHANNELS = ("x", "y", "z", "size")


def validate_mapping(dataset: Dataset, mapping: ChannelMapping) -> list[Diagnostic]:
    """Empty list iff apply_mapping will succeed on this dataset."""
    diags: list[Diagnostic] = []
    kinds = {s.name: s.kind for s in dataset.schemas}

    def check(channel: str, column: str | None, expected: ColumnKind | None) -> None:
        if column is None:
            return
        kind = kinds.get(column)
        if kind is None:
            diags.append(
                Diagnostic(
                    channel,
                    "unknown-column",
                    f"column {column!r} does not exist",
                    column=column,
                )
            )
        elif expected is not None and kind is not expected:
            diags.append(
                Diagnostic(
                    channel,
                    "type-mismatch",
                    f"expected {expected.value}, got {kind.value}",
                    column=column,
                    expected=expected.value,
                    got=kind.value,
                )
            )

    check("x", mapping.x, ColumnKind.NUMERIC)
    check("y", mapping.y, ColumnKind.NUMERIC)
    check("z", mapping.z, ColumnKind.NUMERIC)
    check("size", mapping.size, ColumnKind.NUMERIC)
    check("color", mapping.color, None)
    check("shape", mapping.shape, ColumnKind.CATEGORICAL)

    min_r, max_r = mapping.size_range
    if not (0 < min_r <= max_r):
        diags.append(
            Diagnostic("size", "invalid-value", "size_range must satisfy 0 < min <= max")
        )
    if not mapping.palette:
        diags.append(Diagnostic("color", "invalid-value", "palette must not be empty"))
    if not (mapping.default_radius > 0):
        diags.append(Diagnostic("size", "invalid-value", "default_radius must be > 0"))
    return diags


def _lerp(a: Color, b: Color, t: float) -> Color:
    return (
        a[0] + t * (b[0] - a[0]),
        a[1] + t * (b[1] - a[1]),
        a[2] + t * (b[2] - a[2]),
    )


def apply_mapping(
    dataset: Dataset, mapping: ChannelMapping
) -> tuple[list[SceneNode], MappingReport]:
    """Emit one scene node per usable row.

    Rows with an empty cell in any mapped column are dropped and listed in
    the report; everything else is deterministic arithmetic on the column
    stats, so equal inputs give bit-identical node lists.
    """
    diags = validate_mapping(dataset, mapping)
    if diags:
        raise diags[0].to_error()

    index_of = {s.name: i for i, s in enumerate(dataset.schemas)}

    def resolved(column: str | None) -> tuple[int, ColumnStats] | None:
        if column is None:
            return None
        i = index_of[column]
        return i, dataset.stats[i]

    cx, cy, cz = resolved(mapping.x), resolved(mapping.y), resolved(mapping.z)
    csize = resolved(mapping.size)
    ccolor = resolved(mapping.color)
    cshape = resolved(mapping.shape)
    color_is_numeric = (
        ccolor is not None
        and dataset.schemas[index_of[mapping.color]].kind is ColumnKind.NUMERIC
    )
    category_index = {}
    if ccolor is not None and not color_is_numeric:
        category_index = {v: i for i, v in enumerate(ccolor[1].categories)}
    shape_index = {}
    if cshape is not None:
        shape_index = {v: i for i, v in enumerate(cshape[1].categories)}

    mapped_columns = [c[0] for c in (cx, cy, cz, csize, ccolor, cshape) if c is not None]
    min_r, max_r = mapping.size_range
    palette = mapping.palette

    nodes: list[SceneNode] = []
    dropped: list[int] = []
    for row_index, row in enumerate(dataset.table.rows):
        if any(row[i] == "" for i in mapped_columns):
            dropped.append(row_index)
            continue
        position = (
            normalize(parse_number(row[cx[0]]), cx[1]),
            normalize(parse_number(row[cy[0]]), cy[1]),
            normalize(parse_number(row[cz[0]]), cz[1]),
        )
        if csize is not None:
            t = normalized01(parse_number(row[csize[0]]), csize[1])
            radius = min_r + t * (max_r - min_r)
        else:
            radius = mapping.default_radius
        if ccolor is None:
            color = mapping.default_color
        elif color_is_numeric:
            t = normalized01(parse_number(row[ccolor[0]]), ccolor[1])
            color = _lerp(mapping.gradient[0], mapping.gradient[1], t)
        else:
            color = palette[category_index[row[ccolor[0]]] % len(palette)]
        if cshape is not None:
            shape = SHAPE_CYCLE[shape_index[row[cshape[0]]] % 3]
        else:
            shape = mapping.default_shape
        nodes.append(SceneNode(shape=shape, position=position, radius=radius, color=color))
    report = MappingReport(
        nodes_emitted=len(nodes),
        rows_dropped=len(dropped),
        dropped_row_indices=dropped,
    )
    return nodes, report


def mapping_to_json(mapping: ChannelMapping) -> dict[str, Any]:
    """Canonical JSON document; colors as #RRGGBB text."""
    return {
        "x": mapping.x,
        "y": mapping.y,
        "z": mapping.z,
        "size": mapping.size,
        "color": mapping.color,
        "shape": mapping.shape,
        "size_range": list(mapping.size_range),
        "palette": [rgb_to_hex(c) for c in mapping.palette],
        "gradient": [rgb_to_hex(c) for c in mapping.gradient],
        "default_shape": mapping.default_shape.value,
        "default_color": rgb_to_hex(mapping.default_color),
        "default_radius": mapping.default_radius,
    }


def _json_color(value: Any, path: str) -> Color:
    if not isinstance(value, str):
        raise MalformedDocumentError(path, "expected #RRGGBB text")
    try:
        return hex_to_rgb(value)
    except ValueError as exc:
        raise MalformedDocumentError(path, str(exc)) from None


def mapping_from_json(doc: Any) -> ChannelMapping:
    """Parse the canonical mapping document; inverse of mapping_to_json."""
    if not isinstance(doc, dict):
        raise MalformedDocumentError("$", "expected an object")
    defaults = {
        "size": None,
        "color": None,
        "shape": None,
        "size_range": list(DEFAULT_SIZE_RANGE),
        "palette": list(DEFAULT_PALETTE),
        "gradient": list(DEFAULT_GRADIENT),
        "default_shape": Shape.SPHERE.value,
        "default_color": DEFAULT_COLOR,
        "default_radius": DEFAULT_RADIUS,
    }
    unknown = doc.keys() - {"x", "y", "z", *defaults}
    if unknown:
        raise MalformedDocumentError(f"$.{sorted(unknown)[0]}", "unknown key")
    merged = {**defaults, **doc}
    for key in ("x", "y", "z"):
        if not isinstance(merged.get(key), str):
            raise MalformedDocumentError(f"$.{key}", "expected a column name")
    for key in ("size", "color", "shape"):
        if merged[key] is not None and not isinstance(merged[key], str):
            raise MalformedDocumentError(f"$.{key}", "expected a column name or null")
    size_range = merged["size_range"]
    if (
        not isinstance(size_range, list)
        or len(size_range) != 2
        or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in size_range)
    ):
        raise MalformedDocumentError("$.size_range", "expected [min, max] numbers")
    palette_doc = merged["palette"]
    if not isinstance(palette_doc, list) or not palette_doc:
        raise MalformedDocumentError("$.palette", "expected a non-empty array")
    gradient_doc = merged["gradient"]
    if not isinstance(gradient_doc, list) or len(gradient_doc) != 2:
        raise MalformedDocumentError("$.gradient", "expected a 2-element array")
    try:
        default_shape = Shape(merged["default_shape"])
    except ValueError:
        raise MalformedDocumentError(
            "$.default_shape", f"unknown shape {merged['default_shape']!r}"
        ) from None
    radius = merged["default_radius"]
    if isinstance(radius, bool) or not isinstance(radius, (int, float)):
        raise MalformedDocumentError("$.default_radius", "expected a number")
    return ChannelMapping(
        x=merged["x"],
        y=merged["y"],
        z=merged["z"],
        size=merged["size"],
        color=merged["color"],
        shape=merged["shape"],
        size_range=(float(size_range[0]), float(size_range[1])),
        palette=tuple(
            _json_color(c, f"$.palette[{i}]") for i, c in enumerate(palette_doc)
        ),
        gradient=(
            _json_color(gradient_doc[0], "$.gradient[0]"),
            _json_color(gradient_doc[1], "$.gradient[1]"),
        ),
        default_shape=default_shape,
        default_color=_json_color(merged["default_color"], "$.default_color"),
        default_radius=float(radius),
    )
