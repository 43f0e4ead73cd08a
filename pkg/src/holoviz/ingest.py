"""CSV ingestion: RFC 4180 parsing, schema inference, and column statistics.

The parser is a hand-rolled state machine rather than stdlib ``csv`` because
we need precise diagnostics (unbalanced quotes and ragged rows reported with
line numbers) and a strict equal-width contract that the stdlib reader does
not enforce.
"""

from __future__ import annotations

import math
import re
import secrets
from dataclasses import dataclass, field
from enum import Enum

__all__ = [
    "ColumnKind",
    "ColumnSchema",
    "ColumnStats",
    "CsvError",
    "Dataset",
    "EmptyInputError",
    "InvalidEncodingError",
    "RaggedRowError",
    "RawTable",
    "UnbalancedQuoteError",
    "compute_stats",
    "infer_schema",
    "ingest_csv",
    "normalize",
    "normalized01",
    "parse_csv",
    "write_csv",
]


class CsvError(ValueError):
    """Base class for CSV parse failures."""


class EmptyInputError(CsvError):
    def __init__(self) -> None:
        super().__init__("input contains no rows")


class InvalidEncodingError(CsvError):
    def __init__(self, offset: int) -> None:
        super().__init__(f"input is not valid UTF-8 (byte offset {offset})")
        self.offset = offset


class UnbalancedQuoteError(CsvError):
    def __init__(self, line: int) -> None:
        super().__init__(f"unbalanced quote in field starting on line {line}")
        self.line = line


class RaggedRowError(CsvError):
    def __init__(self, line: int, expected: int, got: int) -> None:
        super().__init__(f"line {line}: expected {expected} fields, got {got}")
        self.line = line
        self.expected = expected
        self.got = got


class ColumnKind(str, Enum):
    NUMERIC = "Numeric"
    CATEGORICAL = "Categorical"


@dataclass(frozen=True)
class RawTable:
    """Parsed CSV: header names plus rows of text cells, all equal width."""

    headers: list[str]
    rows: list[list[str]]

    def column(self, index: int) -> list[str]:
        return [row[index] for row in self.rows]


@dataclass(frozen=True)
class ColumnSchema:
    name: str
    kind: ColumnKind
    missing_count: int


@dataclass(frozen=True)
class ColumnStats:
    """Per-column summary; min/max/mean for numeric, categories otherwise.

    ``categories`` lists distinct non-missing values in first-appearance
    order; numeric columns leave it empty. A numeric column with zero
    non-missing values keeps min/max/mean as NaN.
    """

    min: float = math.nan
    max: float = math.nan
    mean: float = math.nan
    categories: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class Dataset:
    id: str
    table: RawTable
    schemas: list[ColumnSchema]
    stats: list[ColumnStats]

    @property
    def headers(self) -> list[str]:
        return self.table.headers

    def column_index(self, name: str) -> int | None:
        try:
            return self.table.headers.index(name)
        except ValueError:
            return None


# Finite decimal/scientific literals only: "nan"/"inf"/"1_0" stay text.
_NUMERIC_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def parse_number(cell: str) -> float | None:
    """Return the cell as a float, or None if it is not a finite number."""
    if not _NUMERIC_RE.match(cell):
        return None
    return float(cell)


# Tokenizer states. A bare quote inside an unquoted field, or any character
# other than delimiter/newline after a closing quote, is an RFC 4180
# violation and reported as an unbalanced quote on the offending line.
_FIELD_START, _IN_FIELD, _IN_QUOTES, _AFTER_QUOTES = range(4)


def _split_records(text: str, delimiter: str) -> list[tuple[int, list[str]]]:
    """Tokenize CSV text into (starting line number, fields) records."""
    records: list[tuple[int, list[str]]] = []
    fields: list[str] = []
    buf: list[str] = []
    line = 1
    record_line = 1
    quote_line = 1
    state = _FIELD_START
    i = 0
    n = len(text)

    def end_field() -> None:
        fields.append("".join(buf))
        buf.clear()

    def end_record() -> None:
        nonlocal fields
        end_field()
        records.append((record_line, fields))
        fields = []

    while i < n:
        ch = text[i]
        if state == _IN_QUOTES:
            if ch == '"':
                if i + 1 < n and text[i + 1] == '"':
                    buf.append('"')
                    i += 2
                    continue
                state = _AFTER_QUOTES
                i += 1
                continue
            if ch == "\n":
                line += 1
            buf.append(ch)
            i += 1
            continue
        if ch == "\r" and i + 1 < n and text[i + 1] == "\n":
            ch = "\n"
            i += 1
        if ch == delimiter:
            end_field()
            state = _FIELD_START
            i += 1
            continue
        if ch == "\n" or ch == "\r":
            end_record()
            line += 1
            record_line = line
            state = _FIELD_START
            i += 1
            continue
        if state == _AFTER_QUOTES:
            raise UnbalancedQuoteError(line)
        if ch == '"':
            if state == _IN_FIELD:
                raise UnbalancedQuoteError(line)
            state = _IN_QUOTES
            quote_line = line
            i += 1
            continue
        buf.append(ch)
        state = _IN_FIELD
        i += 1
    if state == _IN_QUOTES:
        raise UnbalancedQuoteError(quote_line)
    if state != _FIELD_START or fields:
        # Final record without a trailing newline.
        end_record()
    return records


def parse_csv(data: bytes, delimiter: str = ",", has_header: bool = True) -> RawTable:
    """Parse RFC 4180 CSV bytes into a rectangular RawTable.

    Quoted fields may contain the delimiter, doubled quotes, and newlines;
    LF and CRLF records are both accepted and one trailing newline is
    ignored. Without a header row, names are synthesized as col1..colN.
    """
    if len(delimiter) != 1 or ord(delimiter) > 127:
        raise ValueError("delimiter must be a single ASCII character")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InvalidEncodingError(exc.start) from None
    records = _split_records(text, delimiter)
    if not records:
        raise EmptyInputError()
    if has_header:
        (_, header_cells), data_records = records[0], records[1:]
        headers = _dedupe_headers(header_cells)
    else:
        width = len(records[0][1])
        headers = [f"col{i + 1}" for i in range(width)]
        data_records = records
    rows: list[list[str]] = []
    for line_no, cells in data_records:
        if len(cells) != len(headers):
            raise RaggedRowError(line_no, len(headers), len(cells))
        rows.append(cells)
    return RawTable(headers=headers, rows=rows)


def _dedupe_headers(cells: list[str]) -> list[str]:
    """Blank headers become colN; duplicates get a _2, _3, ... suffix."""
    seen: dict[str, int] = {}
    headers: list[str] = []
    for i, cell in enumerate(cells):
        name = cell if cell else f"col{i + 1}"
        count = seen.get(name, 0) + 1
        seen[name] = count
        if count > 1:
            candidate = f"{name}_{count}"
            while candidate in seen:
                count += 1
                candidate = f"{name}_{count}"
            seen[name] = count
            seen[candidate] = 1
            name = candidate
        headers.append(name)
    return headers


def _format_cell(cell: str, delimiter: str) -> str:
    if '"' in cell or delimiter in cell or "\n" in cell or "\r" in cell:
        return '"' + cell.replace('"', '""') + '"'
    return cell


def write_csv(table: RawTable, delimiter: str = ",") -> bytes:
    """Serialize a RawTable back to CSV; inverse of parse_csv."""
    lines = [delimiter.join(_format_cell(c, delimiter) for c in table.headers)]
    for row in table.rows:
        lines.append(delimiter.join(_format_cell(c, delimiter) for c in row))
    return ("\n".join(lines) + "\n").encode("utf-8")


def infer_schema(table: RawTable) -> list[ColumnSchema]:
    """Classify each column as Numeric or Categorical.

    Empty cells are missing and never affect the decision; a column whose
    non-missing cells all parse as finite numbers is Numeric, and a column
    with no non-missing cells at all is Categorical.
    """
    schemas: list[ColumnSchema] = []
    for index, name in enumerate(table.headers):
        missing = 0
        non_missing = 0
        numeric = True
        for row in table.rows:
            cell = row[index]
            if cell == "":
                missing += 1
                continue
            non_missing += 1
            if numeric and parse_number(cell) is None:
                numeric = False
        kind = ColumnKind.NUMERIC if numeric and non_missing > 0 else ColumnKind.CATEGORICAL
        schemas.append(ColumnSchema(name=name, kind=kind, missing_count=missing))
    return schemas


def compute_stats(table: RawTable, schemas: list[ColumnSchema]) -> list[ColumnStats]:
    """Min/max/mean over non-missing numeric values; categories in
    first-appearance order for categorical columns."""
    stats: list[ColumnStats] = []
    for index, schema in enumerate(schemas):
        if schema.kind is ColumnKind.NUMERIC:
            values = [v for row in table.rows if (v := parse_number(row[index])) is not None]
            if values:
                stats.append(
                    ColumnStats(min=min(values), max=max(values), mean=sum(values) / len(values))
                )
            else:
                stats.append(ColumnStats())
        else:
            seen: dict[str, None] = {}
            for row in table.rows:
                cell = row[index]
                if cell != "" and cell not in seen:
                    seen[cell] = None
            stats.append(ColumnStats(categories=list(seen)))
    return stats


def normalized01(value: float, stats: ColumnStats) -> float:
    """Min-max map to [0, 1]; a constant column maps to the midpoint 0.5."""
    if not (stats.max > stats.min):
        return 0.5
    return (value - stats.min) / (stats.max - stats.min)


def normalize(value: float, stats: ColumnStats) -> float:
    """Min-max map to [-1, 1]; a constant column maps to 0."""
    return 2.0 * normalized01(value, stats) - 1.0


def ingest_csv(
    data: bytes,
    delimiter: str = ",",
    has_header: bool = True,
    dataset_id: str | None = None,
) -> Dataset:
    """Parse, infer, and summarize a CSV payload into a Dataset."""
    table = parse_csv(data, delimiter=delimiter, has_header=has_header)
    schemas = infer_schema(table)
    stats = compute_stats(table, schemas)
    if dataset_id is None:
        dataset_id = secrets.token_hex(16)
    return Dataset(id=dataset_id, table=table, schemas=schemas, stats=stats)
