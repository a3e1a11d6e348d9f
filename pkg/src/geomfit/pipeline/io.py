"""Point-set parsing and writing (CSV primary, JSON alternative)."""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from ..errors import EmptyInput, ParseError

FORMATS = ("csv", "json")


def _decode(source) -> str:
    if hasattr(source, "read"):
        source = source.read()
    if isinstance(source, bytes):
        try:
            return source.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    return source


def _number(text, row, column) -> float:
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise ParseError(f"not a number: {text!r}", row=row, column=column) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value: {text!r}", row=row, column=column)
    return value


def _is_header(fields) -> bool:
    for f in fields:
        try:
            float(f)
            return False
        except ValueError:
            pass
    return True


def parse_csv(text: str, header: bool | None = None) -> np.ndarray:
    """Parse ``x,y,z`` records, one per line.

    ``header=None`` skips the first non-blank record only if none of its
    fields parses as a number. Blank lines are ignored; rows are numbered by
    physical line (1-based) in errors.
    """
    points = []
    first = True
    for lineno, fields in enumerate(csv.reader(io.StringIO(text)), start=1):
        fields = [f.strip() for f in fields]
        if not fields or all(f == "" for f in fields):
            continue
        if first:
            first = False
            if header or (header is None and _is_header(fields)):
                continue
        if len(fields) != 3:
            column = len(fields) + 1 if len(fields) < 3 else 4
            raise ParseError(f"expected 3 fields, got {len(fields)}", row=lineno, column=column)
        points.append([_number(f, lineno, col) for col, f in enumerate(fields, start=1)])
    if not points:
        raise EmptyInput("no points in input")
    return np.array(points, dtype=float)


def parse_json(text: str) -> np.ndarray:
    """Parse a JSON array of ``[x, y, z]`` triples."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", row=exc.lineno, column=exc.colno) from None
    if not isinstance(data, list):
        raise ParseError("top-level JSON value must be an array")
    points = []
    for row, rec in enumerate(data, start=1):
        if not isinstance(rec, list) or len(rec) != 3:
            raise ParseError("each record must be an [x, y, z] array", row=row)
        coords = []
        for col, v in enumerate(rec, start=1):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"not a number: {v!r}", row=row, column=col)
            coords.append(_number(v, row, col))
        points.append(coords)
    if not points:
        raise EmptyInput("no points in input")
    return np.array(points, dtype=float)


def parse_points(source, fmt: str = "csv", header: bool | None = None) -> np.ndarray:
    """Read points from bytes, text or a binary/text stream.

    Returns an (N, 3) float array in input order.
    """
    if fmt not in FORMATS:
        raise ParseError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    text = _decode(source)
    if fmt == "json":
        return parse_json(text)
    return parse_csv(text, header=header)


def format_float(x: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    return format(float(x), ".17g")


def points_to_csv(points) -> str:
    return "".join(",".join(format_float(c) for c in p) + "\n" for p in np.asarray(points, dtype=float))


def points_to_json(points) -> str:
    rows = ("[" + ", ".join(format_float(c) for c in p) + "]" for p in np.asarray(points, dtype=float))
    return "[\n  " + ",\n  ".join(rows) + "\n]\n"


def guess_format(path: str, default: str = "csv") -> str:
    return "json" if str(path).lower().endswith(".json") else default
