"""Polygon text files and CSV helpers.

A polygon file has one polygon per line, written as ``[[x1,y1],[x2,y2],...]``.
Vertices may come in any order; lines starting with ``#`` and blank lines are
ignored.  Polygon ids are the 1-based line numbers.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable, Iterator, TextIO

from .errors import DimensionError, ParseError
from .lattice import LatticePolygon, convex_hull, format_polygon


def parse_polygon_line(text: str, line: int = 0) -> LatticePolygon:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(line, f"not a vertex list: {exc.msg}") from None
    if not isinstance(data, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(c, int) and not isinstance(c, bool) for c in p)
        for p in data
    ):
        raise ParseError(line, "expected a list of integer pairs")
    try:
        return convex_hull(data)
    except DimensionError as exc:
        raise DimensionError(f"line {line}: {exc}") from None


def iter_polygon_lines(lines: Iterable[str]) -> Iterator[tuple[str, LatticePolygon | Exception]]:
    """Yield ``(id, polygon)`` or ``(id, error)`` for every non-comment line."""
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            yield str(lineno), parse_polygon_line(text, lineno)
        except (ParseError, DimensionError) as exc:
            yield str(lineno), exc


def parse_polygon_file(path: str | Path) -> list[tuple[str, LatticePolygon]]:
    """All polygons of a file; the first malformed line raises."""
    out = []
    with open(path) as fh:
        for pid, item in iter_polygon_lines(fh):
            if isinstance(item, Exception):
                raise item
            out.append((pid, item))
    return out


def write_polygons(polygons: Iterable[LatticePolygon], fh: TextIO, header: str | None = None):
    if header:
        for line in header.splitlines():
            fh.write(f"# {line}\n")
    for P in polygons:
        fh.write(format_polygon(P) + "\n")


def read_csv_rows(path: str | Path) -> list[dict[str, str]]:
    import csv

    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
