"""Text formats for point sets and decompositions.

Point file: UTF-8, one ``x y`` integer pair per line, ``#`` starts a
comment, blank lines ignored.  Point indices count point lines from 0.

Decomposition file: a header line ``n=<n> c=<c> k=<k> cells=<m> algo=<tag>``
then one cell per line, 0-based indices, counterclockwise, starting at the
cell's smallest index.  Cells are written in sorted order so identical
decompositions give identical files.
"""

from __future__ import annotations

import re

from .decomposition import Decomposition
from .geometry import COORD_LIMIT, PointSet, canonical, convex_hull
from .radial import build_radial_structure


class FormatError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column = line, column


def _tokens(line: str):
    """(column, token) pairs, columns 1-based, comments stripped."""
    line = line.split("#", 1)[0]
    return [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]


def _int(tok: str, lineno: int, col: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(lineno, col, f"expected an integer {what}, got {tok!r}") from None


def parse_points(text: str, validate: bool = True) -> PointSet:
    pts = []
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _tokens(line)
        if not toks:
            continue
        if len(toks) != 2:
            col = toks[2][0] if len(toks) > 2 else len(line.split("#", 1)[0].rstrip()) + 1
            raise FormatError(lineno, col, f"expected 2 coordinates, got {len(toks)}")
        x, y = (_int(t, lineno, c, "coordinate") for c, t in toks)
        for (c, _), v in zip(toks, (x, y)):
            if abs(v) > COORD_LIMIT:
                raise FormatError(lineno, c, f"coordinate {v} exceeds {COORD_LIMIT}")
        pts.append((x, y))
    if len(pts) < 3:
        raise FormatError(max(1, len(text.splitlines())), 1, f"need at least 3 points, got {len(pts)}")
    return PointSet(pts, validate=validate)


def format_points(ps: PointSet, comment: str | None = None) -> str:
    head = "".join(f"# {line}\n" for line in comment.splitlines()) if comment else ""
    return head + "".join(f"{x} {y}\n" for x, y in ps.points)


def read_points(path, validate: bool = True) -> PointSet:
    with open(path, encoding="utf-8") as fh:
        return parse_points(fh.read(), validate)


def write_points(path, ps: PointSet, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_points(ps, comment))


HEADER_KEYS = ("n", "c", "k", "cells", "algo")


def format_decomposition(decomp: Decomposition, ps: PointSet) -> str:
    n = len(ps)
    c = len(convex_hull(ps))
    k = build_radial_structure(ps).k
    cells = decomp.canonical_cells()
    lines = [f"n={n} c={c} k={k} cells={len(cells)} algo={decomp.source}"]
    lines += [" ".join(map(str, cell)) for cell in cells]
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> tuple[Decomposition, dict]:
    """Returns the decomposition and the header fields.

    Only syntax is checked here; whether the cells are valid for a point
    set is the verifier's business.
    """
    lines = [(i, ln) for i, ln in enumerate(text.splitlines(), 1) if _tokens(ln)]
    if not lines:
        raise FormatError(1, 1, "empty decomposition file")
    lineno, head = lines[0]
    header = {}
    for col, tok in _tokens(head):
        key, eq, val = tok.partition("=")
        if not eq or key not in HEADER_KEYS:
            raise FormatError(lineno, col, f"bad header field {tok!r}")
        header[key] = val if key == "algo" else _int(val, lineno, col + len(key) + 1, key)
    missing = [k for k in HEADER_KEYS if k not in header]
    if missing:
        raise FormatError(lineno, 1, f"header missing {', '.join(missing)}")
    cells = []
    for lineno, line in lines[1:]:
        toks = _tokens(line)
        cell = tuple(_int(t, lineno, c, "vertex index") for c, t in toks)
        if len(cell) < 3:
            raise FormatError(lineno, 1, f"a cell needs at least 3 vertices, got {len(cell)}")
        cells.append(canonical(cell))
    if len(cells) != header["cells"]:
        raise FormatError(lineno, 1, f"header says {header['cells']} cells, found {len(cells)}")
    return Decomposition(sorted(cells), header["algo"]), header


def read_decomposition(path) -> tuple[Decomposition, dict]:
    with open(path, encoding="utf-8") as fh:
        return parse_decomposition(fh.read())


def write_decomposition(path, decomp: Decomposition, ps: PointSet) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_decomposition(decomp, ps))
