"""Exhaustive minimum convex decomposition for tiny point sets.

Two independent routes:

* ``front``: grow a tiling of the hull one empty convex polygon at a
  time.  Every unmatched directed edge must be claimed by the cell on its
  left, and in general position that cell has exactly this edge as a side,
  so branching over all candidates for one edge is complete.  Branch and
  bound on the cell count.
* ``triangulations``: enumerate every triangulation, and for each find the
  fewest convex unions of its triangles by DP over bitmasks.  Any convex
  decomposition refines to a triangulation, so the minimum is the same.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .decomposition import Decomposition
from .geometry import (
    Polygon,
    PointSet,
    area2,
    canonical,
    convex_hull,
    convex_interiors_overlap,
    edges,
    point_in_convex,
)

ORACLE_CAP = 9
TRIANGULATION_CAP = 12


class OracleCapError(ValueError):
    pass


@dataclass
class OracleResult:
    min_cells: int
    witness: Decomposition
    explored: dict = field(default_factory=dict)
    method: str = "front"


def empty_convex_polygons(ps: PointSet, max_size: int | None = None) -> list[Polygon]:
    """All empty convex polygons with vertices in ps, canonical CCW, sorted."""
    n = len(ps)
    max_size = n if max_size is None else max_size
    out = []
    for size in range(3, max_size + 1):
        for sub in combinations(range(n), size):
            hull = convex_hull(ps.subset(sub))
            if len(hull) != size:
                continue
            poly = canonical(tuple(sub[i] for i in hull))
            members = set(sub)
            if any(point_in_convex(ps[p], poly, ps) for p in range(n) if p not in members):
                continue
            out.append(poly)
    out.sort()
    return out


class _Tiler:
    """Shared machinery for tiling the hull with a fixed family of cells."""

    def __init__(self, ps: PointSet, polys: list[Polygon]):
        self.ps = ps
        self.polys = polys
        self.area = [area2(p, ps) for p in polys]
        self.edges = [tuple(edges(p)) for p in polys]
        self.by_edge: dict[tuple[int, int], list[int]] = {}
        # largest first so good solutions show up early
        for pid in sorted(range(len(polys)), key=lambda i: (-self.area[i], polys[i])):
            for e in self.edges[pid]:
                self.by_edge.setdefault(e, []).append(pid)
        self.pts = [[ps[v] for v in p] for p in polys]
        self._overlap: dict[tuple[int, int], bool] = {}
        self.hull = convex_hull(ps)
        self.hull_area = area2(self.hull, ps)
        self.nodes = 0

    def overlaps(self, a: int, b: int) -> bool:
        key = (a, b) if a < b else (b, a)
        hit = self._overlap.get(key)
        if hit is None:
            hit = self._overlap[key] = convex_interiors_overlap(self.pts[a], self.pts[b])
        return hit

    def candidates(self, edge, placed) -> list[int]:
        return [pid for pid in self.by_edge.get(edge, ())
                if not any(self.overlaps(pid, q) for q in placed)]

    def place(self, pid: int, open_edges: set) -> set | None:
        new = set(open_edges)
        for a, b in self.edges[pid]:
            if (a, b) in new:
                new.discard((a, b))
            else:
                new.add((b, a))
        return new


def _search_min(t: _Tiler, upper: int):
    best = [upper, None]
    max_area = max(t.area)

    def rec(open_edges: set, placed: list[int], covered: int):
        t.nodes += 1
        if not open_edges:
            if covered == t.hull_area and len(placed) < best[0]:
                best[0], best[1] = len(placed), list(placed)
            return
        rest = t.hull_area - covered
        if len(placed) + max(1, -(-rest // max_area)) >= best[0]:
            return
        choice = None
        for e in sorted(open_edges):
            cands = t.candidates(e, placed)
            if choice is None or len(cands) < len(choice[1]):
                choice = (e, cands)
                if len(cands) <= 1:
                    break
        for pid in choice[1]:
            if t.area[pid] > rest:
                continue
            placed.append(pid)
            rec(t.place(pid, open_edges), placed, covered + t.area[pid])
            placed.pop()

    rec(set(edges(t.hull)), [], 0)
    return best


def enumerate_triangulations(ps: PointSet):
    """Yield every triangulation as a sorted list of canonical triangles."""
    if len(ps) > TRIANGULATION_CAP:
        raise OracleCapError(f"n={len(ps)} exceeds the triangulation cap {TRIANGULATION_CAP}")
    t = _Tiler(ps, empty_convex_polygons(ps, 3))

    def rec(open_edges, placed, covered):
        t.nodes += 1
        if not open_edges:
            if covered == t.hull_area:
                yield sorted(t.polys[p] for p in placed)
            return
        e = min(open_edges)
        for pid in t.candidates(e, placed):
            placed.append(pid)
            yield from rec(t.place(pid, open_edges), placed, covered + t.area[pid])
            placed.pop()

    yield from rec(set(edges(t.hull)), [], 0)


def _coarsen(tris: list[Polygon], polys: list[Polygon], ps: PointSet):
    """Fewest convex polygons that are unions of the given triangles."""
    index = {tri: b for b, tri in enumerate(tris)}
    tri_area = [area2(tri, ps) for tri in tris]
    masks = []
    for poly in polys:
        vs = set(poly)
        mask = 0
        total = 0
        for b, tri in enumerate(tris):
            if vs.issuperset(tri):
                mask |= 1 << b
                total += tri_area[b]
        if total == area2(poly, ps):
            masks.append((mask, poly))
    full = (1 << len(tris)) - 1
    by_low: dict[int, list] = {}
    for mask, poly in masks:
        by_low.setdefault((mask & -mask).bit_length() - 1, []).append((mask, poly))
    memo: dict[int, tuple] = {0: (0, ())}

    def best(rem: int):
        if rem in memo:
            return memo[rem]
        low = (rem & -rem).bit_length() - 1
        out = None
        for mask, poly in by_low.get(low, ()):
            if mask & rem == mask:
                cnt, cells = best(rem & ~mask)
                if out is None or cnt + 1 < out[0]:
                    out = (cnt + 1, (poly,) + cells)
        memo[rem] = out
        return out

    return best(full), index


def min_convex_decomposition(ps: PointSet, method: str = "front") -> OracleResult:
    n = len(ps)
    if n > ORACLE_CAP:
        raise OracleCapError(f"n={n} exceeds the exhaustive cap {ORACLE_CAP}")
    polys = empty_convex_polygons(ps)
    c = len(convex_hull(ps))
    if method == "front":
        t = _Tiler(ps, polys)
        count, placed = _search_min(t, 2 * n - c - 1)
        cells = [t.polys[p] for p in placed]
        explored = {"nodes": t.nodes, "polygons": len(polys)}
    elif method == "triangulations":
        best = None
        seen = 0
        for tris in enumerate_triangulations(ps):
            seen += 1
            (cnt, cells_t), _ = _coarsen(tris, polys, ps)
            if best is None or cnt < best[0]:
                best = (cnt, list(cells_t))
        count, cells = best
        explored = {"triangulations": seen, "polygons": len(polys)}
    else:
        raise ValueError(f"unknown method {method!r}")
    witness = Decomposition(sorted(cells), "oracle", {"n": n, "c": c, "cells": count})
    return OracleResult(count, witness, explored, method)


def theorem_bound_check(ps: PointSet, result: OracleResult | None = None) -> bool:
    """Whether the minimum is within floor(10n/7) - c."""
    if result is None:
        result = min_convex_decomposition(ps)
    n, c = len(ps), len(convex_hull(ps))
    return result.min_cells <= 10 * n // 7 - c
