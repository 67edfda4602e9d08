"""Exact certification of convex decompositions.

Works on any :class:`Decomposition` regardless of where it came from.
Every failing check carries a concrete witness.

Emptiness and overlap tests run on int64 arrays.  That is exact here:
coordinates are bounded by 1e9, so every cross product is below 8e18.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .decomposition import Decomposition
from .geometry import (
    COORD_LIMIT,
    PointSet,
    area2,
    convex_hull,
    convex_interiors_overlap,
    ear_clip,
    edge_join,
    edges,
    fan,
    is_convex,
    is_simple,
)

_CHUNK = 4_000_000


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"CHECK {self.name} {status}" + (f" {self.witness}" if self.witness else "")


@dataclass
class VerificationReport:
    checks: dict[str, CheckResult]
    counts: dict = field(default_factory=dict)
    discrepancies: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def __getitem__(self, name: str) -> CheckResult:
        return self.checks[name]

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checks.values()]
        if self.counts:
            out.append("CHECK bounds PASS " + " ".join(f"{k}={v}" for k, v in self.counts.items()))
        out += [f"NOTE {d}" for d in self.discrepancies]
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _triangles(cells, ps: PointSet) -> list[tuple[int, tuple[int, int, int]]]:
    """(cell id, triangle) for every cell; skips cells that are not simple."""
    out = []
    for ci, cell in enumerate(cells):
        if is_convex(cell, ps):
            tris = fan(cell)
        elif is_simple(cell, ps) and area2(cell, ps) > 0:
            tris = ear_clip(cell, ps)
        else:
            continue
        out += [(ci, t) for t in tris]
    return out


def check_structure(decomp: Decomposition, ps: PointSet) -> CheckResult:
    n = len(ps)
    if any(abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT for x, y in ps.points):
        return CheckResult("structure", False, "coordinates exceed exact-arithmetic bound")
    for ci, cell in enumerate(decomp.cells):
        if len(cell) < 3 or any(not (0 <= v < n) for v in cell):
            return CheckResult("structure", False, f"cell={ci} bad indices {cell}")
        if not is_simple(cell, ps):
            return CheckResult("structure", False, f"cell={ci} not simple {cell}")
        if area2(cell, ps) <= 0:
            return CheckResult("structure", False, f"cell={ci} not counterclockwise {cell}")
    return CheckResult("structure", True)


def check_convexity(decomp: Decomposition, ps: PointSet) -> CheckResult:
    for ci, cell in enumerate(decomp.cells):
        if not is_convex(cell, ps):
            return CheckResult("convex", False, f"cell={ci} {cell}")
    return CheckResult("convex", True)


def check_emptiness(decomp: Decomposition, ps: PointSet) -> CheckResult:
    """C1: no input point strictly inside any cell.

    A point strictly inside a cell is strictly inside one of its triangles;
    it cannot sit on a diagonal because that would be a collinear triple.
    """
    tris = _triangles(decomp.cells, ps)
    if not tris:
        return CheckResult("C1", True)
    P = ps.as_array()
    owner = np.array([ci for ci, _ in tris])
    T = np.array([t for _, t in tris], dtype=np.int64)
    step = max(1, _CHUNK // max(1, len(P)))
    px, py = P[None, :, 0], P[None, :, 1]
    for s in range(0, len(T), step):
        A, B, C = (P[T[s:s + step, j]] for j in range(3))
        inside = np.ones((len(A), len(P)), dtype=bool)
        for U, V in ((A, B), (B, C), (C, A)):
            ux, uy = U[:, 0, None], U[:, 1, None]
            inside &= (V[:, 0, None] - ux) * (py - uy) - (V[:, 1, None] - uy) * (px - ux) > 0
        hit = np.argwhere(inside)
        if len(hit):
            t, p = hit[0]
            ci = int(owner[s + t])
            return CheckResult("C1", False, f"point={int(p)} cell={ci} {decomp.cells[ci]}")
    return CheckResult("C1", True)


def boundary_certificate(decomp: Decomposition, ps: PointSet, hull) -> bool:
    """Directed cell edges cancel in pairs, leaving exactly the hull boundary.

    For simple CCW cells this makes the sum of cell indicator functions
    equal the hull's almost everywhere, i.e. interiors are disjoint and
    they cover.  General position rules out T-junctions, so cancellation
    is exact on whole edges.
    """
    count = Counter(e for cell in decomp.cells for e in edges(cell))
    if any(v > 1 for v in count.values()):
        return False
    left = {(u, v) for (u, v) in count if (v, u) not in count}
    return left == set(edges(hull))


def find_overlap(decomp: Decomposition, ps: PointSet) -> tuple[int, int] | None:
    """Pairwise separating-axis search over cell triangles, bbox-pruned."""
    pts = ps.points
    tris = _triangles(decomp.cells, ps)
    boxes = []
    for ci, t in tris:
        xs = [pts[v][0] for v in t]
        ys = [pts[v][1] for v in t]
        boxes.append((min(xs), max(xs), min(ys), max(ys), ci, t))
    boxes.sort()
    for s, (x0, x1, y0, y1, ci, t) in enumerate(boxes):
        for u in range(s + 1, len(boxes)):
            X0, X1, Y0, Y1, cj, tt = boxes[u]
            if X0 >= x1:
                break
            if cj == ci or Y0 >= y1 or Y1 <= y0:
                continue
            if convex_interiors_overlap([pts[v] for v in t], [pts[v] for v in tt]):
                return min(ci, cj), max(ci, cj)
    return None


def check_disjoint_and_cover(decomp: Decomposition, ps: PointSet, hull=None,
                             method: str = "auto") -> tuple[CheckResult, CheckResult]:
    """C2 (pairwise disjoint interiors) and C3 (area identity + containment).

    ``method="auto"`` accepts the boundary certificate and only falls back
    to the pairwise search when it does not hold; ``"pairwise"`` always
    searches.  Together, C2 and C3 passing imply the cells cover the hull.
    """
    if hull is None:
        hull = convex_hull(ps)
    n = len(ps)
    total = sum(area2(c, ps) for c in decomp.cells)
    target = area2(hull, ps)
    if any(not (0 <= v < n) for c in decomp.cells for v in c):
        c3 = CheckResult("C3", False, "cell vertex outside the point set")
    elif total != target:
        c3 = CheckResult("C3", False, f"area2 sum={total} hull={target}")
    else:
        c3 = CheckResult("C3", True, f"area2={total}")
    simple = all(is_simple(c, ps) and area2(c, ps) > 0 for c in decomp.cells)
    if method == "auto" and simple and boundary_certificate(decomp, ps, hull):
        return CheckResult("C2", True), c3
    hit = find_overlap(decomp, ps)
    if hit is not None:
        i, j = hit
        return CheckResult("C2", False, f"cells={i},{j} {decomp.cells[i]} {decomp.cells[j]}"), c3
    if not simple:
        return CheckResult("C2", False, "a cell is not a simple counterclockwise polygon"), c3
    return CheckResult("C2", True), c3


def check_minimality(decomp: Decomposition, ps: PointSet) -> CheckResult:
    """No two cells have a convex union.

    Only edge-adjacent pairs are tested.  Two interior-disjoint convex
    cells without a common edge meet in at most a vertex (a shared segment
    would need a point in the middle of an edge, i.e. a collinear triple),
    so their union is not even a polygon, let alone a convex one.
    """
    owner = {}
    for ci, cell in enumerate(decomp.cells):
        for e in edges(cell):
            owner[e] = ci
    for ci, cell in enumerate(decomp.cells):
        for u, v in edges(cell):
            cj = owner.get((v, u))
            if cj is None or cj <= ci:
                continue
            try:
                joined = edge_join(cell, decomp.cells[cj])
            except ValueError:
                continue
            if is_convex(joined, ps):
                return CheckResult("minimal", False, f"cells={ci},{cj} union={joined}")
    return CheckResult("minimal", True)


def check_bounds(decomp: Decomposition, n: int, c: int, k: int | None = None) -> dict:
    m = len(decomp.cells)
    out = {"cells": m, "n": n, "c": c}
    target = 10 * n // 7 - c
    out["target"] = target
    out["slack"] = m - target
    if k is not None:
        out["k"] = k
        out["baseline"] = n + k - c
        out["slack_baseline"] = m - (n + k - c)
    out["prior"] = 3 * n // 2 - c
    out["slack_prior"] = m - (3 * n // 2 - c)
    return out


def verify(decomp: Decomposition, ps: PointSet, k: int | None = None, method: str = "auto",
           minimality: bool = True) -> VerificationReport:
    hull = convex_hull(ps)
    checks: dict[str, CheckResult] = {}
    checks["structure"] = check_structure(decomp, ps)
    if not checks["structure"].passed:
        for name in ("convex", "C1", "C2", "C3") + (("minimal",) if minimality else ()):
            checks[name] = CheckResult(name, False, "structure invalid")
    else:
        checks["convex"] = check_convexity(decomp, ps)
        checks["C1"] = check_emptiness(decomp, ps)
        checks["C2"], checks["C3"] = check_disjoint_and_cover(decomp, ps, hull, method)
        if minimality:
            checks["minimal"] = check_minimality(decomp, ps)
    counts = check_bounds(decomp, len(ps), len(hull), k)
    return VerificationReport(checks, counts, list(decomp.discrepancies))
