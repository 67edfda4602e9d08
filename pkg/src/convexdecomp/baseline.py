"""The n + k - c construction: A-polygons, B-polygons, B-fans and pockets.

The star polygon V (anchor, rank 2, every positive point, rank n) is
tiled by the A-polygons, B-polygons and the fan triangles inside each
negative run; what is left of the hull is a set of pockets, each bounded
by one hull edge and a piece of V's boundary, and those are triangulated.
Each convexity the construction relies on is checked at runtime; a
failing cell is triangulated instead and the failure is logged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decomposition import Decomposition
from .geometry import (
    Polygon,
    PointSet,
    area2,
    canonical,
    ccw,
    convex_hull,
    ear_clip,
    is_convex,
    orient,
)
from .radial import RadialStructure, Run, build_radial_structure, partition_runs


@dataclass
class PocketSet:
    star: Polygon
    pockets: list[Polygon] = field(default_factory=list)


def _ranks_to_poly(rs: RadialStructure, ranks) -> Polygon:
    return tuple(rs.point(r) for r in ranks)


def a_polygon(run: Run, rs: RadialStructure) -> Polygon:
    lo, hi = run.flanks
    return canonical(_ranks_to_poly(rs, [1, *range(lo, hi + 1)]))


def b_polygon(run: Run, rs: RadialStructure, ps: PointSet) -> Polygon:
    lo, hi = run.flanks
    return ccw(_ranks_to_poly(rs, range(lo, hi + 1)), ps)


def b_fans(run: Run, rs: RadialStructure) -> list[Polygon]:
    return [canonical(_ranks_to_poly(rs, (1, m, m + 1))) for m in range(run.first, run.last)]


def build_A_polygon(j: int, rs: RadialStructure) -> Polygon:
    """Polygon of the j-th positive block (1-based) with its anchor and flanks."""
    return a_polygon(rs.blocks_A[j - 1], rs)


def build_B_polygon(j: int, rs: RadialStructure, ps: PointSet) -> Polygon:
    return b_polygon(rs.blocks_B[j - 1], rs, ps)


def build_B_fans(rs: RadialStructure) -> list[Polygon]:
    return [t for run in rs.blocks_B for t in b_fans(run, rs)]


def empty_in_wedge(poly: Polygon, rs: RadialStructure, rank_of: dict[int, int], ps: PointSet) -> bool:
    """No point strictly inside a convex polygon.

    Such a polygon lies in the angular wedge spanned by its vertices about
    the anchor, so only ranks inside that wedge need testing.
    """
    ranks = [rank_of[v] for v in poly if v != rs.anchor]
    lo, hi = min(ranks), max(ranks)
    vs = set(poly)
    pts = ps.points
    m = len(poly)
    for r in range(lo + 1, hi):
        p = rs.point(r)
        if p in vs:
            continue
        q = pts[p]
        if all(orient(pts[poly[t]], pts[poly[(t + 1) % m]], q) > 0 for t in range(m)):
            return False
    return True


def certify(poly: Polygon, what: str, rs, rank_of, ps: PointSet, log: list[str]) -> list[Polygon]:
    """Return ``[poly]`` if convex and empty, else its triangulation (logged).

    Ear clipping rather than a literal fan: a fan over a reflex polygon can
    leave the polygon.
    """
    if is_convex(poly, ps) and empty_in_wedge(poly, rs, rank_of, ps):
        return [poly]
    log.append(f"{what} {poly} not convex/empty; triangulated")
    return ear_clip(ccw(poly, ps), ps)


def v_tiling(rs: RadialStructure, ps: PointSet, lo: int, hi: int, log: list[str], rank_of=None):
    """Tile the part of V between ranks ``lo`` and ``hi`` (both positive or ends).

    Returns ``(cells, counts)`` where counts has A, B, T_B and fallbacks.
    """
    if rank_of is None:
        rank_of = rs.rank_of()
    A, B = partition_runs(rs.signs, lo, hi)
    cells: list[Polygon] = []
    counts = {"A": len(A), "B": len(B), "T_B": 0, "fallbacks": 0}
    before = len(log)
    for j, run in enumerate(A, 1):
        cells += certify(a_polygon(run, rs), f"A{j}", rs, rank_of, ps, log)
    for j, run in enumerate(B, 1):
        cells += certify(b_polygon(run, rs, ps), f"B{j}", rs, rank_of, ps, log)
        fan = b_fans(run, rs)
        counts["T_B"] += len(fan)
        cells += fan
    counts["fallbacks"] = len(log) - before
    return cells, counts


def compute_pockets(rs: RadialStructure, ps: PointSet, hull: Polygon | None = None,
                    removed: frozenset[int] = frozenset()) -> PocketSet:
    """Regions between the hull and the star polygon V.

    ``removed`` lists positive ranks dropped from V (their area has been
    claimed by other cells).
    """
    if hull is None:
        hull = convex_hull(ps)
    n = rs.n
    star_ranks = [1, 2] + [r for r in rs.plus_ranks() if r not in removed] + ([n] if n > 2 else [])
    hull_set = set(hull)
    chain = star_ranks[1:]
    pockets: list[Polygon] = []
    missing = hull_set - {rs.point(r) for r in star_ranks}
    if missing:
        raise AssertionError(f"hull vertices {sorted(missing)} are not vertices of V")
    last_hull = 0
    for t in range(1, len(chain)):
        if rs.point(chain[t]) in hull_set:
            if t - last_hull > 1:
                # CCW: outer hull edge first, then V's chain back
                seg = chain[last_hull:t + 1]
                pockets.append(canonical(_ranks_to_poly(rs, [seg[0], seg[-1], *reversed(seg[1:-1])])))
            last_hull = t
    return PocketSet(star=canonical(_ranks_to_poly(rs, star_ranks)), pockets=pockets)


def triangulate_pockets(pocketset: PocketSet, ps: PointSet) -> list[Polygon]:
    tris: list[Polygon] = []
    for pocket in pocketset.pockets:
        if area2(pocket, ps) <= 0:
            raise AssertionError(f"pocket {pocket} is not counterclockwise")
        tris += ear_clip(pocket, ps)
    return tris


def baseline_decompose(ps: PointSet, rs: RadialStructure | None = None) -> Decomposition:
    if rs is None:
        rs = build_radial_structure(ps)
    hull = convex_hull(ps)
    n, c, k = rs.n, len(hull), rs.k
    log: list[str] = []
    cells, counts = v_tiling(rs, ps, 2, n, log)
    pockets = compute_pockets(rs, ps, hull)
    t_u = triangulate_pockets(pockets, ps)
    expected_t_u = len(rs.plus_ranks()) - (c - 3)
    if len(t_u) != expected_t_u:
        log.append(f"|T_U| = {len(t_u)} but |A| - (c - 3) = {expected_t_u}")
    cells += t_u
    expected = n + k - c
    if counts["fallbacks"] == 0 and len(cells) != expected:
        log.append(f"|cells| = {len(cells)} but n + k - c = {expected}")
    accounting = {
        "n": n,
        "c": c,
        "k": k,
        "T_B": counts["T_B"],
        "T_U": len(t_u),
        "pockets": len(pockets.pockets),
        "fallbacks": counts["fallbacks"],
        "expected": expected,
        "cells": len(cells),
    }
    return Decomposition(cells, "baseline", accounting, log)
