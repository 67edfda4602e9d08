"""Main decomposer: strategy dispatch, skeleton extraction, reinsertion, minimalization.

Small k goes straight to the n + k - c construction and exact ± sets to
the ± construction.  In between, one representative per positive and
negative run forms an alternating subset P'; P' is decomposed as a ± set
and the other points are put back one at a time.  A point inside a cell
splits it into three; a point outside the current hull gets a fan over
the hull edges it sees.  Everything ends with a merge pass that makes the
result minimal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .baseline import baseline_decompose
from .decomposition import Decomposition
from .geometry import (
    Polygon,
    PointSet,
    canonical,
    convex_hull,
    edge_join,
    edges,
    in_triangle_interior,
    join_is_convex,
    orient,
    point_in_convex,
)
from .pm import pm_decompose
from .radial import RadialStructure, build_radial_structure, is_pm_set


class Branch(enum.Enum):
    BASELINE_SMALL_K = "BaselineSmallK"
    PM_EXACT = "PmExact"
    HYBRID = "Hybrid"


@dataclass(frozen=True)
class StrategyChoice:
    branch: Branch
    n: int
    k: int

    @property
    def thresholds(self) -> dict:
        return {"k": self.k, "n": self.n, "3n/7": 3 * self.n / 7, "n/2": self.n / 2}


def choose_strategy(rs: RadialStructure) -> StrategyChoice:
    n, k = rs.n, rs.k
    if 7 * k <= 3 * n:
        branch = Branch.BASELINE_SMALL_K
    elif 2 * k == n:
        branch = Branch.PM_EXACT
    else:
        branch = Branch.HYBRID
    return StrategyChoice(branch, n, k)


@dataclass
class PmSkeleton:
    subset: list[int]  # point indices of P' in radial order
    q: dict[int, int]  # A-run number -> chosen point
    r: dict[int, int]  # B-run number -> chosen point
    interior: list[int] = field(default_factory=list)  # S inside Conv(P')
    exterior: list[int] = field(default_factory=list)
    repaired: bool = False


def _highest(cands: list[int], ps: PointSet) -> int:
    return max(cands, key=lambda p: (ps[p][1], ps[p][0], -p))


def _lowest(cands: list[int], ps: PointSet) -> int:
    return min(cands, key=lambda p: (ps[p][1], -ps[p][0], p))


def _default_choice(rs: RadialStructure, ps: PointSet, hull: set[int]):
    q = {}
    for j, run in enumerate(rs.blocks_A, 1):
        if not len(run):
            continue
        members = [rs.point(r) for r in run.ranks]
        on_hull = [p for p in members if p in hull]
        # highest rank among members not interior to the hull
        q[j] = on_hull[-1] if on_hull else _highest(members, ps)
    r = {j: _lowest([rs.point(x) for x in run.ranks], ps) for j, run in enumerate(rs.blocks_B, 1)}
    return q, r


def _chain_ok(chain: list[int], ps: PointSet, p1: int) -> bool:
    """Interior chain positions alternate minus, plus, minus, ... as seen from p1."""
    a = ps[p1]
    for t in range(1, len(chain) - 1):
        inside = in_triangle_interior(ps[chain[t]], a, ps[chain[t - 1]], ps[chain[t + 1]])
        if inside != (t % 2 == 1):
            return False
    return True


def _repair(slots: list[list[int]], ps: PointSet, p1: int) -> list[int] | None:
    """Pick one candidate per slot so the chain alternates; None if impossible.

    Dynamic programming over consecutive pairs: the label of a slot only
    depends on its two neighbours.  Candidates are tried in list order, so
    the first listed (the preferred pick) wins ties.
    """
    a = ps[p1]

    def ok(t, x, y, z):
        return in_triangle_interior(ps[y], a, ps[x], ps[z]) == (t % 2 == 1)

    # back[t][(y, z)] = x that made (x, y) feasible, for slots t-1, t
    layer = {(x, y): None for x in slots[0] for y in slots[1]}
    back = [layer]
    for t in range(1, len(slots) - 1):
        nxt = {}
        for (x, y) in layer:
            for z in slots[t + 1]:
                if (y, z) not in nxt and ok(t, x, y, z):
                    nxt[(y, z)] = x
        if not nxt:
            return None
        layer = nxt
        back.append(layer)
    y, z = next(iter(layer))
    chain = [z, y]
    for t in range(len(back) - 1, 0, -1):
        x = back[t][(y, z)]
        chain.append(x)
        y, z = x, y
    return chain[::-1]


def extract_pm_subset(rs: RadialStructure, ps: PointSet, hull: Polygon | None = None) -> PmSkeleton | None:
    """Alternating subset p1, p2, r_1, q_2, r_2, ..., q_{k-1}, r_{k-1}, pn.

    The end runs A_1 and A_k are left out: their points would sit at ranks
    3 and n-1 with a positive sign, which an alternating set cannot have.
    Returns None when no alternating choice exists.
    """
    if hull is None:
        hull = convex_hull(ps)
    n, k = rs.n, rs.k
    q, r = _default_choice(rs, ps, set(hull))
    if any(not len(rs.blocks_A[j - 1]) for j in range(2, k)):
        return None
    slots = [[rs.point(2)]]
    pick = [rs.point(2)]
    for j in range(1, k):
        run = rs.blocks_B[j - 1]
        slots.append([r[j]] + [rs.point(x) for x in run.ranks if rs.point(x) != r[j]])
        pick.append(r[j])
        if j + 1 < k:
            run = rs.blocks_A[j]
            slots.append([q[j + 1]] + [rs.point(x) for x in run.ranks if rs.point(x) != q[j + 1]])
            pick.append(q[j + 1])
    slots.append([rs.point(n)])
    pick.append(rs.point(n))
    repaired = False
    if not _chain_ok(pick, ps, rs.anchor):
        pick = _repair(slots, ps, rs.anchor)
        if pick is None:
            return None
        repaired = True
    chosen = pick[1:-1]
    q_sel = {j + 1: chosen[2 * j - 1] for j in range(1, k - 1)}
    r_sel = {j: chosen[2 * j - 2] for j in range(1, k)}
    subset = [rs.anchor] + pick
    sub_hull = [subset[i] for i in convex_hull(ps.subset(subset))]
    inside, outside = [], []
    members = set(subset)
    for p in range(len(ps)):
        if p in members:
            continue
        (inside if point_in_convex(ps[p], sub_hull, ps) else outside).append(p)
    return PmSkeleton(subset, q_sel, r_sel, inside, outside, repaired)


def split_cell_at_interior_point(cell: Polygon, p: int, ps: PointSet) -> list[Polygon]:
    """Three convex cells from a convex cell and a point strictly inside it.

    The fan triangle from the first vertex that contains p fixes the three
    cut vertices; every angle at p is below pi, and any two pieces meet at
    p with a reflex angle.
    """
    pts = ps.points
    m = len(cell)
    q = pts[p]
    if not point_in_convex(q, cell, ps):
        raise ValueError(f"point {p} is not strictly inside {cell}")
    for j in range(1, m - 1):
        if in_triangle_interior(q, pts[cell[0]], pts[cell[j]], pts[cell[j + 1]]):
            break
    else:
        raise ValueError(f"point {p} lies on a diagonal of {cell}")
    return [
        canonical((p, *cell[: j + 1])),
        canonical((p, cell[j], cell[j + 1])),
        canonical((p, *cell[j + 1:], cell[0])),
    ]


def insert_interior_point(cells: list[Polygon], p: int, ps: PointSet) -> list[Polygon]:
    q = ps[p]
    for ci, cell in enumerate(cells):
        if point_in_convex(q, cell, ps):
            return cells[:ci] + split_cell_at_interior_point(cell, p, ps) + cells[ci + 1:]
    raise ValueError(f"point {p} is not inside any cell")


def insert_exterior_point(cells: list[Polygon], hull: list[int], p: int, ps: PointSet):
    """Attach p outside the current hull; returns (cells, hull, added).

    The hull edges p sees form one contiguous chain, and each gets a
    triangle with p.  Two neighbouring fan triangles never have a convex
    union (their shared hull vertex turns reflex), so merging is left to
    the final pass, where a fan triangle may join an old cell.
    """
    pts = ps.points
    q = pts[p]
    m = len(hull)
    seen = [orient(pts[hull[t]], pts[hull[(t + 1) % m]], q) < 0 for t in range(m)]
    if not any(seen):
        raise ValueError(f"point {p} is not outside the hull")
    # rotate so the visible chain starts at position 0
    start = next(t for t in range(m) if seen[t] and not seen[t - 1])
    chain = []
    t = start
    while seen[t % m]:
        chain.append(hull[t % m])
        t += 1
    chain.append(hull[t % m])
    new = [canonical((a, p, b)) for a, b in zip(chain, chain[1:])]
    i0 = hull.index(chain[0])
    rest = [hull[(i0 + len(chain) - 1 + s) % m] for s in range(m - len(chain) + 2)]
    new_hull = canonical(rest + [p])
    return cells + new, list(new_hull), len(new)


def minimalize(decomp: Decomposition, ps: PointSet) -> Decomposition:
    """Merge adjacent cells with a convex union until none is left.

    Always merges the pair with the lowest first position, then the lowest
    second position; the merged cell takes the first position.  Positions
    are kept stable (removed cells leave a hole), so after a merge only
    pairs involving the new cell can have changed and the scan resumes at
    the lowest position among it and its neighbours.
    """
    cells: list[Polygon | None] = [canonical(c) for c in decomp.cells]
    owner = {}
    for ci, cell in enumerate(cells):
        for e in edges(cell):
            owner[e] = ci
    merges = 0
    ci = 0
    while ci < len(cells):
        cell = cells[ci]
        best = None
        if cell is not None:
            for u, v in edges(cell):
                cj = owner.get((v, u))
                if cj is None or cj <= ci or (best is not None and cj >= best):
                    continue
                if join_is_convex(cell, cells[cj], u, v, ps):
                    best = cj
        if best is None:
            ci += 1
            continue
        joined = canonical(edge_join(cell, cells[best]))
        for e in [*edges(cell), *edges(cells[best])]:
            if owner.get(e) in (ci, best):
                del owner[e]
        for e in edges(joined):
            owner[e] = ci
        cells[ci], cells[best] = joined, None
        merges += 1
        ci = min([ci] + [owner[(v, u)] for u, v in edges(joined) if (v, u) in owner])
    accounting = dict(decomp.accounting)
    accounting["minimalize_merges"] = accounting.get("minimalize_merges", 0) + merges
    return Decomposition([c for c in cells if c is not None], decomp.source, accounting,
                         list(decomp.discrepancies))


def _hybrid(ps: PointSet, rs: RadialStructure, hull: Polygon, log: list[str]):
    skel = extract_pm_subset(rs, ps, hull)
    if skel is None:
        log.append("no alternating subset; used the n + k - c construction")
        return None
    sub = ps.subset(skel.subset)
    sub_rs = build_radial_structure(sub)
    if not is_pm_set(sub_rs):
        log.append("extracted subset is not a ± set; used the n + k - c construction")
        return None
    if skel.repaired:
        log.append("representative rule did not give a ± set; picks repaired")
    inner = pm_decompose(sub, sub_rs)
    cells = [tuple(skel.subset[v] for v in cell) for cell in inner.cells]
    pm_cells = len(cells)
    log += [f"P': {d}" for d in inner.discrepancies]
    for p in skel.interior:
        cells = insert_interior_point(cells, p, ps)
    cur_hull = [skel.subset[v] for v in convex_hull(sub)]
    ext_cells = 0
    for p in skel.exterior:
        if point_in_convex(ps[p], cur_hull, ps):
            cells = insert_interior_point(cells, p, ps)
            ext_cells += 2
        else:
            cells, cur_hull, added = insert_exterior_point(cells, cur_hull, p, ps)
            ext_cells += added
    info = {
        "pm_n": len(skel.subset),
        "pm_c": len(convex_hull(sub)),
        "pm_cells": pm_cells,
        "pm_fallbacks": len(inner.discrepancies),
        "s_interior": len(skel.interior),
        "s_exterior": len(skel.exterior),
        "exterior_cells": ext_cells,
        "repaired": skel.repaired,
    }
    return cells, info


def decompose(ps: PointSet) -> Decomposition:
    n = len(ps)
    hull = convex_hull(ps)
    c = len(hull)
    target = 10 * n // 7 - c
    if n == 3:
        d = Decomposition([hull], "main", {"n": 3, "c": 3, "k": 1, "branch": "BaselineSmallK"})
        d.accounting.update(pre_minimalize=1, cells=1, target=target, slack=1 - target, fallbacks=0)
        return d
    rs = build_radial_structure(ps)
    choice = choose_strategy(rs)
    log: list[str] = []
    accounting = {"n": n, "c": c, "k": rs.k, "branch": choice.branch.value}
    cells = None
    if choice.branch is Branch.HYBRID:
        res = _hybrid(ps, rs, hull, log)
        if res is not None:
            cells, info = res
            accounting.update(info)
        else:
            accounting["branch_used"] = Branch.BASELINE_SMALL_K.value
    if cells is None:
        inner = pm_decompose(ps, rs) if choice.branch is Branch.PM_EXACT else baseline_decompose(ps, rs)
        cells = list(inner.cells)
        log += inner.discrepancies
        accounting["construction"] = inner.accounting
    accounting["pre_minimalize"] = len(cells)
    accounting["fallbacks"] = len(log)
    out = minimalize(Decomposition(cells, "main", accounting, log), ps)
    out.accounting["cells"] = len(out)
    out.accounting["target"] = target
    out.accounting["slack"] = len(out) - target
    return out
