"""Decomposition of alternating-sign ("±") point sets.

Ranks 2, 8, 14, ... start blocks of seven consecutive points which,
with the anchor, are cut into nine fixed triangles t1..t9.  The refined
labels of the block's middle points pick a merge plan: which triangles get
glued into larger convex cells.  Neighbouring blocks are then glued across
their shared anchor edge.  Ranks after the last full block are tiled like
the n + k - c construction, and pockets outside the star polygon are
triangulated.  Every convexity is checked when the cell is built.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .baseline import compute_pockets, triangulate_pockets, v_tiling
from .decomposition import Decomposition
from .geometry import (
    GeneralPositionError,
    Polygon,
    PointSet,
    ccw,
    convex_hull,
    edge_join,
    is_convex,
)
from .radial import RadialStructure, Refined, build_radial_structure, is_pm_set, refine_labels


class NotPmSetError(ValueError):
    pass


class Side(enum.Enum):
    D = "D"  # open side of the line through block ranks 1 and 3 holding the anchor
    U = "U"


# triangle t -> offsets into the block (None is the anchor)
TRIANGLES = {
    1: (None, 0, 1),
    2: (None, 1, 3),
    3: (None, 3, 5),
    4: (None, 5, 6),
    5: (0, 1, 2),
    6: (1, 2, 3),
    7: (2, 3, 4),
    8: (3, 4, 5),
    9: (4, 5, 6),
}


@dataclass(frozen=True)
class QBlock:
    i: int
    ranks: tuple[int, ...]  # seven ranks; reversed when mirrored
    mirrored: bool = False

    def tri_ranks(self, t: int) -> tuple[int, ...]:
        return tuple(1 if o is None else self.ranks[o] for o in TRIANGLES[t])

    def mirror(self) -> QBlock:
        return QBlock(self.i, tuple(reversed(self.ranks)), not self.mirrored)


@dataclass(frozen=True)
class MergePlan:
    groups: tuple[tuple[int, ...], ...]
    case: str
    branch: str = ""
    quad: tuple[int, ...] | None = None  # ranks, case (b) only
    block: QBlock | None = None


@dataclass
class BlockResult:
    cells: list[Polygon]
    owner: dict[frozenset, int]  # actual triangle ranks -> position in cells
    removed: frozenset[int] = frozenset()
    log: list[str] = field(default_factory=list)


def base_triangles(i: int, rs: RadialStructure) -> QBlock:
    if i < 2 or i + 6 > rs.n:
        raise ValueError(f"block at rank {i} exceeds n={rs.n}")
    return QBlock(i, tuple(range(i, i + 7)))


def tri_polygon(block: QBlock, t: int, rs: RadialStructure, ps: PointSet) -> Polygon:
    return ccw(tuple(rs.point(r) for r in block.tri_ranks(t)), ps)


def halfplane_side(rank: int, block: QBlock, rs: RadialStructure, ps: PointSet) -> Side:
    a, b = rs.point(block.ranks[1]), rs.point(block.ranks[3])
    s = ps.orient(a, b, rs.point(rank))
    if s == 0:
        raise GeneralPositionError(f"rank {rank} lies on the line through ranks {block.ranks[1]}, {block.ranks[3]}")
    return Side.D if s == ps.orient(a, b, rs.anchor) else Side.U


def join_group(block: QBlock, group, rs: RadialStructure, ps: PointSet) -> Polygon | None:
    """Edge-join the group's triangles in chain order; None if they do not chain."""
    polys = [tri_polygon(block, t, rs, ps) for t in group]
    cur, rest = polys[0], polys[1:]
    while rest:
        for j, p in enumerate(rest):
            try:
                cur = edge_join(cur, p)
            except ValueError:
                continue
            del rest[j]
            break
        else:
            return None
    return cur


def _convex_group(block, group, rs, ps) -> bool:
    poly = join_group(block, group, rs, ps)
    return poly is not None and is_convex(poly, ps)


MP_PLANS = {
    (Side.D, Side.D): ((1, 2, 3, 8), (4,), (5,), (6,), (7,), (9,)),
    (Side.U, Side.D): ((1,), (2, 3, 8), (5, 6), (4,), (7,), (9,)),
    (Side.D, Side.U): ((1, 2, 3), (4,), (5,), (6, 7), (8,), (9,)),
    (Side.U, Side.U): ((1,), (2, 3), (4,), (5, 6, 7), (8,), (9,)),
}
HEX_PLAN = ((1,), (2,), (3,), (4,), (5, 6, 7, 8), (9,))


def select_merge_plan(block: QBlock, labels: dict[int, Refined], rs: RadialStructure, ps: PointSet) -> MergePlan:
    r = block.ranks
    l2, l3, l4 = labels[r[2]], labels[r[3]], labels[r[4]]
    if l2 not in (Refined.PP, Refined.PM) or l4 not in (Refined.PP, Refined.PM) or l3 not in (Refined.MM, Refined.MP):
        raise NotPmSetError(f"block at rank {block.i} does not alternate signs")
    if (l2, l4) == (Refined.PM, Refined.PP):
        if block.mirrored:
            raise AssertionError("mirroring twice")
        plan = select_merge_plan(block.mirror(), labels, rs, ps)
        return MergePlan(plan.groups, "mirror", f"{plan.case}/{plan.branch}", plan.quad, plan.block)
    if (l2, l4) == (Refined.PM, Refined.PM):
        return MergePlan(
            ((1,), (2, 6), (3, 8), (4,), (5,), (7,), (9,)), "b", "", (r[0], r[2], r[4], r[6]), block
        )
    case = "a" if (l2, l4) == (Refined.PP, Refined.PM) else "c"
    if l3 is Refined.MP:
        sides = (halfplane_side(r[0], block, rs, ps), halfplane_side(r[4], block, rs, ps))
        return MergePlan(MP_PLANS[sides], case, f"MP-{sides[0].value}{sides[1].value}", None, block)
    side0 = halfplane_side(r[0], block, rs, ps)
    if case == "a":
        if side0 is Side.D:
            if _convex_group(block, (6, 7, 8), rs, ps):
                return MergePlan(((1, 2), (3,), (4,), (5,), (6, 7, 8), (9,)), case, "MM-D-pentagon", None, block)
            return MergePlan(((1, 2), (3, 8), (4,), (5,), (6, 7), (9,)), case, "MM-D-split", None, block)
        if _convex_group(block, (5, 6, 7, 8), rs, ps):
            return MergePlan(HEX_PLAN, case, "MM-U-hexagon", None, block)
        return MergePlan(((1,), (2,), (3, 8), (4,), (5, 6, 7), (9,)), case, "MM-U-split", None, block)
    if side0 is Side.D and not _convex_group(block, (5, 6, 7, 8), rs, ps):
        return MergePlan(((1, 2), (3,), (4,), (5,), (6, 7, 8), (9,)), case, "MM-D-split", None, block)
    return MergePlan(HEX_PLAN, case, f"MM-{side0.value}-hexagon", None, block)


def apply_merge_plan(plan: MergePlan, rs: RadialStructure, ps: PointSet) -> BlockResult:
    """Build the block's cells; a non-convex group falls back to its triangles."""
    block = plan.block
    out = BlockResult([], {})
    for group in plan.groups:
        poly = join_group(block, group, rs, ps)
        if poly is not None and is_convex(poly, ps):
            pieces = [(poly, group)]
        else:
            out.log.append(f"block {block.i} {plan.case}/{plan.branch}: group t{group} not convex; split")
            pieces = [(tri_polygon(block, t, rs, ps), (t,)) for t in group]
        for poly, ts in pieces:
            for t in ts:
                out.owner[frozenset(block.tri_ranks(t))] = len(out.cells)
            out.cells.append(poly)
    if plan.quad is not None:
        q = ccw(tuple(rs.point(r) for r in plan.quad), ps)
        inner = plan.quad[1:3]
        a, d = rs.point(plan.quad[0]), rs.point(plan.quad[3])
        side = ps.orient(a, d, rs.anchor)
        # the dropped points are reflex in V, so they lie on the anchor's side of the chord
        if is_convex(q, ps) and all(ps.orient(a, d, rs.point(x)) == side for x in inner):
            out.cells.append(q)
            out.removed = frozenset(inner)
        else:
            out.log.append(f"block {block.i}: case (b) quadrilateral {plan.quad} not convex; left to pockets")
    return out


def merge_across_blocks(cells: list[Polygon | None], owners: list[dict], blocks: list[QBlock],
                        rs: RadialStructure, ps: PointSet, log: list[str]) -> int:
    """Glue the last fan cell of each block to the first fan cell of the next.

    Cells are merged in place (the second slot becomes None).  Returns the
    number of joins made; one is attempted per block boundary.
    """
    merges = 0
    for b in range(len(blocks) - 1):
        i = blocks[b].i
        left = owners[b][frozenset((1, i + 5, i + 6))]
        right = owners[b + 1][frozenset((1, i + 6, i + 7))]
        try:
            joined = edge_join(cells[left], cells[right])
        except ValueError as exc:
            log.append(f"cross-block join at rank {i + 6} impossible: {exc}")
            continue
        if not is_convex(joined, ps):
            log.append(f"cross-block join at rank {i + 6} not convex; skipped")
            continue
        cells[left] = joined
        cells[right] = None
        for own in owners[b + 1:]:
            for key, pos in own.items():
                if pos == right:
                    own[key] = left
        merges += 1
    return merges


def pm_decompose(ps: PointSet, rs: RadialStructure | None = None) -> Decomposition:
    if rs is None:
        rs = build_radial_structure(ps)
    if not is_pm_set(rs):
        raise NotPmSetError("not a ± set")
    n = rs.n
    hull = convex_hull(ps)
    c = len(hull)
    labels = refine_labels(rs, ps)
    rank_of = rs.rank_of()
    log: list[str] = []
    cells: list[Polygon | None] = []
    owners: list[dict] = []
    blocks: list[QBlock] = []
    plans: list[str] = []
    removed: set[int] = set()
    b_count = 0
    i = 2
    while i + 6 <= n:
        block = base_triangles(i, rs)
        plan = select_merge_plan(block, labels, rs, ps)
        res = apply_merge_plan(plan, rs, ps)
        plans.append(f"{plan.case}/{plan.branch}" if plan.branch else plan.case)
        if plan.quad is not None and res.removed:
            b_count += 1
        offset = len(cells)
        cells += res.cells
        owners.append({key: pos + offset for key, pos in res.owner.items()})
        blocks.append(block)
        removed |= res.removed
        log += res.log
        i += 6
    tail_start = i
    tail: list[Polygon] = []
    if tail_start < n:
        tail, _ = v_tiling(rs, ps, tail_start, n, log, rank_of)
    merges = merge_across_blocks(cells, owners, blocks, rs, ps, log)
    block_cells = [cell for cell in cells if cell is not None]
    pockets = compute_pockets(rs, ps, hull, frozenset(removed))
    t_u = triangulate_pockets(pockets, ps)
    out = block_cells + tail + t_u
    m = len(blocks)
    accounting = {
        "n": n,
        "c": c,
        "k": rs.k,
        "blocks": m,
        "b": b_count,
        "plans": plans,
        "merges": merges,
        "merges_attempted": max(0, m - 1),
        "tail_cells": len(tail),
        "T_U": len(t_u),
        "block_formula": 6 * m + 2 * b_count + len(t_u) - merges + len(tail),
        "ideal": 4 * n / 3 - c,
        "cells": len(out),
        "fallbacks": len(log),
    }
    return Decomposition(out, "pm", accounting, log)
