"""Anchor, angular order, sign labels and the A/B block partition.

Ranks are 1-based: rank 1 is the anchor, ranks 2..n follow increasing
angle about it.  Point indices (0-based) are what every polygon stores.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cmp_to_key

from .geometry import GeneralPositionError, PointSet, in_triangle_interior, orient


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"


class Refined(enum.Enum):
    PP = "++"
    PM = "+-"
    MP = "-+"
    MM = "--"


@dataclass(frozen=True)
class Run:
    """Inclusive rank range ``first..last``; empty when ``last < first``.

    An empty run still has a position: it sits between ranks
    ``first - 1`` and ``first``, which are its flanks.
    """

    first: int
    last: int

    def __len__(self) -> int:
        return max(0, self.last - self.first + 1)

    @property
    def ranks(self) -> range:
        return range(self.first, self.last + 1)

    @property
    def flanks(self) -> tuple[int, int]:
        return self.first - 1, self.last + 1


@dataclass(frozen=True)
class RadialStructure:
    anchor: int
    order: tuple[int, ...]  # order[r - 1] is the point index of rank r
    signs: tuple[Sign | None, ...]  # indexed by rank, None outside 3..n-1
    blocks_A: tuple[Run, ...]
    blocks_B: tuple[Run, ...]

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def k(self) -> int:
        return len(self.blocks_A)

    def point(self, rank: int) -> int:
        return self.order[rank - 1]

    def rank_of(self) -> dict[int, int]:
        return {p: r + 1 for r, p in enumerate(self.order)}

    def plus_ranks(self) -> list[int]:
        return [r for r in range(3, self.n) if self.signs[r] is Sign.PLUS]


def select_anchor(ps: PointSet) -> int:
    return min(range(len(ps)), key=lambda i: (ps[i][1], ps[i][0]))


def radial_order(ps: PointSet, anchor: int) -> tuple[int, ...]:
    """Anchor first, then the other points by increasing angle.

    Every other point lies above the anchor's horizontal line or on it to
    the right, so the cross-product comparison is a total order.
    """
    a = ps[anchor]

    def cmp(i: int, j: int) -> int:
        s = orient(a, ps[i], ps[j])
        if s == 0:
            raise GeneralPositionError(f"collinear points: {anchor}, {i}, {j}", (anchor, i, j))
        return -s

    rest = sorted((i for i in range(len(ps)) if i != anchor), key=cmp_to_key(cmp))
    return (anchor, *rest)


def sign_labels(order: tuple[int, ...], ps: PointSet) -> tuple[Sign | None, ...]:
    n = len(order)
    p1 = ps[order[0]]
    signs: list[Sign | None] = [None] * (n + 1)
    for r in range(3, n):
        inside = in_triangle_interior(ps[order[r - 1]], p1, ps[order[r - 2]], ps[order[r]])
        signs[r] = Sign.MINUS if inside else Sign.PLUS
    return tuple(signs)


def partition_runs(signs, lo: int, hi: int) -> tuple[list[Run], list[Run]]:
    """Alternating A/B runs over the labelled ranks ``lo+1 .. hi-1``.

    The A list always starts and ends the alternation; a missing end run
    is recorded as an empty Run at its position.
    """
    runs: list[tuple[Sign, int, int]] = []
    for r in range(lo + 1, hi):
        s = signs[r]
        if runs and runs[-1][0] is s:
            runs[-1] = (s, runs[-1][1], r)
        else:
            runs.append((s, r, r))
    A: list[Run] = []
    B: list[Run] = []
    if not runs or runs[0][0] is Sign.MINUS:
        A.append(Run(lo + 1, lo))
    for s, first, last in runs:
        (A if s is Sign.PLUS else B).append(Run(first, last))
    if runs and runs[-1][0] is Sign.MINUS:
        A.append(Run(hi, hi - 1))
    assert len(A) == len(B) + 1
    return A, B


def partition_blocks(signs, n: int) -> tuple[tuple[Run, ...], tuple[Run, ...], int]:
    A, B = partition_runs(signs, 2, n)
    return tuple(A), tuple(B), len(A)


def build_radial_structure(ps: PointSet) -> RadialStructure:
    anchor = select_anchor(ps)
    order = radial_order(ps, anchor)
    signs = sign_labels(order, ps)
    A, B, _ = partition_blocks(signs, len(order))
    return RadialStructure(anchor, order, signs, A, B)


def refine_labels(rs: RadialStructure, ps: PointSet) -> dict[int, Refined]:
    """Second-order labels from the two nearest same-sign ranks.

    A point without a same-sign neighbour on one side uses rank 2 (before)
    or rank n (after) instead.
    """
    n = rs.n
    p1 = ps[rs.anchor]
    out: dict[int, Refined] = {}
    for sign, inside_label, outside_label in (
        (Sign.PLUS, Refined.PM, Refined.PP),
        (Sign.MINUS, Refined.MM, Refined.MP),
    ):
        same = [r for r in range(3, n) if rs.signs[r] is sign]
        for t, r in enumerate(same):
            prev_r = same[t - 1] if t > 0 else 2
            next_r = same[t + 1] if t + 1 < len(same) else n
            inside = in_triangle_interior(ps[rs.point(r)], p1, ps[rs.point(prev_r)], ps[rs.point(next_r)])
            out[r] = inside_label if inside else outside_label
    return out


def is_pm_set(rs: RadialStructure) -> bool:
    """Odd labelled ranks negative, even labelled ranks positive."""
    return all(
        rs.signs[r] is (Sign.MINUS if r % 2 else Sign.PLUS) for r in range(3, rs.n)
    )
