import pytest

from convexdecomp.baseline import (
    baseline_decompose,
    build_A_polygon,
    build_B_fans,
    build_B_polygon,
    compute_pockets,
    triangulate_pockets,
)
from convexdecomp.generators import gen_random, gen_signed
from convexdecomp.geometry import PointSet, area2, convex_hull, is_convex
from convexdecomp.radial import build_radial_structure
from convexdecomp.verifier import verify


def test_five_point_polygons(five):
    rs = build_radial_structure(five)
    assert build_A_polygon(1, rs) == (0, 1, 3)
    assert build_A_polygon(2, rs) == (0, 3, 2, 4)
    assert is_convex(build_A_polygon(2, rs), five)
    b = build_B_polygon(1, rs, five)
    assert sorted(b) == [1, 2, 3] and area2(b, five) == 7
    assert build_B_fans(rs) == []
    assert compute_pockets(rs, five).pockets == []


def test_five_point_decomposition(five):
    d = baseline_decompose(five)
    assert d.canonical_cells() == [(0, 1, 3), (0, 3, 2, 4), (1, 2, 3)]
    assert sum(area2(c, five) for c in d.cells) == 32 == area2(convex_hull(five), five)
    assert verify(d, five).passed


def test_triangle():
    ps = PointSet([(0, 0), (5, 1), (1, 4)])
    d = baseline_decompose(ps)
    assert len(d) == 1


def test_all_plus_single_fan():
    pts = [(0, 0), (10, 1), (12, 6), (9, 11), (3, 12), (-4, 7)]
    ps = PointSet(pts)
    rs = build_radial_structure(ps)
    assert build_A_polygon(1, rs) == (0, 1, 2, 3, 4, 5)
    assert len(baseline_decompose(ps)) == 1


def test_fan_triangles_inside_long_negative_run():
    ps = gen_signed("+---+", 3)
    rs = build_radial_structure(ps)
    assert [len(b) for b in rs.blocks_B] == [3]
    fans = build_B_fans(rs)
    assert [tuple(sorted(rs.rank_of()[v] for v in t)) for t in fans] == [(1, 4, 5), (1, 5, 6)]


def test_pocket_triangulation_count():
    # the positive point (4, 4) lies below the hull edge from (10, 0) to (0, 10)
    ps = PointSet([(0, 0), (10, 0), (5, 2), (4, 4), (2, 4), (0, 10)])
    rs = build_radial_structure(ps)
    pockets = compute_pockets(rs, ps)
    assert len(pockets.pockets) == 1
    tris = triangulate_pockets(pockets, ps)
    assert len(tris) == len(pockets.pockets[0]) - 2


def test_fifteen_points(fifteen):
    rs = build_radial_structure(fifteen)
    assert (rs.n, rs.k, len(convex_hull(fifteen))) == (15, 4, 3)
    d = baseline_decompose(fifteen)
    assert len(d) == 16 and not d.discrepancies
    assert verify(d, fifteen, minimality=False).passed


@pytest.mark.parametrize("seed", range(30))
def test_count_identity_random(seed):
    ps = gen_random(5 + seed * 3, seed)
    d = baseline_decompose(ps)
    a = d.accounting
    assert a["fallbacks"] == 0
    assert len(d) == a["n"] + a["k"] - a["c"]
    r = verify(d, ps, minimality=False)
    assert r.passed, r.text()
