import pytest

from convexdecomp.baseline import baseline_decompose
from convexdecomp.decomposition import Decomposition
from convexdecomp.generators import gen_random
from convexdecomp.geometry import PointSet
from convexdecomp.minimal import decompose
from convexdecomp.verifier import check_disjoint_and_cover, verify


def test_valid_five(five):
    r = verify(Decomposition([(0, 1, 3), (0, 3, 2, 4), (1, 2, 3)], "file"), five)
    assert r.passed
    assert "CHECK C1 PASS" in r.text()


def test_hull_cell_contains_a_point(five):
    r = verify(Decomposition([(0, 1, 2, 4)], "file"), five)
    assert not r["C1"].passed
    assert "point=3" in r["C1"].witness


def test_missing_area(five):
    r = verify(Decomposition([(0, 1, 3), (1, 2, 3)], "file"), five)
    assert not r["C3"].passed and "area2 sum" in r["C3"].witness


def test_overlap_found():
    ps = PointSet([(0, 0), (10, 0), (10, 10), (0, 10)])
    d = Decomposition([(0, 1, 2), (0, 2, 3), (0, 1, 3)], "file")
    r = verify(d, ps)
    assert not r["C2"].passed and "cells=" in r["C2"].witness


def test_non_minimal_pair():
    ps = PointSet([(0, 0), (10, 0), (10, 10), (0, 10)])
    r = verify(Decomposition([(0, 1, 2), (0, 2, 3)], "file"), ps)
    assert r["C1"].passed and r["C2"].passed and r["C3"].passed
    assert not r["minimal"].passed and "union=(0, 1, 2, 3)" in r["minimal"].witness


def test_bad_index_is_structural(five):
    r = verify(Decomposition([(0, 1, 9)], "file"), five)
    assert not r.passed and not r["structure"].passed


def test_non_convex_cell():
    ps = PointSet([(0, 0), (4, 0), (1, 1), (0, 4)])
    r = verify(Decomposition([(0, 1, 2, 3), (1, 3, 2)], "file"), ps)
    assert not r["convex"].passed


@pytest.mark.parametrize("seed", range(8))
def test_certificate_agrees_with_pairwise(seed):
    ps = gen_random(60, seed)
    for d in (baseline_decompose(ps), decompose(ps)):
        a = check_disjoint_and_cover(d, ps, method="auto")
        b = check_disjoint_and_cover(d, ps, method="pairwise")
        assert [x.passed for x in a] == [x.passed for x in b] == [True, True]


def test_bounds_line(five):
    r = verify(baseline_decompose(five), five, k=2)
    assert r.counts["target"] == 10 * 5 // 7 - 4
    assert r.counts["baseline"] == 3
