"""Exact integer planar predicates and polygon helpers.

Points are ``(x, y)`` tuples of Python ints.  Polygons are tuples of point
indices into a :class:`PointSet`, counterclockwise, and canonically rotated
to start at their smallest index.  Nothing in this module touches floats.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

COORD_LIMIT = 10**9
# exhaustive general-position scan up to this size, lazy above
EXHAUSTIVE_GP_LIMIT = 2000

Point = tuple[int, int]
Polygon = tuple[int, ...]


class GeneralPositionError(ValueError):
    """Raised when duplicate points or a collinear triple are found."""

    def __init__(self, message: str, indices: tuple[int, ...] = ()):
        super().__init__(message)
        self.indices = indices


def orient(a: Point, b: Point, c: Point) -> int:
    """Sign of the cross product (b - a) x (c - a)."""
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def cross(a: Point, b: Point, c: Point) -> int:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def in_triangle_interior(p: Point, a: Point, b: Point, c: Point) -> bool:
    s = orient(a, b, c)
    if s == 0:
        raise GeneralPositionError("degenerate triangle")
    return orient(a, b, p) == s and orient(b, c, p) == s and orient(c, a, p) == s


def _direction_keys(d: np.ndarray) -> np.ndarray:
    """Primitive direction of each row, sign-normalised so parallel rows agree."""
    dx = d[:, 0].copy()
    dy = d[:, 1].copy()
    g = np.gcd(dx, dy)
    g[g == 0] = 1
    dx //= g
    dy //= g
    flip = (dx < 0) | ((dx == 0) & (dy < 0))
    dx[flip] = -dx[flip]
    dy[flip] = -dy[flip]
    return np.stack([dx, dy], axis=1)


def find_parallel_pair(d: np.ndarray) -> tuple[int, int] | None:
    """Positions of two rows of ``d`` that are zero or parallel, if any."""
    zero = np.flatnonzero((d[:, 0] == 0) & (d[:, 1] == 0))
    if len(zero):
        return int(zero[0]), int(zero[0])
    if len(d) < 2:
        return None
    keys = _direction_keys(d)
    order = np.lexsort((keys[:, 1], keys[:, 0]))
    k = keys[order]
    same = np.flatnonzero((k[1:, 0] == k[:-1, 0]) & (k[1:, 1] == k[:-1, 1]))
    if len(same):
        j = int(same[0])
        return int(order[j]), int(order[j + 1])
    return None


def find_degeneracy(points: Sequence[Point]) -> tuple[str, tuple[int, ...]] | None:
    """Return ``("duplicate", (i, j))`` or ``("collinear", (i, j, l))`` or None.

    Every collinear triple i < j < l is caught at i: the directions from
    p_i to p_j and to p_l are parallel.  O(n^2 log n) with numpy.
    """
    arr = np.asarray(points, dtype=np.int64).reshape(-1, 2)
    n = len(arr)
    for i in range(n - 1):
        d = arr[i + 1:] - arr[i]
        hit = find_parallel_pair(d)
        if hit is None:
            continue
        j, l = hit
        if j == l:
            return "duplicate", (i, i + 1 + j)
        j, l = sorted((i + 1 + j, i + 1 + l))
        return "collinear", (i, j, l)
    return None


class PointSet:
    """Immutable indexed point list in general position."""

    __slots__ = ("points", "_hash")

    def __init__(self, points: Iterable[Sequence[int]], validate: bool = True):
        pts = tuple((int(p[0]), int(p[1])) for p in points)
        if len(pts) < 3:
            raise ValueError(f"need at least 3 points, got {len(pts)}")
        for i, (x, y) in enumerate(pts):
            if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
                raise ValueError(f"point {i} = {(x, y)} exceeds coordinate bound {COORD_LIMIT}")
        self.points = pts
        self._hash = None
        if validate and len(pts) <= EXHAUSTIVE_GP_LIMIT:
            bad = find_degeneracy(pts)
            if bad is not None:
                kind, idx = bad
                where = ", ".join(f"{i}:{pts[i]}" for i in idx)
                raise GeneralPositionError(f"{kind} points: {where}", idx)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.points)
        return self._hash

    def __repr__(self) -> str:
        return f"PointSet(n={len(self.points)})"

    @property
    def n(self) -> int:
        return len(self.points)

    def orient(self, i: int, j: int, k: int) -> int:
        s = orient(self.points[i], self.points[j], self.points[k])
        if s == 0 and len({i, j, k}) == 3:
            raise GeneralPositionError(f"collinear points: {i}, {j}, {k}", (i, j, k))
        return s

    def subset(self, indices: Sequence[int]) -> PointSet:
        """Sub-point-set in the given index order (general position inherited)."""
        return PointSet([self.points[i] for i in indices], validate=False)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=np.int64)


def canonical(poly: Sequence[int]) -> Polygon:
    """Rotate an index cycle to start at its smallest index."""
    m = min(range(len(poly)), key=poly.__getitem__)
    return tuple(poly[m:]) + tuple(poly[:m])


def area2(poly: Sequence[int], ps: PointSet) -> int:
    """Twice the signed area (shoelace); positive for CCW."""
    pts = ps.points
    s = 0
    m = len(poly)
    for t in range(m):
        x0, y0 = pts[poly[t]]
        x1, y1 = pts[poly[(t + 1) % m]]
        s += x0 * y1 - x1 * y0
    return s


def ccw(poly: Sequence[int], ps: PointSet) -> Polygon:
    """The polygon oriented counterclockwise, canonical rotation."""
    if area2(poly, ps) < 0:
        poly = tuple(reversed(poly))
    return canonical(tuple(poly))


def is_convex(poly: Sequence[int], ps: PointSet) -> bool:
    """Strictly convex, counterclockwise, winding once.

    Left turns alone admit star polygons (pentagram), so the vertices must
    also appear in angular order around the first one.
    """
    m = len(poly)
    if m < 3:
        return False
    pts = ps.points
    for t in range(m):
        if orient(pts[poly[t - 1]], pts[poly[t]], pts[poly[(t + 1) % m]]) <= 0:
            return False
    v0 = pts[poly[0]]
    for t in range(1, m - 1):
        if orient(v0, pts[poly[t]], pts[poly[t + 1]]) <= 0:
            return False
    return True


def convex_hull(ps: PointSet) -> Polygon:
    """Counterclockwise hull (Andrew's monotone chain), canonical rotation."""
    pts = ps.points
    idx = sorted(range(len(pts)), key=pts.__getitem__)

    def chain(seq):
        out: list[int] = []
        for i in seq:
            while len(out) >= 2:
                s = orient(pts[out[-2]], pts[out[-1]], pts[i])
                if s == 0:
                    raise GeneralPositionError(
                        f"collinear points on hull: {out[-2]}, {out[-1]}, {i}", (out[-2], out[-1], i)
                    )
                if s > 0:
                    break
                out.pop()
            out.append(i)
        return out

    lower = chain(idx)
    upper = chain(reversed(idx))
    return canonical(tuple(lower[:-1] + upper[:-1]))


def point_in_convex(p: Point, poly: Sequence[int], ps: PointSet) -> bool:
    """Strict interior test for a CCW convex polygon."""
    pts = ps.points
    m = len(poly)
    for t in range(m):
        if orient(pts[poly[t]], pts[poly[(t + 1) % m]], p) <= 0:
            return False
    return True


def edges(poly: Sequence[int]):
    m = len(poly)
    for t in range(m):
        yield poly[t], poly[(t + 1) % m]


def shared_edges(a: Sequence[int], b: Sequence[int]) -> list[tuple[int, int]]:
    """Directed edges (u, v) of ``a`` whose reverse is an edge of ``b``."""
    eb = set(edges(b))
    return [(u, v) for u, v in edges(a) if (v, u) in eb]


def edge_join(a: Sequence[int], b: Sequence[int], ps: PointSet | None = None) -> Polygon:
    """Union of two CCW polygons across their single shared edge.

    With ``ps`` given, also rejects pairs lying on the same side of the
    shared edge (overlapping interiors).  The result need not be convex.
    """
    common = shared_edges(a, b)
    if not common:
        raise ValueError("no shared edge")
    if len(common) > 1:
        raise ValueError(f"more than one shared edge: {common}")
    u, v = common[0]
    if ps is not None:
        if area2(a, ps) <= 0 or area2(b, ps) <= 0:
            raise ValueError("polygons must be counterclockwise")
        if polygons_overlap(a, b, ps):
            raise ValueError("overlapping interiors")
    # b rotated to start at u runs u, w1, ..., wm, v
    rb = list(b).index(u)
    brot = list(b[rb:]) + list(b[:rb])
    middle = brot[1:-1]
    ra = list(a).index(u)
    arot = list(a[ra:]) + list(a[:ra])
    joined = [u] + middle + arot[1:]
    if len(set(joined)) != len(joined):
        raise ValueError("join is not a simple polygon")
    return canonical(tuple(joined))


def join_is_convex(a: Sequence[int], b: Sequence[int], u: int, v: int, ps: PointSet) -> bool:
    """Local test: convex ``a`` (with edge u->v) and convex ``b`` (with v->u).

    Only the two endpoints of the removed edge can become reflex.
    """
    pts = ps.points
    ia = a.index(u)
    a_prev = a[ia - 1]
    a_next = a[(a.index(v) + 1) % len(a)]
    ib = b.index(u)
    b_next = b[(ib + 1) % len(b)]
    b_prev = b[b.index(v) - 1]
    return orient(pts[a_prev], pts[u], pts[b_next]) > 0 and orient(pts[b_prev], pts[v], pts[a_next]) > 0


def ear_clip(poly: Sequence[int], ps: PointSet) -> list[Polygon]:
    """Triangulate a simple CCW polygon; ears taken lowest-position first."""
    pts = ps.points
    verts = list(poly)
    tris: list[Polygon] = []
    while len(verts) > 3:
        m = len(verts)
        for t in range(m):
            a, b, c = verts[t - 1], verts[t], verts[(t + 1) % m]
            pa, pb, pc = pts[a], pts[b], pts[c]
            if orient(pa, pb, pc) <= 0:
                continue
            if any(
                orient(pa, pb, pts[w]) > 0 and orient(pb, pc, pts[w]) > 0 and orient(pc, pa, pts[w]) > 0
                for w in verts
                if w != a and w != b and w != c
            ):
                continue
            tris.append(canonical((a, b, c)))
            del verts[t]
            break
        else:
            raise ValueError("no ear found; polygon is not simple")
    tris.append(canonical(tuple(verts)))
    return tris


def fan(poly: Sequence[int]) -> list[Polygon]:
    """Fan triangulation from the first vertex (valid for convex polygons)."""
    return [canonical((poly[0], poly[t], poly[t + 1])) for t in range(1, len(poly) - 1)]


def is_simple(poly: Sequence[int], ps: PointSet) -> bool:
    """No repeated vertex and no two non-adjacent edges touching."""
    m = len(poly)
    if m < 3 or len(set(poly)) != m:
        return False
    pts = ps.points
    es = [(pts[poly[t]], pts[poly[(t + 1) % m]]) for t in range(m)]
    for s in range(m):
        for t in range(s + 1, m):
            if t == s + 1 or (s == 0 and t == m - 1):
                continue
            if segments_touch(*es[s], *es[t]):
                return False
    return True


def segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Closed segments ab and cd intersect."""
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4:
        return True

    def on(p, q, r):
        return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])

    return (o1 == 0 and on(a, b, c)) or (o2 == 0 and on(a, b, d)) or \
        (o3 == 0 and on(c, d, a)) or (o4 == 0 and on(c, d, b))


def convex_interiors_overlap(a: Sequence[Point], b: Sequence[Point]) -> bool:
    """Separating-axis test for two CCW convex polygons given as coordinates.

    Interiors are disjoint iff some edge line of either polygon leaves the
    other polygon in its closed outer half-plane.
    """
    for poly, other in ((a, b), (b, a)):
        m = len(poly)
        for t in range(m):
            p, q = poly[t], poly[(t + 1) % m]
            if all(orient(p, q, r) <= 0 for r in other):
                return False
    return True


def polygons_overlap(a: Sequence[int], b: Sequence[int], ps: PointSet) -> bool:
    """Interior intersection test for simple CCW polygons (via triangles)."""
    pts = ps.points
    ta = [a] if is_convex(a, ps) else ear_clip(a, ps)
    tb = [b] if is_convex(b, ps) else ear_clip(b, ps)
    return any(
        convex_interiors_overlap([pts[i] for i in x], [pts[i] for i in y]) for x in ta for y in tb
    )
