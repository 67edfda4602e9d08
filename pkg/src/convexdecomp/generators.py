"""Seeded point-set generators.

All generators are pure functions of their arguments: randomness comes
from a ``random.Random`` seeded with a string built from the arguments.
"""

from __future__ import annotations

import math
import random

import numpy as np

from .geometry import PointSet, find_parallel_pair
from .radial import Sign, build_radial_structure

MAX_RESAMPLES = 100_000


class GenerationError(RuntimeError):
    pass


def _rng(*parts) -> random.Random:
    return random.Random(":".join(str(p) for p in parts))


def _fits(arr: np.ndarray, m: int, p: tuple[int, int]) -> bool:
    """p is distinct from, and not collinear with any two of, arr[:m]."""
    if m == 0:
        return True
    d = arr[:m] - np.asarray(p, dtype=np.int64)
    return find_parallel_pair(d) is None


def gen_random(n: int, seed: int, coord_range: int = 10**6) -> PointSet:
    """n points uniform in [0, coord_range]^2, rejection-sampled into general position."""
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = _rng("random", n, seed, coord_range)
    arr = np.zeros((n, 2), dtype=np.int64)
    m = tries = 0
    while m < n:
        p = (rng.randint(0, coord_range), rng.randint(0, coord_range))
        tries += 1
        if tries > MAX_RESAMPLES:
            raise GenerationError(f"resample limit exceeded (n={n}, range={coord_range})")
        if _fits(arr, m, p):
            arr[m] = p
            m += 1
    return PointSet(arr.tolist(), validate=False)


def _signs_of(points: list[tuple[int, int]]) -> list[Sign | None]:
    rs = build_radial_structure(PointSet(points, validate=False))
    # generated points are listed in intended radial order
    if list(rs.order) != list(range(len(points))):
        raise GenerationError("radial order differs from construction order")
    return list(rs.signs)


def gen_signed(pattern: str, seed: int, radius: int = 10**6, max_rounds: int = 400) -> PointSet:
    """Point set whose radial signs for ranks 3..n-1 follow ``pattern``.

    ``pattern`` is a string over ``+``/``-`` of length n - 3.  Points sit on
    a fan of rays from the anchor at the origin.  Positive ranks follow a
    slowly varying radius profile; each negative run is pushed inward as a
    valley.  Integer rounding can flip marginal signs, so signs are
    recomputed and offending radii nudged until the pattern holds exactly.
    The output lists points in radial order (index 0 is the anchor).
    """
    n = len(pattern) + 3
    if any(ch not in "+-" for ch in pattern):
        raise ValueError("pattern must use only '+' and '-'")
    rng = _rng("signed", pattern, seed, radius)
    want = [None, None, None] + [Sign.PLUS if ch == "+" else Sign.MINUS for ch in pattern] + [None]
    m = n - 1
    lo, hi = 0.05, math.pi - 0.05
    step = (hi - lo) / (m - 1)
    theta = [lo + step * (j + rng.uniform(-0.3, 0.3) * (0 < j < m - 1)) for j in range(m)]
    amp, freq, phase = rng.uniform(0.0, 0.3), rng.choice((1, 2, 3)), rng.uniform(0, 2 * math.pi)
    rad = [radius * (1 + amp * math.sin(freq * t + phase)) for t in theta]
    # ranks are j + 2; perturb positives lightly and carve valleys for negative runs
    r = 3
    while r < n:
        if want[r] is Sign.PLUS:
            rad[r - 2] *= 1 + rng.uniform(-1.0, 1.0) * 0.25 * step * step
            r += 1
            continue
        end = r
        while end + 1 < n and want[end + 1] is Sign.MINUS:
            end += 1
        L = end - r + 1
        depth = rng.uniform(0.03, 0.4)
        for t in range(L):
            w = math.sin(math.pi * (t + 1) / (L + 1)) * rng.uniform(0.7, 1.0)
            rad[r + t - 2] *= 1 - depth * w
        r = end + 1
    for _ in range(max_rounds):
        pts = [(0, 0)] + [
            (round(q * math.cos(t)), max(1, round(q * math.sin(t)))) for q, t in zip(rad, theta)
        ]
        try:
            got = _signs_of(pts)
        except (GenerationError, ValueError):
            got = None
        if got is not None:
            wrong = [r for r in range(3, n) if got[r] is not want[r]]
            if not wrong:
                arr = np.asarray(pts, dtype=np.int64)
                bad = next((i for i in range(1, n) if not _fits(np.delete(arr, i, 0), n - 1, pts[i])), None)
                if bad is None:
                    return PointSet(pts, validate=False)
                rad[bad - 1] *= 1 + rng.uniform(-1e-4, 1e-4)
                continue
            for r in wrong:
                rad[r - 2] *= 0.97 if want[r] is Sign.MINUS else 1.0 + 0.5 * step * step
        else:
            theta = [t + rng.uniform(-1e-6, 1e-6) for t in theta]
    raise GenerationError(f"could not realise sign pattern {pattern!r} (seed={seed})")


def pm_pattern(n: int) -> str:
    return "".join("-" if r % 2 else "+" for r in range(3, n))


def gen_pm_set(n: int, seed: int) -> PointSet:
    """A point set whose signs alternate: odd ranks negative, even positive."""
    if n < 5:
        raise ValueError("n must be at least 5")
    for attempt in range(20):
        try:
            return gen_signed(pm_pattern(n), seed if attempt == 0 else f"{seed}/{attempt}")
        except GenerationError:
            continue
    raise GenerationError(f"gen_pm_set failed for n={n}, seed={seed}")


def gen_near_pm(n: int, seed: int, flips: int | None = None) -> PointSet:
    """An alternating pattern with a few signs flipped.

    Each flip merges three blocks into one, lowering k by one, so with
    fewer than n/14 flips the set lands strictly between 3n/7 and n/2.
    """
    if n < 8:
        raise ValueError("n must be at least 8")
    rng = _rng("near", n, seed, flips)
    pattern = list(pm_pattern(n))
    if flips is None:
        flips = max(1, (n - 1) // 14 - 1)
    interior = list(range(1, len(pattern) - 1))
    for pos in rng.sample(interior, min(flips, len(interior))):
        pattern[pos] = "+" if pattern[pos] == "-" else "-"
    for attempt in range(20):
        try:
            return gen_signed("".join(pattern), seed if attempt == 0 else f"{seed}/{attempt}")
        except GenerationError:
            continue
    raise GenerationError(f"gen_near_pm failed for n={n}, seed={seed}")
