"""Weight-graded cohomology of line bundles on products of P^1 and on P^m.

Weight conventions: on P^1 the two sections of O(1) carry weights -1 and +1,
and the fibre of O(-1) at infinity has weight +1.  A graded weight series is
stored as ``{degree: {weight: multiplicity}}`` with zero entries dropped.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

WeightMap = dict[int, int]
GradedWeightSeries = dict[int, WeightMap]


def _clean(series: Mapping[int, Mapping[int, int]]) -> GradedWeightSeries:
    out: GradedWeightSeries = {}
    for d, wm in series.items():
        kept = {w: m for w, m in wm.items() if m}
        if kept:
            out[d] = dict(sorted(kept.items()))
    return dict(sorted(out.items()))


def h_dim(j: int) -> int:
    """Total dimension of the cohomology of O(j) on P^1."""
    if j >= 0:
        return j + 1
    return 0 if j == -1 else -j - 1


@lru_cache(maxsize=None)
def _p1(j: int) -> tuple[tuple[int, tuple[tuple[int, int], ...]], ...]:
    if j >= 0:
        return ((0, tuple((j - 2 * a, 1) for a in range(j + 1))),)
    if j == -1:
        return ()
    return ((1, tuple((w, 1) for w in range(j + 2, -j - 1, 2))),)


def p1_cohomology(j: int) -> GradedWeightSeries:
    return _clean({d: dict(ws) for d, ws in _p1(j)})


def kunneth(jbar: Iterable[int]) -> GradedWeightSeries:
    """Convolve the per-factor series over (P^1)^n."""
    jbar = tuple(jbar)
    if not jbar:
        raise ValueError("exponent vector must be nonempty")
    return _clean(_kunneth_cached(tuple(sorted(jbar))))


@lru_cache(maxsize=65536)
def _kunneth_cached(jbar: tuple[int, ...]) -> GradedWeightSeries:
    acc: GradedWeightSeries = {0: {0: 1}}
    for j in jbar:
        factor = p1_cohomology(j)
        if not factor:
            return {}
        nxt: dict[int, Counter] = {}
        for d1, wm1 in acc.items():
            for d2, wm2 in factor.items():
                bucket = nxt.setdefault(d1 + d2, Counter())
                for w1, m1 in wm1.items():
                    for w2, m2 in wm2.items():
                        bucket[w1 + w2] += m1 * m2
        acc = {d: dict(c) for d, c in nxt.items()}
    return acc


def euler_series(jbar: Iterable[int]) -> WeightMap:
    """Alternating sum over degrees of the Kunneth weight maps."""
    out: Counter = Counter()
    for d, wm in kunneth(jbar).items():
        sign = -1 if d % 2 else 1
        for w, m in wm.items():
            out[w] += sign * m
    return {w: m for w, m in sorted(out.items()) if m}


@lru_cache(maxsize=None)
def euler_at(jbar: tuple[int, ...], weight: int) -> int:
    """Coefficient of ``weight`` in :func:`euler_series` (cached)."""
    return euler_series(jbar).get(weight, 0)


def proj_cohomology(m: int, d: int) -> tuple[int, int]:
    """``(degree, dimension)`` of the nonzero cohomology of O(d) on P^m.

    Returns ``(0, 0)`` when O(d) is acyclic.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if d >= 0:
        return (0, comb(d + m, m))
    if d >= -m:
        return (0, 0)
    return (m, comb(-d - 1, m))


def proj_euler(m: int, d: int) -> int:
    deg, dim = proj_cohomology(m, d)
    return -dim if deg % 2 else dim


def biproj_euler(s: int, a: int, b: int) -> int:
    """Euler characteristic of O(a, b) on P^s x P^s."""
    return proj_euler(s, a) * proj_euler(s, b)


def biproj_acyclic(s: int, a: int, b: int) -> bool:
    return proj_cohomology(s, a)[1] == 0 or proj_cohomology(s, b)[1] == 0


def serre_dual_p1(j: int) -> GradedWeightSeries:
    """H^1(O(j)) recomputed from equivariant Serre duality on P^1.

    H^1(O(j)) is dual to H^0(O(-j-2)) since the canonical bundle is O(-2)
    with trivial fixed-point twist; dualizing negates weights.  Kept as an
    independent oracle for the closed form in :func:`p1_cohomology`.
    """
    h0 = p1_cohomology(-j - 2).get(0, {})
    if not h0:
        return {}
    return {1: dict(sorted((-w, m) for w, m in h0.items()))}
