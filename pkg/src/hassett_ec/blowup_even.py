"""Even-n machinery on the blow-up W of (P^1)^n at the balanced fixed points.

``E_T`` lies over the torus-fixed point ``p_T`` of (P^1)^n where the markings
in ``T`` sit at infinity and the others at zero.  ``E_T`` is a projective
space of dimension ``n - 1`` whose homogeneous coordinates split into ``s + 1``
of weight +2 and ``s + 1`` of weight -2.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .cohomology import euler_at, kunneth
from .core_model import GitLineBundle, Subset, all_subsets, half_rank, half_subsets

WeightMap = dict[int, int]


def _require_even(n: int) -> None:
    if n % 2 or n < 2:
        raise ValueError(f"expected an even n >= 2, got {n}")


def point_fiber_weight(bundle: GitLineBundle, T: Subset) -> int:
    """Weight of ``O(exponents)`` at ``p_T``: ``-sum_T j + sum_{T^c} j``."""
    inside = set(T)
    return sum(-j if i in inside else j for i, j in enumerate(bundle.exponents, start=1))


@lru_cache(maxsize=1 << 16)
def descends(bundle: GitLineBundle) -> bool:
    n = bundle.n
    _require_even(n)
    s = half_rank(n)
    for I in all_subsets(n):
        v = point_fiber_weight(bundle, I) + bundle.character
        if len(I) != s + 1:
            if v % 2:
                return False
        else:
            a = bundle.exc_at(I)
            if (v + 2 * a) % 4 or (v - 2 * a) % 4:
                return False
    return True


@lru_cache(maxsize=None)
def _series(s: int, i: int) -> tuple[tuple[int, int], ...]:
    acc: Counter = Counter()
    for a in range(i + 1):
        b = i - a
        acc[2 * a - 2 * b] += comb(a + s, s) * comb(b + s, s)
    return tuple(sorted(acc.items()))


def exc_restriction_series(n: int, i: int) -> WeightMap:
    """Weights of the degree-``i`` monomials on ``E_T``, i.e. of RΓ(O(-iE_T)|E_T)."""
    _require_even(n)
    if i < 0:
        raise ValueError("i must be nonnegative")
    return dict(_series(half_rank(n), i))


# ---------------------------------------------------------------------------
# Euler characteristics on W


def cover_euler(bundle: GitLineBundle, weight: int) -> int:
    """Euler characteristic of the ``weight`` part of RΓ(W, O(j)(sum c_T E_T)).

    The character of ``bundle`` is ignored; callers pick the weight.  Works for
    any exceptional coefficients by peeling negative ones off and adding the
    top-cohomology contributions of large positive ones.
    """
    n = bundle.n
    total = euler_at(tuple(sorted(bundle.exponents)), weight)
    if n % 2:
        return total
    s = half_rank(n)
    for T, c in bundle.exc:
        shift = point_fiber_weight(bundle, T)
        if c < 0:
            for i in range(-c):
                total -= dict(_series(s, i)).get(weight - shift, 0)
        elif c >= n:
            sign = -1 if (n - 1) % 2 else 1
            for i in range(n, c + 1):
                total += sign * dict(_series(s, i - n)).get(weight - shift, 0)
    return total


# ---------------------------------------------------------------------------
# peeling


@dataclass(frozen=True)
class PeelingStep:
    T: Subset
    i: int
    piece_weights: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict:
        return {"T": list(self.T), "i": self.i, "weights": dict(self.piece_weights)}


@dataclass
class VanishingVerdict:
    outcome: str  # CertifiedZero | IdentityScalar | NonzeroWitness | Indeterminate
    target_weight: int
    trace: list[PeelingStep] = field(default_factory=list)
    base_weights: dict[int, WeightMap] = field(default_factory=dict)
    evidence: str = ""

    @property
    def is_zero(self) -> bool:
        return self.outcome == "CertifiedZero"

    def as_dict(self) -> dict:
        return {"outcome": self.outcome, "target": self.target_weight, "evidence": self.evidence,
                "steps": [st.as_dict() for st in self.trace]}


class AbsorptionError(ValueError):
    pass


def peel_vanishing(L1: GitLineBundle, L2: GitLineBundle, target_weight: int) -> VanishingVerdict:
    """Certify (or fail to certify) that the target weight of RΓ(W, L2 - L1) vanishes."""
    n = L1.n
    _require_even(n)
    if L2.n != n:
        raise ValueError("n mismatch")
    for b in (L1, L2):
        if not descends(b):
            raise ValueError("bundle does not descend to the quotient")
    D = L2 - L1
    for T, c in D.exc:
        if c > n - 2:
            raise AbsorptionError(f"coefficient {c} at {T} exceeds the absorption bound {n - 2}")
    if L1 == L2 and target_weight == 0:
        return VanishingVerdict("IdentityScalar", 0, evidence="equal bundles")
    s = half_rank(n)
    base = kunneth(D.exponents)
    hit = any(target_weight in wm for wm in base.values())
    steps: list[PeelingStep] = []
    for T, c in D.exc:  # sorted by T, i.e. lexicographic order
        if c >= 0:
            continue
        shift = point_fiber_weight(D, T)
        for i in range(-c):
            piece = tuple((w + shift, m) for w, m in _series(s, i))
            steps.append(PeelingStep(T, i, piece))
            if any(w == target_weight for w, _ in piece):
                hit = True
    if not hit:
        return VanishingVerdict("CertifiedZero", target_weight, steps, base)
    if not steps:
        return VanishingVerdict("NonzeroWitness", target_weight, steps, base,
                                evidence=f"base part carries weight {target_weight}")
    chi = cover_euler(D, target_weight)
    if chi:
        return VanishingVerdict("NonzeroWitness", target_weight, steps, base,
                                evidence=f"Euler characteristic {chi}")
    return VanishingVerdict("Indeterminate", target_weight, steps, base)


def interval_claim(alpha: int, alpha_prime: int) -> bool:
    if alpha > 0 or alpha_prime > 0 or not alpha > alpha_prime:
        raise ValueError("need 0 >= alpha > alpha_prime")
    beta = alpha - alpha_prime
    vals = {alpha + alpha_prime, alpha - alpha_prime, -alpha + alpha_prime, -alpha - alpha_prime}
    return not any(-(beta - 1) <= v <= beta - 1 for v in vals)


def exceptional_indices(n: int) -> tuple[Subset, ...]:
    _require_even(n)
    return half_subsets(n)
