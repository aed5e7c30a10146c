"""Pairwise RHom verdicts, the torsion-pair criterion and the Euler Gram matrix.

A collection ``C_1, ..., C_N`` is exceptional when ``RHom(C_j, C_i) = 0`` for
``j > i`` and every ``C_i`` has ``RHom(C_i, C_i) = C``.  Verdicts are
computed for ``RHom(later, earlier)``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .blowup_even import peel_vanishing
from .cohomology import biproj_acyclic, biproj_euler, kunneth
from .collection import (CollectionItem, LineBundleItem, OrderedCollection, TorsionItem,
                         enumerate_collection, level_key)
from .core_model import Subset, git_form_of_L, half_rank, restrict_to_boundary
from .kclasses import BoundarySheaf, KObject, euler_pair

ZERO, SCALAR, NONZERO, UNKNOWN = "Zero", "ScalarIdentity", "Nonzero", "Indeterminate"

DISJOINT_SUPPORT_NOTE = ("distinct boundary divisors delta_T are disjoint, so torsion sheaves "
                         "on different delta_T have RHom = 0")


@dataclass(frozen=True)
class PairVerdict:
    later: CollectionItem
    earlier: CollectionItem
    rhom: str
    method: str
    evidence: str = ""

    def as_dict(self) -> dict:
        return {"later": self.later.label, "earlier": self.earlier.label, "rhom": self.rhom,
                "method": self.method, "evidence": self.evidence}


def rhom_odd_pair(n: int, source: tuple[Subset, int], target: tuple[Subset, int]) -> PairVerdict:
    """``RHom(L_source, L_target)`` as the weight ``p_s - p_t`` part of a Kunneth series."""
    if n % 2 == 0:
        raise ValueError("rhom_odd_pair needs odd n")
    (E1, p1), (E2, p2) = source, target
    a, b = LineBundleItem(tuple(E1), p1), LineBundleItem(tuple(E2), p2)
    if a == b:
        return PairVerdict(a, b, SCALAR, "OddWeightPart")
    diff = git_form_of_L(n, b.E, b.p) - git_form_of_L(n, a.E, a.p)
    weight = p1 - p2
    dims = {d: wm[weight] for d, wm in kunneth(diff.exponents).items() if weight in wm}
    if not dims:
        return PairVerdict(a, b, ZERO, "OddWeightPart")
    return PairVerdict(a, b, NONZERO, "OddWeightPart", f"dimensions by degree {dims}")


def rhom_even_pair(n: int, source: LineBundleItem, target: LineBundleItem) -> PairVerdict:
    L1 = git_form_of_L(n, source.E, source.p)
    L2 = git_form_of_L(n, target.E, target.p)
    verdict = peel_vanishing(L1, L2, source.p - target.p)
    rhom = {"CertifiedZero": ZERO, "IdentityScalar": SCALAR,
            "NonzeroWitness": NONZERO}.get(verdict.outcome, UNKNOWN)
    return PairVerdict(source, target, rhom, "EvenPeeling", verdict.evidence)


# ---------------------------------------------------------------------------
# torsion sheaves on one boundary divisor


def torsion_listed_conditions(s: int, later: tuple[int, int], earlier: tuple[int, int]) -> bool:
    """True when ``{O(-a,-b), O(-a',-b')}`` fails to be exceptional by the four listed cases."""
    (a2, b2), (a, b) = later, earlier
    return ((a2 >= a and b2 >= b)
            or (a2 == 0 and a == s and b2 > b)
            or (b2 == 0 and b == s and a2 > a)
            or (a2 == 0 and b2 == 0 and a == s and b == s))


def torsion_cohomological_nonzero(s: int, later: tuple[int, int], earlier: tuple[int, int]) -> bool:
    """RHom is nonzero unless both twists in the restriction sequence are acyclic."""
    (a2, b2), (a, b) = later, earlier
    return not (biproj_acyclic(s, a2 - a, b2 - b) and biproj_acyclic(s, a2 - a - 1, b2 - b - 1))


def torsion_pair_verdict(n: int, later: tuple[Subset, int, int],
                         earlier: tuple[Subset, int, int]) -> PairVerdict:
    if n % 2:
        raise ValueError("torsion sheaves exist only for even n")
    s = half_rank(n)
    A, B = TorsionItem(*later), TorsionItem(*earlier)
    if A.T != B.T:
        return PairVerdict(A, B, ZERO, "DisjointSupport", DISJOINT_SUPPORT_NOTE)
    if (A.a, A.b) == (B.a, B.b):
        return PairVerdict(A, B, SCALAR, "TorsionLemma")
    listed = torsion_listed_conditions(s, (A.a, A.b), (B.a, B.b))
    cohom = torsion_cohomological_nonzero(s, (A.a, A.b), (B.a, B.b))
    if listed != cohom:
        return PairVerdict(A, B, UNKNOWN, "TorsionLemma",
                           f"listed conditions say {listed}, cohomology says {cohom}")
    return PairVerdict(A, B, NONZERO if listed else ZERO, "TorsionLemma")


def torsion_vs_linebundle(n: int, line: tuple[Subset, int], torsion: tuple[Subset, int, int]) -> PairVerdict:
    """``RHom(L, O_delta(-a,-b)) = RΓ(delta, L^dual|delta (x) O(-a,-b))``."""
    L = LineBundleItem(tuple(line[0]), line[1])
    tor = TorsionItem(*torsion)
    r1, r2 = restrict_to_boundary(git_form_of_L(n, L.E, L.p), tor.T)
    d1, d2 = -r1 - tor.a, -r2 - tor.b
    s = half_rank(n)
    if biproj_acyclic(s, d1, d2):
        return PairVerdict(L, tor, ZERO, "RestrictionAcyclicity", f"O({d1},{d2})")
    return PairVerdict(L, tor, NONZERO, "RestrictionAcyclicity", f"O({d1},{d2}) is not acyclic")


# ---------------------------------------------------------------------------
# the whole collection


def as_kobject(n: int, item: CollectionItem) -> KObject:
    if isinstance(item, TorsionItem):
        return BoundarySheaf(n, item.T, -item.a, -item.b)
    return git_form_of_L(n, item.E, item.p)


def euler_pairing(n: int, item1: CollectionItem, item2: CollectionItem) -> int:
    """``chi(RHom(item1, item2))``."""
    return euler_pair(as_kobject(n, item1), as_kobject(n, item2))


def pair_verdict(n: int, later: CollectionItem, earlier: CollectionItem) -> PairVerdict:
    if isinstance(later, LineBundleItem) and isinstance(earlier, LineBundleItem):
        if n % 2:
            return rhom_odd_pair(n, (later.E, later.p), (earlier.E, earlier.p))
        return rhom_even_pair(n, later, earlier)
    if isinstance(later, TorsionItem) and isinstance(earlier, TorsionItem):
        return torsion_pair_verdict(n, (later.T, later.a, later.b), (earlier.T, earlier.a, earlier.b))
    if isinstance(later, LineBundleItem):
        return torsion_vs_linebundle(n, (later.E, later.p), (earlier.T, earlier.a, earlier.b))
    # torsion after a line bundle never happens in the canonical order; report the Euler value only
    chi = euler_pairing(n, later, earlier)
    return PairVerdict(later, earlier, ZERO if chi == 0 else NONZERO, "EulerOnly", f"chi = {chi}")


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    M = [list(row) for row in matrix]
    size = len(M)
    if size == 0:
        return 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if M[k][k] == 0:
            swap = next((r for r in range(k + 1, size) if M[r][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[-1][-1]


def is_upper_unitriangular(matrix: Sequence[Sequence[int]]) -> bool:
    return all(matrix[i][i] == 1 and all(matrix[i][j] == 0 for j in range(i))
               for i in range(len(matrix)))


@lru_cache(maxsize=None)
def _collection(n: int) -> OrderedCollection:
    return enumerate_collection(n)


def _row_work(args: tuple[int, int]) -> tuple[list[int], list[PairVerdict], list[PairVerdict]]:
    """Gram row ``i`` plus the verdicts this row is responsible for."""
    n, i = args
    items = _collection(n).items
    later = items[i]
    row = [euler_pairing(n, later, other) for other in items]
    verdicts, failures = [], []
    for j, earlier in enumerate(items):
        same_level = level_key(earlier) == level_key(later)
        if j > i and not same_level:
            continue
        v = pair_verdict(n, later, earlier)
        verdicts.append(v)
        expected = SCALAR if i == j else ZERO
        if v.rhom != expected:
            failures.append(v)
    return row, verdicts, failures


@dataclass
class ExceptionalityReport:
    n: int
    size: int
    gram: list[list[int]]
    unitriangular: bool
    determinant: int
    failures: list[PairVerdict]
    method_counts: dict[str, int]
    indeterminate: int
    pairs_checked: int
    assumptions: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.unitriangular and abs(self.determinant) == 1

    def as_dict(self, include_gram: bool = False) -> dict:
        out = {"n": self.n, "size": self.size, "ok": self.ok, "unitriangular": self.unitriangular,
               "determinant": self.determinant, "pairs_checked": self.pairs_checked,
               "indeterminate": self.indeterminate, "method_counts": self.method_counts,
               "failures": [f.as_dict() for f in self.failures[:50]],
               "failure_count": len(self.failures), "assumptions": self.assumptions}
        if include_gram:
            out["gram"] = self.gram
        return out


def gram_matrix(n: int, jobs: int = 1) -> list[list[int]]:
    items = _collection(n).items
    return [[euler_pairing(n, a, b) for b in items] for a in items]


def verify_collection_exceptional(n: int, jobs: int = 1) -> ExceptionalityReport:
    if n < 2:
        raise ValueError("n must be at least 2")
    coll = _collection(n)
    tasks = [(n, i) for i in range(len(coll))]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_row_work, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    else:
        results = [_row_work(t) for t in tasks]
    gram = [r[0] for r in results]
    failures = [f for r in results for f in r[2]]
    counts: dict[str, int] = {}
    indeterminate = checked = 0
    for r in results:
        for v in r[1]:
            counts[v.method] = counts.get(v.method, 0) + 1
            checked += 1
            indeterminate += v.rhom == UNKNOWN
    unitri = is_upper_unitriangular(gram)
    if unitri:
        det = 1
    else:
        det = bareiss_determinant(gram)
    notes = [DISJOINT_SUPPORT_NOTE] if n % 2 == 0 else []
    return ExceptionalityReport(n, len(coll), gram, unitri, det, failures, counts,
                                indeterminate, checked, notes)


def fraction_determinant(matrix: Sequence[Sequence[int]]) -> Fraction:
    """Gaussian elimination over the rationals; an independent check on :func:`bareiss_determinant`."""
    M = [[Fraction(x) for x in row] for row in matrix]
    size = len(M)
    det = Fraction(1)
    for k in range(size):
        piv = next((r for r in range(k, size) if M[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det *= M[k][k]
        for i in range(k + 1, size):
            factor = M[i][k] / M[k][k]
            if factor:
                for j in range(k, size):
                    M[i][j] -= factor * M[k][j]
    return det
