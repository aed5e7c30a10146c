"""Kempf-Ness strata, fixed-point weights and window audits.

Weights are measured with the destabilizing one-parameter subgroup of each
stratum: ``z -> z`` for ``S_I`` and ``S+_T``, ``z -> z^-1`` for ``S'_I`` and
``S-_T``.  The character ``z^p`` therefore contributes ``+p`` to the first two
kinds and ``-p`` to the other two, and ``O(E_T)`` contributes ``+2`` at both
fixed components inside ``E_T``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .collection import enumerate_collection
from .core_model import (GitLineBundle, Subset, all_subsets, complement, git_form_of_L,
                         half_rank, half_subsets)

KINDS = ("S", "S'", "S+", "S-")


@dataclass(frozen=True)
class Stratum:
    n: int
    kind: str
    index: Subset
    eta: int
    printed_anchor: int

    @property
    def label(self) -> str:
        return f"{self.kind}[{','.join(map(str, self.index))}]"

    @property
    def codim(self) -> int:
        """Codimension of the stratum in the cover."""
        if self.kind == "S":
            return len(self.index)
        if self.kind == "S'":
            return self.n - len(self.index)
        return half_rank(self.n) + 1


def printed_anchors(n: int) -> tuple[int, int]:
    """Anchors printed for the point strata and for the exceptional strata."""
    s = half_rank(n)
    if n % 2:
        return (-2 * s, 0)
    if s % 2:
        return (-(s + 1), -n)
    return (-s, -n + 2)


def build_strata(n: int) -> list[Stratum]:
    if n < 2:
        raise ValueError("n must be at least 2")
    w_point, w_exc = printed_anchors(n)
    out: list[Stratum] = []
    if n % 2:
        big = lambda k: 2 * k > n
        small = lambda k: 2 * k < n
    else:
        s = half_rank(n)
        big = lambda k: k > s + 1
        small = lambda k: k < s + 1
    for I in all_subsets(n):
        if big(len(I)):
            out.append(Stratum(n, "S", I, 2 * len(I), w_point))
    for I in all_subsets(n):
        if small(len(I)):
            out.append(Stratum(n, "S'", I, 2 * (n - len(I)), w_point))
    for T in half_subsets(n):
        out.append(Stratum(n, "S+", T, 2 * n, w_exc))
        out.append(Stratum(n, "S-", T, 2 * n, w_exc))
    return out


def point_weight(bundle: GitLineBundle, I: Subset) -> int:
    """Weight of the linearized bundle at the fixed point with infinity on ``I``.

    This is ``-sum_I j + sum_{I^c} j + p`` for ``z -> z``.
    """
    inside = set(I)
    w = bundle.character
    for i, j in enumerate(bundle.exponents, start=1):
        w += -j if i in inside else j
    return w


def weight_at(bundle: GitLineBundle, stratum: Stratum) -> int:
    if bundle.n != stratum.n:
        raise ValueError("bundle and stratum live on different n")
    base = point_weight(bundle, stratum.index)
    if stratum.kind == "S":
        return base
    if stratum.kind == "S'":
        return -base
    alpha = bundle.exc_at(stratum.index)
    if stratum.kind == "S+":
        return base + 2 * alpha
    if stratum.kind == "S-":
        return -base + 2 * alpha
    raise ValueError(f"unknown stratum kind {stratum.kind}")


@dataclass
class StratumAudit:
    stratum: Stratum
    min_weight: int
    max_weight: int
    exists: bool
    anchor_ok: bool

    def as_dict(self) -> dict:
        st = self.stratum
        return {"stratum": st.label, "eta": st.eta, "anchor": st.printed_anchor,
                "min": self.min_weight, "max": self.max_weight,
                "window_exists": self.exists, "printed_anchor_ok": self.anchor_ok}


@dataclass
class WindowReport:
    n: int
    audits: list[StratumAudit] = field(default_factory=list)

    @property
    def existence_ok(self) -> bool:
        return all(a.exists for a in self.audits)

    @property
    def anchors_ok(self) -> bool:
        return all(a.anchor_ok for a in self.audits)

    @property
    def anchor_failures(self) -> list[StratumAudit]:
        return [a for a in self.audits if not a.anchor_ok]

    def as_dict(self) -> dict:
        return {"n": self.n, "existence_ok": self.existence_ok, "anchors_ok": self.anchors_ok,
                "strata": [a.as_dict() for a in self.audits]}


def collection_bundles(n: int) -> list[GitLineBundle]:
    return [git_form_of_L(n, it.E, it.p) for it in enumerate_collection(n).line_bundles]


def audit_weights(strata: Iterable[Stratum], bundles: list[GitLineBundle]) -> list[StratumAudit]:
    out = []
    for st in strata:
        ws = [weight_at(b, st) for b in bundles]
        lo, hi = min(ws), max(ws)
        exists = hi - lo <= st.eta - 1
        anchor_ok = st.printed_anchor <= lo and hi < st.printed_anchor + st.eta
        out.append(StratumAudit(st, lo, hi, exists, anchor_ok))
    return out


def window_audit(n: int) -> WindowReport:
    bundles = collection_bundles(n)
    return WindowReport(n, audit_weights(build_strata(n), bundles))


# ---------------------------------------------------------------------------
# extremes over the even collection


@dataclass
class MaxMinEntry:
    index: Subset
    kind: str  # "I" or "T"
    brute_max: int
    brute_min: int
    closed_max: int
    closed_min: int

    @property
    def matches(self) -> bool:
        return (self.brute_max, self.brute_min) == (self.closed_max, self.closed_min)

    def as_dict(self) -> dict:
        return {"index": list(self.index), "kind": self.kind, "brute": [self.brute_min, self.brute_max],
                "closed_form": [self.closed_min, self.closed_max], "matches": self.matches}


def maxmin_closed_forms(n: int, size: int) -> tuple[int, int]:
    """``(max, min)`` predicted for a set ``I`` of the given size, or for ``T``."""
    s = half_rank(n)
    if size == s + 1:
        m = (s + 1) // 2
        return (2 * m, -2 * m)
    if s % 2:
        return (2 * size - (s + 3), -(s + 1))
    return (2 * size - (s + 2), -s)


def maxmin_audit(n: int) -> list[MaxMinEntry]:
    if n % 2 or n < 2:
        raise ValueError("maxmin_audit needs an even n >= 2")
    s = half_rank(n)
    items = enumerate_collection(n).line_bundles
    out = []
    for I in all_subsets(n):
        if len(I) < s + 1:
            continue
        inside = set(I)
        vals = [sum(1 for i in it.E if i in inside) - sum(1 for i in it.E if i not in inside) + it.p
                for it in items]
        cmax, cmin = maxmin_closed_forms(n, len(I))
        out.append(MaxMinEntry(I, "T" if len(I) == s + 1 else "I", max(vals), min(vals), cmax, cmin))
    return out


def flipped_stratum(st: Stratum) -> Stratum:
    """Image of a stratum under the swap of 0 and infinity."""
    comp = complement(st.n, st.index)
    swap = {"S": "S'", "S'": "S", "S+": "S-", "S-": "S+"}[st.kind]
    eta = st.eta
    return Stratum(st.n, swap, comp, eta, st.printed_anchor)


def maxmin_audit_odd(n: int) -> list[MaxMinEntry]:
    """Odd analogue: extremes at ``S_I`` for ``2|I| > n`` against ``2s + 2|I| - n + 1`` and ``-2s``."""
    if n % 2 == 0 or n < 3:
        raise ValueError("maxmin_audit_odd needs an odd n >= 3")
    s = half_rank(n)
    items = enumerate_collection(n).line_bundles
    out = []
    for I in all_subsets(n):
        if 2 * len(I) < n:
            continue
        inside = set(I)
        vals = [sum(1 for i in it.E if i in inside) - sum(1 for i in it.E if i not in inside) + it.p
                for it in items]
        out.append(MaxMinEntry(I, "I", max(vals), min(vals), 2 * s + 2 * len(I) - n + 1, -2 * s))
    return out
