"""Generation certificates: Koszul resolutions, quotient chains and their verifier.

A certificate is a list of *relations*.  Each relation is a signed list of
objects whose classes sum to zero in K-theory and which comes from an exact
sequence (or a chain of short exact sequences).  One member of each relation
is its target.  Every other member must be a collection item or the target of
an earlier relation, so the target lies in the triangulated hull of the
collection.

Object tags are plain tuples:

* ``("L", E, p)``, ``("R", E, p)``, ``("Q", E, p)``, ``("V", E, p)``
* ``("O", T, d1, d2)`` for ``O_{delta_T}(d1, d2)``
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .collection import (LineBundleItem, TorsionItem, enumerate_collection, line_bundle_in_range,
                         torsion_in_range)
from .core_model import (Subset, all_subsets, check_parity, complement, git_form, half_rank,
                         restrict_to_boundary, score, taut_form, x_coeff)
from .exceptionality import as_kobject, is_upper_unitriangular
from .kclasses import BoundarySheaf, KObject, euler_pair

SCHEMA = "hassett-ec/certificate/v1"

Tag = tuple
Term = tuple[Tag, int]

KOSZUL_KINDS = ("OddType1", "OddType2", "EvenK1", "EvenK2")
CHAIN_KINDS = ("LtoR", "LtoQ", "RtoV", "QtoV")


class GenerationError(RuntimeError):
    pass


def bundle_tag(kind: str, E: Iterable[int], p: int) -> Tag:
    E = tuple(sorted(E))
    check_parity(E, p)
    return (kind, E, p)


def torsion_tag(T: Iterable[int], d1: int, d2: int) -> Tag:
    return ("O", tuple(sorted(T)), d1, d2)


def tag_label(tag: Tag) -> str:
    if tag[0] == "O":
        return f"O[{','.join(map(str, tag[1]))}]({tag[2]},{tag[3]})"
    return f"{tag[0]}[{','.join(map(str, tag[1]))}|{tag[2]}]"


def tag_to_json(tag: Tag) -> dict:
    if tag[0] == "O":
        return {"kind": "O", "T": list(tag[1]), "d": [tag[2], tag[3]]}
    return {"kind": tag[0], "E": list(tag[1]), "p": tag[2]}


def tag_from_json(obj: dict) -> Tag:
    if obj["kind"] == "O":
        return torsion_tag(obj["T"], obj["d"][0], obj["d"][1])
    return bundle_tag(obj["kind"], obj["E"], obj["p"])


def item_tag(item) -> Tag:
    if isinstance(item, TorsionItem):
        return torsion_tag(item.T, -item.a, -item.b)
    return bundle_tag("L", item.E, item.p)


@dataclass(frozen=True)
class Step:
    """One relation.  ``terms`` contains the target with coefficient +1 or -1."""

    kind: str
    target: Tag
    terms: tuple[Term, ...]
    params: tuple = ()

    def others(self) -> list[Tag]:
        return [t for t, _ in self.terms if t != self.target]

    def as_dict(self) -> dict:
        return {"kind": self.kind, "target": tag_to_json(self.target), "params": _params_to_json(self.params),
                "terms": [[tag_to_json(t), c] for t, c in self.terms]}


def _params_to_json(params: tuple) -> list:
    return [list(p) if isinstance(p, tuple) else p for p in params]


def _params_from_json(kind: str, params: list) -> tuple:
    return tuple(tuple(p) if isinstance(p, list) else p for p in params)


# Backwards-readable names for the two families of steps.
KoszulStep = Step
QuotientChainStep = Step


@dataclass
class GenerationCertificate:
    n: int
    target: Tag
    steps: list[Step] = field(default_factory=list)

    @property
    def leaves(self) -> list[Tag]:
        return [st.target for st in self.steps if st.kind == "Leaf"]

    def as_dict(self) -> dict:
        return {"schema": SCHEMA, "n": self.n, "target": tag_to_json(self.target),
                "steps": [st.as_dict() for st in self.steps]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)

    @staticmethod
    def from_dict(obj: dict) -> "GenerationCertificate":
        if obj.get("schema") != SCHEMA:
            raise ValueError(f"unknown certificate schema {obj.get('schema')!r}")
        steps = []
        for st in obj["steps"]:
            steps.append(Step(st["kind"], tag_from_json(st["target"]),
                              tuple((tag_from_json(t), int(c)) for t, c in st["terms"]),
                              _params_from_json(st["kind"], st["params"])))
        return GenerationCertificate(int(obj["n"]), tag_from_json(obj["target"]), steps)


# ---------------------------------------------------------------------------
# closed forms used by the generator


def koszul_terms(kind: str, n: int, I: Iterable[int], twist: tuple[Iterable[int], int]) -> Step:
    """Signed terms of one Koszul resolution.

    ``twist`` is ``(E, p)``.  For ``OddType2`` it is the twisting bundle
    ``(E', p')`` with ``I`` disjoint from ``E'``; the target is the ``J = I`` term.
    For the other kinds the target is the ``J = empty`` term.
    """
    s = half_rank(n)
    I = tuple(sorted(I))
    E, p = tuple(sorted(twist[0])), twist[1]
    if len(I) != s + 1 or not set(I) <= set(range(1, n + 1)):
        raise ValueError(f"I must be an (s+1)-subset of 1..n, got {I}")
    check_parity(E, p)
    odd = n % 2 == 1
    if kind.startswith("Odd") != odd:
        raise ValueError(f"{kind} does not apply for n={n}")
    Es = set(E)
    if kind == "OddType1":
        if Es & set(I):
            raise ValueError("type 1 needs I disjoint from E")
        make = lambda J: bundle_tag("L", Es | set(J), p - len(J))
        target = make(())
    elif kind == "OddType2":
        if Es & set(I):
            raise ValueError("type 2 twist must be disjoint from I")
        make = lambda J: bundle_tag("L", Es | set(J), p + len(J))
        target = make(I)
    elif kind == "EvenK1":
        if Es & set(I) or len(E) > s + 1:
            raise ValueError("K1 needs I disjoint from E and e <= s+1")
        make = lambda J: bundle_tag("Q", Es | set(J), p - len(J))
        target = make(())
    elif kind == "EvenK2":
        if not set(I) <= Es or len(E) < s + 1:
            raise ValueError("K2 needs I inside E and e >= s+1")
        make = lambda J: bundle_tag("R", Es - set(J), p - len(J))
        target = make(())
    else:
        raise ValueError(f"unknown Koszul kind {kind!r}")
    terms = []
    for j in range(len(I) + 1):
        for J in combinations(I, j):
            terms.append((make(J), (-1) ** j))
    return Step(kind, target, tuple(terms), (I, E, p))


def _chain_quotients(relation: str, n: int, E: Subset, p: int) -> list[Tag]:
    out = []
    for T in _halves(n):
        x = x_coeff(n, T, E, p)
        if relation == "LtoR" and x > 0:
            out += [torsion_tag(T, -x + i, i) for i in range(x)]
        elif relation == "LtoQ" and x < 0:
            out += [torsion_tag(T, i, x + i) for i in range(-x)]
        elif relation == "RtoV" and x < 0:
            out += [torsion_tag(T, -x - i, -i) for i in range(1, -x + 1)]
        elif relation == "QtoV" and x > 0:
            out += [torsion_tag(T, -i, x - i) for i in range(1, x + 1)]
    return out


_CHAIN_ENDS = {"LtoR": ("L", "R"), "LtoQ": ("L", "Q"), "RtoV": ("R", "V"), "QtoV": ("Q", "V")}


def quotient_chain(n: int, relation: str, E: Iterable[int], p: int, target: Tag | None = None) -> Step:
    """``[Y] = [X] + sum of torsion quotients`` for the chain ``X -> Y``."""
    if n % 2:
        raise ValueError("quotient chains need even n")
    if relation not in _CHAIN_ENDS:
        raise ValueError(f"unknown chain {relation!r}")
    E = tuple(sorted(E))
    check_parity(E, p)
    src, dst = _CHAIN_ENDS[relation]
    terms: Counter = Counter()
    terms[bundle_tag(dst, E, p)] += 1
    terms[bundle_tag(src, E, p)] -= 1
    for q in _chain_quotients(relation, n, E, p):
        terms[q] -= 1
    tgt = target if target is not None else bundle_tag(dst, E, p)
    if tgt not in terms or abs(terms[tgt]) != 1:
        raise GenerationError(f"{tag_label(tgt)} does not occur exactly once in the chain")
    return Step(relation, tgt, tuple(sorted(terms.items(), key=repr)), (E, p))


def boundary_koszul(n: int, T: Subset, factor: int, top: int, other: int, target_end: str) -> Step:
    """Koszul complex of ``s+1`` sections of O(1) on one factor of ``delta_T``.

    Degrees on ``factor`` run over ``top, top-1, ..., top-s-1`` with
    multiplicities ``C(s+1, j)``; the other factor keeps degree ``other``.
    """
    s = half_rank(n)
    terms = []
    coeff = 1
    for j in range(s + 2):
        d = top - j
        tag = torsion_tag(T, d, other) if factor == 1 else torsion_tag(T, other, d)
        terms.append((tag, (-1) ** j * coeff))
        coeff = coeff * (s + 1 - j) // (j + 1)
    target = terms[0][0] if target_end == "top" else terms[-1][0]
    return Step("BoundaryKoszul", target, tuple(terms), (tuple(T), factor, top, other, target_end))


def flip_tag(n: int, tag: Tag) -> Tag:
    kind = tag[0]
    if kind == "O":
        return torsion_tag(complement(n, tag[1]), tag[3], tag[2])
    swap = {"L": "L", "V": "V", "R": "Q", "Q": "R"}[kind]
    return bundle_tag(swap, tag[1], -tag[2])


def flip_step(n: int, target: Tag) -> Step:
    source = flip_tag(n, target)
    return Step("FlipRelabel", target, ((target, 1), (source, -1)), ())


@lru_cache(maxsize=None)
def _halves(n: int) -> tuple[Subset, ...]:
    from .core_model import half_subsets
    return half_subsets(n)


@lru_cache(maxsize=None)
def _collection_tags(n: int) -> frozenset:
    return frozenset(item_tag(it) for it in enumerate_collection(n).items)


def in_collection(n: int, tag: Tag) -> bool:
    return tag in _collection_tags(n)


# ---------------------------------------------------------------------------
# the derivation engine


class DerivationEngine:
    """Memoized recursive prover; one instance per ``n``."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.n = n
        self.s = half_rank(n)
        self.steps: dict[Tag, Step] = {}
        self.order: list[Tag] = []
        self._active: set[Tag] = set()
        self.intro_log: list[tuple[Subset, int]] = []

    # -- bookkeeping

    def _record(self, step: Step) -> Tag:
        for t in step.others():
            if t not in self.steps:
                raise GenerationError(f"{tag_label(t)} used before it was proved")
        self.steps[step.target] = step
        self.order.append(step.target)
        return step.target

    def prove(self, tag: Tag) -> Tag:
        if tag in self.steps:
            return tag
        if tag in self._active:
            raise GenerationError(f"cyclic dependency at {tag_label(tag)}")
        self._active.add(tag)
        try:
            if in_collection(self.n, tag):
                return self._record(Step("Leaf", tag, ((tag, 1),)))
            if self.n % 2:
                return self._prove_odd(tag)
            if tag[0] == "O":
                return self._prove_torsion(tag)
            return getattr(self, "_prove_" + tag[0])(tag[1], tag[2])
        finally:
            self._active.discard(tag)

    def _use(self, step: Step) -> Tag:
        for t in step.others():
            self.prove(t)
        return self._record(step)

    def _flip(self, tag: Tag) -> Tag:
        self.prove(flip_tag(self.n, tag))
        return self._record(flip_step(self.n, tag))

    # -- odd n

    def _prove_odd(self, tag: Tag) -> Tag:
        if tag[0] != "L":
            raise GenerationError("odd n only has L tags")
        n, s = self.n, self.s
        E, p = tag[1], tag[2]
        if p < 0:
            return self._flip(tag)
        if len(E) <= s:
            I = next(iter(combinations(complement(n, E), s + 1)))
            return self._use(koszul_terms("OddType1", n, I, (E, p)))
        I = E[: s + 1]
        rest = tuple(i for i in E if i not in I)
        return self._use(koszul_terms("OddType2", n, I, (rest, p - s - 1)))

    # -- even n: line bundles

    def _l_in_c(self, E: Subset, p: int) -> bool:
        return line_bundle_in_range(self.n, E, p)

    def _first_boundary_case(self, E: Subset, p: int) -> bool:
        return self.s % 2 == 1 and len(E) == self.s + 1 and p == 0

    def _prove_L(self, E: Subset, p: int) -> Tag:
        tag = bundle_tag("L", E, p)
        if p < 0:
            return self._flip(tag)
        if len(E) >= self.s + 1:
            return self._use(quotient_chain(self.n, "LtoR", E, p, target=tag))
        return self._use(quotient_chain(self.n, "LtoQ", E, p, target=tag))

    def _prove_R(self, E: Subset, p: int) -> Tag:
        n, s = self.n, self.s
        tag = bundle_tag("R", E, p)
        if p < 0:
            return self._flip(tag)
        if self._first_boundary_case(E, p):
            return self._use(koszul_terms("EvenK2", n, E, (E, p)))
        if self._l_in_c(E, p) or len(E) < s + 1:
            return self._use(quotient_chain(n, "LtoR", E, p, target=tag))
        return self._use(koszul_terms("EvenK2", n, E[: s + 1], (E, p)))

    def _prove_Q(self, E: Subset, p: int) -> Tag:
        n, s = self.n, self.s
        tag = bundle_tag("Q", E, p)
        if p < 0 or self._first_boundary_case(E, p):
            return self._flip(tag)
        if self._l_in_c(E, p) or len(E) > s + 1:
            return self._use(quotient_chain(n, "LtoQ", E, p, target=tag))
        I = complement(n, E)[: s + 1]
        return self._use(koszul_terms("EvenK1", n, I, (E, p)))

    def _prove_V(self, E: Subset, p: int) -> Tag:
        return self._use(quotient_chain(self.n, "RtoV", E, p))

    # -- even n: torsion

    def _introduce(self, T: Subset, A: int) -> Tag:
        """Generate ``O_{delta_T}(-A, 0)`` for ``2A >= s+1``."""
        n, s = self.n, self.s
        tag = torsion_tag(T, -A, 0)
        lowest = (s + 2) // 2
        for A2 in range(lowest, A):
            for T2 in _halves(n):
                self.prove(torsion_tag(T2, -A2, 0))
        if s % 2 == 1 and 2 * A == s + 1:
            self.prove(bundle_tag("R", T, 0))
            step = quotient_chain(n, "LtoR", T, 0, target=tag)
        else:
            q = A - s // 2
            p = 2 * q - 1 if s % 2 == 0 else 2 * q - 2
            self.prove(bundle_tag("R", T, p))
            self.prove(bundle_tag("Q", T, p))
            self.prove(bundle_tag("V", T, p))
            step = quotient_chain(n, "QtoV", T, p, target=tag)
        self.intro_log.append((T, A))
        return self._use(step)

    def _prove_torsion(self, tag: Tag) -> Tag:
        n, s = self.n, self.s
        T, d1, d2 = tag[1], tag[2], tag[3]
        a, b = -d1, -d2
        if b == 0 and a > 0:
            return self._introduce(T, a)
        if a == 0 and b > 0:
            return self._flip(tag)
        if a == 0 and b == 0:
            # O(0,0) from O(-1,0), ..., O(-s-1,0)
            return self._use(boundary_koszul(n, T, 1, 0, 0, "top"))
        if 1 <= b <= s or b == 0:
            return self._reduce(T, 1, a, d2)
        if 1 <= a <= s or a == 0:
            return self._reduce(T, 2, b, d1)
        return self._reduce(T, 1, a, d2)

    def _reduce(self, T: Subset, factor: int, a: int, other: int) -> Tag:
        """Move the degree ``-a`` on ``factor`` toward the window ``[0, s]``."""
        s = self.s
        if a > s:
            return self._use(boundary_koszul(self.n, T, factor, -a + s + 1, other, "bottom"))
        if a < 0:
            return self._use(boundary_koszul(self.n, T, factor, -a, other, "top"))
        raise GenerationError(f"nothing to reduce for O_delta{T} with a={a} on factor {factor}")


# ---------------------------------------------------------------------------
# public generators


def _certificate(engine: DerivationEngine, target: Tag) -> GenerationCertificate:
    engine.prove(target)
    needed: set[Tag] = set()
    stack = [target]
    while stack:
        t = stack.pop()
        if t in needed:
            continue
        needed.add(t)
        stack.extend(engine.steps[t].others())
        if engine.steps[t].kind == "FlipRelabel":
            stack.append(flip_tag(engine.n, t))
    steps = [engine.steps[t] for t in engine.order if t in needed]
    return GenerationCertificate(engine.n, target, steps)


@lru_cache(maxsize=None)
def engine_for(n: int) -> DerivationEngine:
    return DerivationEngine(n)


def generate_odd(n: int, E: Iterable[int], p: int) -> GenerationCertificate:
    if n % 2 == 0:
        raise ValueError("generate_odd needs odd n")
    return _certificate(engine_for(n), bundle_tag("L", E, p))


def generate_even(n: int, target: Tag) -> GenerationCertificate:
    if n % 2:
        raise ValueError("generate_even needs even n")
    return _certificate(engine_for(n), target)


def generate(n: int, target: Tag) -> GenerationCertificate:
    return _certificate(engine_for(n), target)


# ---------------------------------------------------------------------------
# verification


def _subsets_by_mask(I: Subset):
    for mask in range(1 << len(I)):
        yield tuple(I[k] for k in range(len(I)) if mask >> k & 1)


def _expected_terms(n: int, step: Step) -> Counter | None:
    """Recompute a step's signed term multiset from its kind and parameters."""
    kind, prm = step.kind, step.params
    out: Counter = Counter()
    if kind == "Leaf":
        out[step.target] += 1
    elif kind == "FlipRelabel":
        out[step.target] += 1
        out[flip_tag(n, step.target)] -= 1
    elif kind in KOSZUL_KINDS:
        I, E, p = prm
        for J in _subsets_by_mask(I):
            sign = -1 if len(J) % 2 else 1
            if kind == "OddType1":
                out[("L", tuple(sorted(set(E) | set(J))), p - len(J))] += sign
            elif kind == "OddType2":
                out[("L", tuple(sorted(set(E) | set(J))), p + len(J))] += sign
            elif kind == "EvenK1":
                out[("Q", tuple(sorted(set(E) | set(J))), p - len(J))] += sign
            else:
                out[("R", tuple(sorted(set(E) - set(J))), p - len(J))] += sign
    elif kind in CHAIN_KINDS:
        E, p = prm
        src, dst = _CHAIN_ENDS[kind]
        out[(dst, E, p)] += 1
        out[(src, E, p)] -= 1
        R = taut_form("R", n, E, p)
        for T in _halves(n):
            x = -restrict_to_boundary(R, T)[0]
            if kind == "LtoR":
                rng = [(-x + i, i) for i in range(0, x)]
            elif kind == "LtoQ":
                rng = [(i, x + i) for i in range(0, -x)]
            elif kind == "RtoV":
                rng = [(-x - i, -i) for i in range(1, -x + 1)]
            else:
                rng = [(-i, x - i) for i in range(1, x + 1)]
            for d in rng:
                out[("O", T, d[0], d[1])] -= 1
    elif kind == "BoundaryKoszul":
        T, factor, top, other, _ = prm
        s = half_rank(n)
        for j in range(s + 2):
            tag = ("O", T, top - j, other) if factor == 1 else ("O", T, other, top - j)
            out[tag] += (-1) ** j * comb(s + 1, j)
    else:
        return None
    return Counter({k: v for k, v in out.items() if v})


def tag_object(n: int, tag: Tag) -> KObject:
    if tag[0] == "O":
        return BoundarySheaf(n, tag[1], tag[2], tag[3])
    return git_form(tag[0], n, tag[1], tag[2])


class PairingVectors:
    """Euler pairings ``chi(C_k, X)`` against every collection item, cached per tag."""

    def __init__(self, n: int):
        self.n = n
        self.items = enumerate_collection(n).items
        self.objects = [as_kobject(n, it) for it in self.items]
        self.index = {item_tag(it): k for k, it in enumerate(self.items)}
        self._cache: dict[Tag, tuple[int, ...]] = {}

    def vector(self, tag: Tag) -> tuple[int, ...]:
        v = self._cache.get(tag)
        if v is None:
            obj = tag_object(self.n, tag)
            v = tuple(euler_pair(c, obj) for c in self.objects)
            self._cache[tag] = v
        return v

    def flipped(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Vector of the flipped object: ``chi(C_k, flip X) = chi(flip C_k, X)``."""
        n = self.n
        return tuple(vec[self.index[flip_tag(n, item_tag(it))]] for it in self.items)


@lru_cache(maxsize=None)
def pairing_vectors(n: int) -> PairingVectors:
    return PairingVectors(n)


@dataclass
class VerificationResult:
    ok: bool
    checks: dict[str, bool]
    diagnostics: list[str]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "diagnostics": self.diagnostics[:20]}


def verify_certificate(cert: GenerationCertificate) -> VerificationResult:
    n = cert.n
    diag: list[str] = []
    dag_ok = leaves_ok = forms_ok = k_ok = True
    seen: set[Tag] = set()
    for k, st in enumerate(cert.steps):
        if st.target in seen:
            dag_ok = False
            diag.append(f"step {k}: {tag_label(st.target)} proved twice")
        coeffs = dict(st.terms)
        if abs(coeffs.get(st.target, 0)) != 1:
            dag_ok = False
            diag.append(f"step {k}: target coefficient is not a unit")
        deps = st.others()
        if st.kind == "FlipRelabel":
            deps = [flip_tag(n, st.target)]
        for t in deps:
            if t not in seen:
                dag_ok = False
                diag.append(f"step {k}: {tag_label(t)} is not proved earlier")
        seen.add(st.target)
        if st.kind == "Leaf" and not in_collection(n, st.target):
            leaves_ok = False
            diag.append(f"step {k}: leaf {tag_label(st.target)} is not in the collection")
        expected = _expected_terms(n, st)
        if expected is None or expected != Counter(dict(st.terms)):
            forms_ok = False
            diag.append(f"step {k}: {st.kind} terms differ from the closed form")
    if not cert.steps or cert.steps[-1].target != cert.target:
        dag_ok = False
        diag.append("last step does not prove the certificate target")
    pv = pairing_vectors(n)
    for k, st in enumerate(cert.steps):
        if st.kind == "Leaf":
            continue
        if st.kind == "FlipRelabel":
            lhs = pv.vector(st.target)
            rhs = pv.flipped(pv.vector(flip_tag(n, st.target)))
            if lhs != rhs:
                k_ok = False
                diag.append(f"step {k}: flip of {tag_label(st.target)} changes its class")
            continue
        total = [0] * len(pv.items)
        for t, c in st.terms:
            for idx, val in enumerate(pv.vector(t)):
                total[idx] += c * val
        if any(total):
            k_ok = False
            diag.append(f"step {k}: {st.kind} for {tag_label(st.target)} is not exact in K-theory")
    checks = {"dag": dag_ok, "leaves": leaves_ok, "closed_forms": forms_ok, "k_exact": k_ok}
    return VerificationResult(all(checks.values()), checks, diag)


# ---------------------------------------------------------------------------
# targets and the fullness report


def pushforward_targets(n: int) -> list[Tag]:
    if n < 2:
        raise ValueError("n must be at least 2")
    out = [bundle_tag("L", (), 0)]
    if n % 2:
        for E in all_subsets(n):
            e = len(E)
            if e < 2:
                continue
            for p in range(-(e - 2), e - 1):
                if (p + e) % 2 == 0:
                    out.append(bundle_tag("L", E, p))
        return out
    s = half_rank(n)
    for E in all_subsets(n):
        e = len(E)
        if e < 2:
            continue
        for a in range(1, e):
            out.append(bundle_tag("V", E, 2 * a - e))
    for T in _halves(n):
        for a in range(1, s + 1):
            for b in range(1, s + 1):
                out.append(torsion_tag(T, -a, -b))
    return out


def score_targets(n: int, max_score: int) -> list[Tag]:
    """Every ``L_{E,p}`` with score at most ``max_score``."""
    out = []
    for E in all_subsets(n):
        for p in range(-max_score, max_score + 1):
            if (len(E) + p) % 2 == 0 and score(n, E, p) <= max_score:
                out.append(bundle_tag("L", E, p))
    return out


@dataclass
class FullnessReport:
    n: int
    gram_unimodular: bool
    results: list[tuple[Tag, int, VerificationResult]]
    errors: list[str]

    @property
    def ok(self) -> bool:
        return self.gram_unimodular and not self.errors and all(r.ok for _, _, r in self.results)

    def as_dict(self) -> dict:
        return {"n": self.n, "ok": self.ok, "gram_unimodular": self.gram_unimodular,
                "targets": len(self.results), "errors": self.errors,
                "certificates": [{"target": tag_label(t), "steps": size, **r.as_dict()}
                                 for t, size, r in self.results]}


def verify_fullness(n: int, extra_targets: Sequence[Tag] = (), max_p: int | None = None) -> FullnessReport:
    """Certify every pushforward target (plus optional extra targets)."""
    pv = pairing_vectors(n)
    gram = [[euler_pair(a, b) for b in pv.objects] for a in pv.objects]
    unimodular = is_upper_unitriangular(gram)
    targets = list(pushforward_targets(n)) + [t for t in extra_targets]
    if max_p is not None:
        targets += [bundle_tag("L", E, p) for E in all_subsets(n)
                    for p in range(-max_p, max_p + 1) if (len(E) + p) % 2 == 0]
    seen = set()
    results, errors = [], []
    for t in targets:
        if t in seen:
            continue
        seen.add(t)
        try:
            cert = generate(n, t)
        except (GenerationError, RecursionError) as exc:
            errors.append(f"{tag_label(t)}: {exc}")
            continue
        results.append((t, len(cert.steps), verify_certificate(cert)))
    return FullnessReport(n, unimodular, results, errors)
