"""Index combinatorics and the divisor-class lattice on Z_n.

Markings are the integers 1..n.  A subset of markings is a sorted tuple of
distinct integers; that canonical form is used for hashing and ordering
everywhere in the package.

Two integer lattices are modelled:

* :class:`GitLineBundle` (equivalently :class:`DivisorClass`): a
  linearized line bundle ``O(j)(sum a_T E_T) (x) z^p`` on the cover.  The
  exceptional coefficients ``a_T`` only exist for even ``n``.
* :class:`TautClass`: formal integer combinations of psi and delta symbols.

:func:`taut_to_git` is the dictionary between the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping

Subset = tuple[int, ...]


class ParityError(ValueError):
    """Raised when ``p + |E|`` is odd."""


def canon(n: int, members: Iterable[int]) -> Subset:
    """Return the canonical sorted form of a subset of ``{1..n}``."""
    out = tuple(sorted(set(members)))
    if out and (out[0] < 1 or out[-1] > n):
        raise ValueError(f"subset {out} is not contained in 1..{n}")
    return out


def complement(n: int, members: Subset) -> Subset:
    inside = set(members)
    return tuple(i for i in range(1, n + 1) if i not in inside)


@lru_cache(maxsize=None)
def all_subsets(n: int) -> tuple[Subset, ...]:
    out: list[Subset] = []
    for k in range(n + 1):
        out.extend(combinations(range(1, n + 1), k))
    return tuple(out)


@lru_cache(maxsize=None)
def half_subsets(n: int) -> tuple[Subset, ...]:
    """All ``T`` with ``|T| = n/2`` (empty for odd ``n``)."""
    if n % 2:
        return ()
    return tuple(combinations(range(1, n + 1), n // 2))


@lru_cache(maxsize=None)
def _half_set(n: int) -> frozenset:
    return frozenset(half_subsets(n))


def half_rank(n: int) -> int:
    """The integer ``s`` with ``n = 2s+1`` (odd) or ``n = 2s+2`` (even)."""
    if n < 1:
        raise ValueError("n must be positive")
    return (n - 1) // 2 if n % 2 else (n - 2) // 2


def check_parity(E: Subset, p: int) -> None:
    if (len(E) + p) % 2:
        raise ParityError(f"p + |E| must be even (E={E}, p={p})")


def score(n: int, E: Subset, p: int) -> int:
    e = len(E)
    return abs(p) + min(e, n - e)


def x_coeff(n: int, T: Subset, E: Subset, p: int) -> int:
    """``|E & T| - (e - p)/2`` for a half-size ``T``."""
    if n % 2:
        raise ValueError("x_coeff is only defined for even n")
    if len(T) != n // 2:
        raise ValueError(f"|T| must be {n // 2}, got {T}")
    check_parity(E, p)
    inter = len(set(E) & set(T))
    return inter - (len(E) - p) // 2


@lru_cache(maxsize=1 << 16)
def x_values(n: int, E: Subset, p: int) -> tuple[tuple[Subset, int], ...]:
    """``(T, x_T)`` for every half-size ``T``, in the order of :func:`half_subsets`."""
    check_parity(E, p)
    emask = sum(1 << (i - 1) for i in E)
    shift = (len(E) - p) // 2
    out = []
    for T in half_subsets(n):
        tmask = sum(1 << (i - 1) for i in T)
        out.append((T, bin(emask & tmask).count("1") - shift))
    return tuple(out)


def alpha_coeff(n: int, T: Subset, E: Subset, p: int) -> int:
    return -abs(x_coeff(n, T, E, p))


# ---------------------------------------------------------------------------
# linearized line bundles / divisor classes


@dataclass(frozen=True)
class GitLineBundle:
    """``O(exponents)(sum exc[T] E_T) (x) z^character``.

    ``exc`` holds only nonzero coefficients, sorted by ``T``.
    """

    n: int
    exponents: tuple[int, ...]
    exc: tuple[tuple[Subset, int], ...] = ()
    character: int = 0

    def __post_init__(self) -> None:
        if len(self.exponents) != self.n:
            raise ValueError("exponent vector has the wrong length")
        if self.n % 2 and self.exc:
            raise ValueError("odd n carries no exceptional divisors")
        half = self.n // 2
        for T, c in self.exc:
            if len(T) != half or c == 0:
                raise ValueError(f"bad exceptional entry {(T, c)}")

    @staticmethod
    def make(n: int, exponents: Iterable[int], exc: Mapping[Subset, int] | None = None,
             character: int = 0) -> "GitLineBundle":
        items = tuple(sorted((tuple(T), int(c)) for T, c in (exc or {}).items() if c))
        return GitLineBundle(n, tuple(int(j) for j in exponents), items, int(character))

    @staticmethod
    def trivial(n: int) -> "GitLineBundle":
        return GitLineBundle(n, (0,) * n)

    def exc_map(self) -> dict[Subset, int]:
        return dict(self.exc)

    def exc_at(self, T: Subset) -> int:
        for key, c in self.exc:
            if key == T:
                return c
        return 0

    def __add__(self, other: "GitLineBundle") -> "GitLineBundle":
        if self.n != other.n:
            raise ValueError("n mismatch")
        exc = self.exc_map()
        for T, c in other.exc:
            exc[T] = exc.get(T, 0) + c
        return GitLineBundle.make(
            self.n,
            (a + b for a, b in zip(self.exponents, other.exponents)),
            exc,
            self.character + other.character,
        )

    def __neg__(self) -> "GitLineBundle":
        return GitLineBundle(self.n, tuple(-j for j in self.exponents),
                             tuple((T, -c) for T, c in self.exc), -self.character)

    def __sub__(self, other: "GitLineBundle") -> "GitLineBundle":
        return self + (-other)

    def scale(self, k: int) -> "GitLineBundle":
        return GitLineBundle.make(self.n, (k * j for j in self.exponents),
                                  {T: k * c for T, c in self.exc}, k * self.character)

    def is_trivial(self) -> bool:
        return not any(self.exponents) and not self.exc and self.character == 0


# A divisor class in the basis {H_i} + {E_T} + {z} carries exactly the data
# of a linearized line bundle, so the two names share one implementation.
DivisorClass = GitLineBundle


# ---------------------------------------------------------------------------
# tautological classes

# Symbols: ("psi0",), ("psiinf",), ("psi", i), ("d0", i), ("dinf", i), ("dT", T)
Symbol = tuple


@dataclass(frozen=True)
class TautClass:
    n: int
    terms: tuple[tuple[Symbol, int], ...] = ()

    @staticmethod
    def make(n: int, terms: Mapping[Symbol, int]) -> "TautClass":
        for sym in terms:
            _check_symbol(n, sym)
        return TautClass(n, tuple(sorted(((s, int(c)) for s, c in terms.items() if c), key=repr)))

    @staticmethod
    def of(n: int, *pairs: tuple[int, Symbol]) -> "TautClass":
        acc: dict[Symbol, int] = {}
        for c, sym in pairs:
            acc[sym] = acc.get(sym, 0) + c
        return TautClass.make(n, acc)

    def as_dict(self) -> dict[Symbol, int]:
        return dict(self.terms)

    def __add__(self, other: "TautClass") -> "TautClass":
        acc = self.as_dict()
        for s, c in other.terms:
            acc[s] = acc.get(s, 0) + c
        return TautClass.make(self.n, acc)

    def __neg__(self) -> "TautClass":
        return TautClass(self.n, tuple((s, -c) for s, c in self.terms))

    def __sub__(self, other: "TautClass") -> "TautClass":
        return self + (-other)


def _check_symbol(n: int, sym: Symbol) -> None:
    kind = sym[0]
    if kind in ("psi0", "psiinf") and len(sym) == 1:
        return
    if kind in ("psi", "d0", "dinf") and len(sym) == 2 and 1 <= sym[1] <= n:
        return
    if kind == "dT" and len(sym) == 2:
        if n % 2:
            raise ValueError("boundary divisors delta_T exist only for even n")
        if tuple(sym[1]) in _half_set(n):
            return
    raise ValueError(f"invalid symbol {sym!r} for n={n}")


@lru_cache(maxsize=None)
def _generator_image(n: int, sym: Symbol) -> GitLineBundle:
    kind = sym[0]
    zero = [0] * n
    halves = half_subsets(n)
    if kind == "psi0":
        return GitLineBundle.make(n, zero, {T: 1 for T in halves}, -2)
    if kind == "psiinf":
        return GitLineBundle.make(n, zero, {T: 1 for T in halves}, 2)
    i = sym[1]
    if kind == "dT":
        return GitLineBundle.make(n, zero, {tuple(i): 2}, 0)
    vec = list(zero)
    if kind == "psi":
        vec[i - 1] = -2
        return GitLineBundle.make(n, vec, {T: 1 for T in halves}, 0)
    vec[i - 1] = 1
    if kind == "d0":
        return GitLineBundle.make(n, vec, {T: -1 for T in halves if i not in T}, 1)
    if kind == "dinf":
        return GitLineBundle.make(n, vec, {T: -1 for T in halves if i in T}, -1)
    raise ValueError(f"unknown symbol {sym!r}")


def taut_to_git(c: TautClass, n: int | None = None) -> DivisorClass:
    """Translate a tautological class into the linearized-bundle lattice."""
    n = c.n if n is None else n
    if n < 2:
        raise ValueError("n must be at least 2")
    if n != c.n:
        raise ValueError("n mismatch")
    exps = [0] * n
    exc: dict[Subset, int] = {}
    char = 0
    for sym, k in c.terms:
        _check_symbol(n, sym)
        img = _generator_image(n, sym)
        for idx, j in enumerate(img.exponents):
            exps[idx] += k * j
        for T, a in img.exc:
            exc[T] = exc.get(T, 0) + k * a
        char += k * img.character
    return GitLineBundle.make(n, exps, exc, char)


# ---------------------------------------------------------------------------
# the line bundles L_{E,p} and their even-case relatives R, Q, V


def taut_form_of_L(n: int, E: Subset, p: int) -> TautClass:
    """The psi/delta expression defining ``L_{E,p}``."""
    check_parity(E, p)
    e = len(E)
    terms: dict[Symbol, int] = {("psiinf",): -((e - p) // 2)}
    for i in E:
        terms[("dinf", i)] = terms.get(("dinf", i), 0) - 1
    if n % 2 == 0:
        for T, x in x_values(n, tuple(E), p):
            if x > 0:
                terms[("dT", T)] = -x
    return TautClass.make(n, terms)


@lru_cache(maxsize=1 << 16)
def git_form_of_L(n: int, E: Subset, p: int) -> GitLineBundle:
    check_parity(E, p)
    exps = [-1 if i in set(E) else 0 for i in range(1, n + 1)]
    exc = {T: -abs(x) for T, x in x_values(n, tuple(E), p)}
    return GitLineBundle.make(n, exps, exc, p)


@lru_cache(maxsize=1 << 16)
def git_form(kind: str, n: int, E: Subset, p: int) -> GitLineBundle:
    """Linearized form of ``L``, ``R``, ``Q`` or ``V`` attached to ``(E, p)``.

    For odd ``n`` all four coincide with ``O(-E) z^p``.
    """
    check_parity(E, p)
    if kind == "L":
        return git_form_of_L(n, E, p)
    exps = [-1 if i in set(E) else 0 for i in range(1, n + 1)]
    xs = dict(x_values(n, tuple(E), p))
    if kind == "R":
        exc = xs
    elif kind == "Q":
        exc = {T: -x for T, x in xs.items()}
    elif kind == "V":
        exc = {T: abs(x) for T, x in xs.items()}
    else:
        raise ValueError(f"unknown bundle kind {kind!r}")
    return GitLineBundle.make(n, exps, exc, p)


def taut_form(kind: str, n: int, E: Subset, p: int) -> TautClass:
    """Tautological expression of ``L``, ``R``, ``Q``; ``V`` via the R route."""
    check_parity(E, p)
    e = len(E)
    if kind == "L":
        return taut_form_of_L(n, E, p)
    if kind == "R":
        terms = {("psiinf",): -((e - p) // 2)}
        terms.update({("dinf", i): -1 for i in E})
        return TautClass.make(n, terms)
    if kind == "Q":
        terms = {("psi0",): -((e + p) // 2)}
        terms.update({("d0", i): -1 for i in E})
        return TautClass.make(n, terms)
    if kind == "V":
        return taut_form_V(n, E, p, route="R")
    raise ValueError(f"unknown bundle kind {kind!r}")


def taut_form_V(n: int, E: Subset, p: int, route: str) -> TautClass:
    """``V_{E,p}`` built from ``R`` (adding negative-x boundaries) or from ``Q``."""
    if n % 2:
        raise ValueError("V is only defined for even n")
    if route == "R":
        base, sign = taut_form("R", n, E, p), -1
    elif route == "Q":
        base, sign = taut_form("Q", n, E, p), 1
    else:
        raise ValueError("route must be 'R' or 'Q'")
    extra: dict[Symbol, int] = {}
    for T, x in x_values(n, tuple(E), p):
        if x * sign > 0:
            extra[("dT", T)] = abs(x)
    return base + TautClass.make(n, extra)


# ---------------------------------------------------------------------------
# restriction to a boundary divisor delta_T = P^s x P^s


def _taut_restriction(n: int, sym: Symbol, T: Subset) -> tuple[int, int]:
    kind = sym[0]
    if kind == "psiinf":
        return (-1, 0)
    if kind == "psi0":
        return (0, -1)
    if kind == "dT":
        return (-1, -1) if tuple(sym[1]) == T else (0, 0)
    i = sym[1]
    if kind == "dinf":
        return (1, 0) if i in T else (0, 0)
    if kind == "d0":
        return (0, 1) if i not in T else (0, 0)
    if kind == "psi":
        # psi_i = -delta_{i0} - delta_{iinf} holds in the lattice for even n
        return (-1, 0) if i in T else (0, -1)
    raise ValueError(f"unknown symbol {sym!r}")


@lru_cache(maxsize=None)
def _git_generator_restrictions(n: int, T: Subset) -> dict[tuple, tuple[Fraction, Fraction]]:
    """Restrictions of the GIT basis vectors, solved from the dictionary.

    Individual basis vectors restrict to half-integral bidegrees; only classes
    that descend restrict integrally.
    """
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    out: dict[tuple, tuple[Fraction, Fraction]] = {}
    for T2 in half_subsets(n):
        out[("E", T2)] = (-half, -half) if T2 == T else (Fraction(0), Fraction(0))
    out[("z",)] = (-quarter, quarter)
    # H_i = delta_{i0} + sum_{T' not containing i} E_T' - z
    for i in range(1, n + 1):
        d0 = (Fraction(0), Fraction(1)) if i not in T else (Fraction(0), Fraction(0))
        e_sum = sum(1 for T2 in half_subsets(n) if i not in T2 and T2 == T)
        out[("H", i)] = (d0[0] - half * e_sum + quarter, d0[1] - half * e_sum - quarter)
    return out


@lru_cache(maxsize=None)
def _quartered_table(n: int, T: Subset) -> tuple[tuple[tuple[int, int], ...], tuple[int, int], tuple[int, int]]:
    """The same restrictions scaled by 4 to integers: (H_1..H_n, E_T, z)."""
    table = _git_generator_restrictions(n, T)
    q = lambda pair: (int(4 * pair[0]), int(4 * pair[1]))
    hs = tuple(q(table[("H", i)]) for i in range(1, n + 1))
    return hs, q(table[("E", T)]), q(table[("z",)])


def restrict_to_boundary(c: TautClass | GitLineBundle, T: Subset) -> tuple[int, int]:
    """Bidegree of the restriction to ``delta_T``; first entry is the infinity side."""
    n = c.n
    if n % 2 or tuple(T) not in _half_set(n):
        raise ValueError(f"invalid boundary index {T} for n={n}")
    T = tuple(T)
    if isinstance(c, TautClass):
        a = b = 0
        for sym, k in c.terms:
            ra, rb = _taut_restriction(n, sym, T)
            a += k * ra
            b += k * rb
        return (a, b)
    return _restrict_git(c, T)


@lru_cache(maxsize=1 << 18)
def _restrict_git(c: GitLineBundle, T: Subset) -> tuple[int, int]:
    hs, eT, zz = _quartered_table(c.n, T)
    a = b = 0
    for (ra, rb), j in zip(hs, c.exponents):
        a += j * ra
        b += j * rb
    k = c.exc_at(T)
    a += k * eT[0] + c.character * zz[0]
    b += k * eT[1] + c.character * zz[1]
    if a % 4 or b % 4:
        raise ValueError("class does not restrict integrally (it does not descend)")
    return (a // 4, b // 4)


# ---------------------------------------------------------------------------
# dictionary audit


def tautological_relations(n: int) -> list[tuple[str, TautClass]]:
    """Classes that must vanish: the relations among psi and delta symbols."""
    out: list[tuple[str, TautClass]] = []
    if n % 2:
        out.append(("psi0+psiinf", TautClass.of(n, (1, ("psi0",)), (1, ("psiinf",)))))
        for i in range(1, n + 1):
            out.append((f"psi0 via {i}", TautClass.of(n, (1, ("psi0",)), (1, ("d0", i)), (-1, ("dinf", i)))))
            out.append((f"psi_{i}", TautClass.of(n, (1, ("psi", i)), (1, ("d0", i)), (1, ("dinf", i)))))
        return out
    halves = half_subsets(n)
    every = [(-1, ("dT", T)) for T in halves]
    out.append(("psi0+psiinf", TautClass.of(n, (1, ("psi0",)), (1, ("psiinf",)), *every)))
    for i in range(1, n + 1):
        with_i = [(-1, ("dT", T)) for T in halves if i in T]
        without_i = [(-1, ("dT", T)) for T in halves if i not in T]
        out.append((f"psi0 via {i}", TautClass.of(n, (1, ("psi0",)), (-1, ("dinf", i)), (1, ("d0", i)), *with_i)))
        out.append((f"psiinf via {i}", TautClass.of(n, (1, ("psiinf",)), (-1, ("d0", i)), (1, ("dinf", i)), *without_i)))
        out.append((f"psi_{i}", TautClass.of(n, (1, ("psi", i)), (1, ("d0", i)), (1, ("dinf", i)))))
    return out


@dataclass
class DictionaryReport:
    n: int
    relation_failures: list[str]
    definition_failures: list[str]
    pairs_checked: int

    @property
    def ok(self) -> bool:
        return not self.relation_failures and not self.definition_failures

    def as_dict(self) -> dict:
        return {"n": self.n, "ok": self.ok, "relations_failed": self.relation_failures,
                "definitions_failed": self.definition_failures[:20], "pairs_checked": self.pairs_checked}


def dictionary_audit(n: int, p_bound: int | None = None) -> DictionaryReport:
    """Relations map to zero and both definitions of every bundle agree."""
    bound = half_rank(n) + 2 if p_bound is None else p_bound
    rel_fail = [name for name, cls in tautological_relations(n) if not taut_to_git(cls).is_trivial()]
    def_fail: list[str] = []
    checked = 0
    kinds = ("L",) if n % 2 else ("L", "R", "Q", "V")
    for E in all_subsets(n):
        for p in range(-bound, bound + 1):
            if (len(E) + p) % 2:
                continue
            checked += 1
            for kind in kinds:
                if taut_to_git(taut_form(kind, n, E, p)) != git_form(kind, n, E, p):
                    def_fail.append(f"{kind}[{E}|{p}]")
            if n % 2 == 0 and taut_to_git(taut_form_V(n, E, p, "Q")) != git_form("V", n, E, p):
                def_fail.append(f"V-by-Q[{E}|{p}]")
    return DictionaryReport(n, rel_fail, def_fail, checked)
