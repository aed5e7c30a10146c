"""The invariant exceptional collections, their order, counts and symmetry."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence, Union

from .core_model import Subset, all_subsets, canon, complement, half_rank, half_subsets


@dataclass(frozen=True, order=True)
class LineBundleItem:
    """``L_{E,p}``."""

    E: Subset
    p: int

    def __post_init__(self) -> None:
        if (len(self.E) + self.p) % 2:
            raise ValueError(f"p + |E| must be even: {self}")

    @property
    def label(self) -> str:
        return f"L[{','.join(map(str, self.E))}|{self.p}]"


@dataclass(frozen=True, order=True)
class TorsionItem:
    """``O_{delta_T}(-a, -b)``; the first twist sits on the infinity side."""

    T: Subset
    a: int
    b: int

    @property
    def label(self) -> str:
        return f"O[{','.join(map(str, self.T))}](-{self.a},-{self.b})"


CollectionItem = Union[LineBundleItem, TorsionItem]


def level_key(item: CollectionItem) -> tuple[int, int]:
    """Sort key of the block an item lives in (smaller key comes first).

    Torsion blocks come first, by decreasing ``a+b``; then line bundles by
    decreasing ``e``.  Items with equal keys may appear in any order.
    """
    if isinstance(item, TorsionItem):
        return (0, -(item.a + item.b))
    return (1, -len(item.E))


def _tie_key(item: CollectionItem) -> tuple:
    if isinstance(item, TorsionItem):
        return (item.T, item.a, item.b)
    return (item.E, item.p)


@dataclass(frozen=True)
class OrderedCollection:
    n: int
    items: tuple[CollectionItem, ...]

    def __len__(self) -> int:
        return len(self.items)

    def level(self, item: CollectionItem) -> tuple[int, int]:
        return level_key(item)

    def index(self) -> dict[CollectionItem, int]:
        return {it: k for k, it in enumerate(self.items)}

    @property
    def line_bundles(self) -> list[LineBundleItem]:
        return [it for it in self.items if isinstance(it, LineBundleItem)]

    @property
    def torsion(self) -> list[TorsionItem]:
        return [it for it in self.items if isinstance(it, TorsionItem)]


def torsion_in_range(s: int, a: int, b: int) -> bool:
    if 0 < a <= s and 0 < b <= s:
        return True
    if a == 0 and 0 < b and 2 * b < s + 1:
        return True
    return b == 0 and 0 < a and 2 * a < s + 1


def line_bundle_in_range(n: int, E: Subset, p: int) -> bool:
    e = len(E)
    if (e + p) % 2:
        return False
    s = half_rank(n)
    if n % 2:
        return abs(p) + min(e, n - e) <= s
    return abs(p) + min(e, n + 1 - e) <= s + 1


def enumerate_collection(n: int) -> OrderedCollection:
    if n < 2:
        raise ValueError("n must be at least 2")
    s = half_rank(n)
    items: list[CollectionItem] = []
    if n % 2 == 0:
        for T in half_subsets(n):
            for a in range(s + 1):
                for b in range(s + 1):
                    if torsion_in_range(s, a, b):
                        items.append(TorsionItem(T, a, b))
    for E in all_subsets(n):
        for p in range(-n - 1, n + 2):
            if line_bundle_in_range(n, E, p):
                items.append(LineBundleItem(E, p))
    items.sort(key=lambda it: (level_key(it), _tie_key(it)))
    return OrderedCollection(n, tuple(items))


def euler_characteristic(n: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    s = half_rank(n)
    if n % 2:
        return n * comb(n - 1, s)
    return (s + 1) ** 2 * comb(n, s + 1)


# ---------------------------------------------------------------------------
# the S_2 x S_n action


@dataclass(frozen=True)
class GroupElement:
    """``flip`` swaps 0 and infinity; ``perm[i-1]`` is the image of marking ``i``."""

    flip: bool
    perm: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError("perm must be a bijection of 1..n")

    @staticmethod
    def identity(n: int) -> "GroupElement":
        return GroupElement(False, tuple(range(1, n + 1)))

    def image(self, members: Iterable[int]) -> Subset:
        return tuple(sorted(self.perm[i - 1] for i in members))


def act(g: GroupElement, item: CollectionItem) -> CollectionItem:
    n = len(g.perm)
    if isinstance(item, LineBundleItem):
        return LineBundleItem(g.image(item.E), -item.p if g.flip else item.p)
    T = g.image(item.T)
    if g.flip:
        return TorsionItem(complement(n, T), item.b, item.a)
    return TorsionItem(T, item.a, item.b)


def generators(n: int) -> list[GroupElement]:
    """The flip and the adjacent transpositions."""
    gens = [GroupElement(True, tuple(range(1, n + 1)))]
    for i in range(1, n):
        perm = list(range(1, n + 1))
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
        gens.append(GroupElement(False, tuple(perm)))
    return gens


@dataclass
class InvarianceReport:
    n: int
    closed: bool
    violations: list[str]
    generators_checked: int

    def as_dict(self) -> dict:
        return {"n": self.n, "closed": self.closed, "violations": self.violations,
                "generators_checked": self.generators_checked}


def verify_invariance(n: int, collection: OrderedCollection | None = None) -> InvarianceReport:
    coll = collection or enumerate_collection(n)
    members = set(coll.items)
    violations: list[str] = []
    gens = generators(n)
    for g in gens:
        for item in coll.items:
            img = act(g, item)
            if img not in members:
                violations.append(f"{item.label} -> {img.label} leaves the collection")
            elif level_key(img) != level_key(item):
                violations.append(f"{item.label} -> {img.label} changes level")
    return InvarianceReport(n, not violations, violations, len(gens))


def parse_marking(n: int, members: Sequence[int]) -> Subset:
    return canon(n, members)
