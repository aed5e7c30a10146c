"""Acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE <k> PASS|FAIL`` line; the lines are
also collected and repeated in the pytest terminal summary.  All comparisons
are exact integer comparisons.  Runtime caps are pinned below.

Run on its own with ``pytest tests/test_acceptance.py -v`` or
``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import time
from functools import lru_cache
from math import comb

from oracles import collection_members

from hassett_ec.blowup_even import interval_claim
from hassett_ec.collection import (LineBundleItem, enumerate_collection, euler_characteristic,
                                   verify_invariance)
from hassett_ec.core_model import dictionary_audit, half_rank
from hassett_ec.exceptionality import (torsion_cohomological_nonzero, torsion_listed_conditions,
                                       verify_collection_exceptional)
from hassett_ec.fullness import pushforward_targets, score_targets, verify_fullness
from hassett_ec.windows import maxmin_audit, window_audit

ENUMERATION_CAP_SECONDS = 1.0  # per n
INVARIANCE_CAP_SECONDS = 10.0  # all n <= 10 together
EXCEPTIONAL_CAP_SECONDS = 600.0  # n = 8 alone
FULLNESS_CAP_SECONDS = 600.0  # all n <= 6 together

RESULTS: list[str] = []


def record(k: int, title: str, ok: bool, detail: str) -> None:
    line = f"ACCEPTANCE {k:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_01_cardinality_equals_euler_characteristic():
    rows = []
    ok = True
    for n in (3, 5, 7, 9, 11, 2, 4, 6, 8, 10):
        s = half_rank(n)
        closed = n * comb(n - 1, s) if n % 2 else (s + 1) ** 2 * comb(n, s + 1)
        start = time.perf_counter()
        size = len(enumerate_collection(n))
        elapsed = time.perf_counter() - start
        ok &= size == closed == euler_characteristic(n) and elapsed < ENUMERATION_CAP_SECONDS
        rows.append(f"n={n}:{size}")
    record(1, "cardinality", ok, " ".join(rows))


def test_02_spot_counts_against_independent_enumeration():
    expected = {3: (6, 0), 4: (24, 6), 5: (30, 0), 6: (180, 120)}
    ok = True
    for n, (size, torsion) in expected.items():
        coll = enumerate_collection(n)
        ok &= len(coll) == size and len(coll.torsion) == torsion
        ok &= set(coll.items) == collection_members(n)
    record(2, "spot counts", ok, "n=3:6 n=4:24(6+18) n=5:30 n=6:180(120+60)")


def test_03_invariance():
    start = time.perf_counter()
    bad = [n for n in range(2, 11) if not verify_invariance(n).closed]
    elapsed = time.perf_counter() - start
    record(3, "invariance", not bad and elapsed < INVARIANCE_CAP_SECONDS,
           f"n<=10 closed, {elapsed:.2f}s" if not bad else f"violations at n={bad}")


def test_04_window_existence():
    bad, anchor_findings = [], []
    for n in range(2, 11):
        rep = window_audit(n)
        if not rep.existence_ok:
            bad.append(n)
        if n % 2 == 0 and not rep.anchors_ok:
            bad.append(f"{n}(anchor)")
        if n % 2 and not rep.anchors_ok:
            anchor_findings.append(n)
    record(4, "window existence", not bad,
           f"all strata n<=10; odd printed-anchor findings at n={anchor_findings}" if not bad
           else f"failures at {bad}")


def test_05_maxmin_closed_forms():
    bad = [(n, e.index) for n in (2, 4, 6, 8) for e in maxmin_audit(n) if not e.matches]
    record(5, "extremes closed forms", not bad, "even n<=8 exact" if not bad else f"mismatches {bad[:5]}")


@lru_cache(maxsize=None)
def _exceptional(n: int):
    start = time.perf_counter()
    rep = verify_collection_exceptional(n)
    return rep, time.perf_counter() - start


def test_06_exceptionality():
    bad = []
    for n in range(2, 9):
        rep, elapsed = _exceptional(n)
        if rep.failures or rep.indeterminate or elapsed > EXCEPTIONAL_CAP_SECONDS:
            bad.append(n)
    rep8, t8 = _exceptional(8)
    record(6, "exceptionality", not bad,
           f"n<=8, {rep8.pairs_checked} pairs at n=8 in {t8:.0f}s, 0 indeterminate" if not bad
           else f"failures at n={bad}")


def test_07_gram_matrix():
    bad = []
    for n in range(2, 9):
        rep, _ = _exceptional(n)
        if not (rep.unitriangular and abs(rep.determinant) == 1 and rep.size == euler_characteristic(n)):
            bad.append(n)
    record(7, "Gram matrix", not bad, "unitriangular, det 1, size = Euler characteristic for n<=8"
           if not bad else f"failures at n={bad}")


def test_08_interval_claim():
    pairs = [(a, b) for a in range(0, -11, -1) for b in range(a - 1, -11, -1)]
    bad = [p for p in pairs if not interval_claim(*p)]
    record(8, "interval claim", not bad, f"{len(pairs)} pairs" if not bad else f"false at {bad[:5]}")


def test_09_torsion_criterion_equivalence():
    bad = []
    count = 0
    for s in range(0, 7):
        r = range(s + 1)
        for a2 in r:
            for b2 in r:
                for a in r:
                    for b in r:
                        count += 1
                        if torsion_listed_conditions(s, (a2, b2), (a, b)) != \
                                torsion_cohomological_nonzero(s, (a2, b2), (a, b)):
                            bad.append((s, a2, b2, a, b))
    record(9, "torsion criterion", not bad, f"{count} tuples, s<=6" if not bad else f"differ at {bad[:5]}")


def test_10_fullness():
    start = time.perf_counter()
    bad, total = [], 0
    for n in range(2, 7):
        rep = verify_fullness(n, extra_targets=score_targets(n, half_rank(n) + 4))
        total += len(rep.results)
        if not rep.ok:
            bad.append(n)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < FULLNESS_CAP_SECONDS
    record(10, "fullness certificates", ok,
           f"{total} targets for n<=6 in {elapsed:.0f}s, all four checks" if not bad else f"failures at n={bad}")


def test_11_dictionary_audit():
    bad = [n for n in range(2, 11) if not dictionary_audit(n).ok]
    record(11, "dictionary audit", not bad, "relations vanish, definitions agree, n<=10" if not bad
           else f"failures at n={bad}")


def test_12_degenerate_case_n2():
    coll = enumerate_collection(2)
    members_ok = set(coll.items) == {LineBundleItem((), 0), LineBundleItem((1, 2), 0)}
    rep, _ = _exceptional(2)
    full = verify_fullness(2)
    ok = members_ok and rep.ok and full.ok and len(pushforward_targets(2)) == 2
    record(12, "n=2", ok, "collection {O, L[1,2|0]}, exceptional, both targets certified")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
