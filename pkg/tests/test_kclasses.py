import pytest
from hypothesis import given, strategies as st

from hassett_ec.collection import enumerate_collection
from hassett_ec.core_model import GitLineBundle, all_subsets, git_form_of_L, half_subsets
from hassett_ec.kclasses import (BoundarySheaf, euler_pair, quotient_euler, quotient_euler_unfiltered,
                                 torsion_to_bundle_by_resolution)


def test_trivial_bundle_has_euler_one():
    for n in range(2, 8):
        assert quotient_euler(GitLineBundle.trivial(n)) == 1


def test_odd_examples():
    N = git_form_of_L(3, (1, 2, 3), 1)
    O = GitLineBundle.trivial(3)
    assert euler_pair(N, O) == 3
    assert euler_pair(O, N) == 0


@st.composite
def bundles(draw):
    n = draw(st.sampled_from([3, 4, 5, 6]))
    E = tuple(sorted(draw(st.sets(st.integers(1, n)))))
    p = draw(st.integers(-6, 6).filter(lambda q: (q + len(E)) % 2 == 0))
    F = tuple(sorted(draw(st.sets(st.integers(1, n)))))
    q = draw(st.integers(-6, 6).filter(lambda r: (r + len(F)) % 2 == 0))
    return git_form_of_L(n, E, p) - git_form_of_L(n, F, q)


@given(bundles())
def test_vectorized_correction_matches_plain_loop(bundle):
    assert quotient_euler(bundle) == quotient_euler_unfiltered(bundle)


@st.composite
def torsion_and_bundle(draw):
    n = draw(st.sampled_from([2, 4, 6]))
    T = draw(st.sampled_from(half_subsets(n)))
    A = BoundarySheaf(n, T, draw(st.integers(-4, 4)), draw(st.integers(-4, 4)))
    E = tuple(sorted(draw(st.sets(st.integers(1, n)))))
    p = draw(st.integers(-4, 4).filter(lambda q: (q + len(E)) % 2 == 0))
    return A, git_form_of_L(n, E, p)


@given(torsion_and_bundle())
def test_torsion_pairing_two_routes(data):
    """Closed form on P^s x P^s against the resolution by two line bundles."""
    A, B = data
    assert euler_pair(A, B) == torsion_to_bundle_by_resolution(A, B)


@given(torsion_and_bundle())
def test_bundle_to_torsion_equals_resolution_difference(data):
    """chi(L, O_delta(d)) = chi(L, D) - chi(L, D(-delta)) for the same resolution."""
    from hassett_ec.kclasses import boundary_divisor, boundary_twist
    A, L = data
    D = boundary_twist(A.n, A.d1, A.d2)
    delta = boundary_divisor(A.n, A.T)
    assert euler_pair(L, A) == quotient_euler(D - L) - quotient_euler(D - delta - L)


def test_disjoint_torsion_pair_is_zero():
    T1, T2 = half_subsets(4)[:2]
    assert euler_pair(BoundarySheaf(4, T1, -1, -1), BoundarySheaf(4, T2, -1, -1)) == 0
    assert euler_pair(BoundarySheaf(4, T1, -1, -1), BoundarySheaf(4, T1, -1, -1)) == 1
