from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from hassett_ec.core_model import (GitLineBundle, ParityError, TautClass, all_subsets, alpha_coeff,
                                   dictionary_audit, git_form_of_L, half_subsets, restrict_to_boundary,
                                   score, taut_form_of_L, taut_to_git, tautological_relations, x_coeff)


@pytest.mark.parametrize("n,E,p,expected", [(5, (1, 2), 0, 2), (3, (), 0, 0), (4, (1, 2, 3, 4), 2, 2)])
def test_score_examples(n, E, p, expected):
    assert score(n, E, p) == expected


@pytest.mark.parametrize("T,expected", [((1, 2), 1), ((3, 4), -1), ((1, 3), 0)])
def test_x_coeff_examples(T, expected):
    assert x_coeff(4, T, (1, 2), 0) == expected


def test_alpha_examples():
    assert alpha_coeff(4, (1, 2), (1, 2), 0) == -1
    assert alpha_coeff(4, (1, 3), (1, 2), 0) == 0
    assert alpha_coeff(6, (1, 2, 3), (1, 2, 3, 4), 0) == -1


def test_parity_is_enforced():
    with pytest.raises(ParityError):
        x_coeff(4, (1, 2), (1,), 0)


def test_taut_relations_examples():
    assert taut_to_git(TautClass.of(3, (1, ("psi0",)), (1, ("psiinf",)))).is_trivial()
    assert taut_to_git(TautClass.of(3, (1, ("psi", 1)), (1, ("d0", 1)), (1, ("dinf", 1)))).is_trivial()
    even = TautClass.of(4, (1, ("psi0",)), (1, ("psiinf",)), *[(-1, ("dT", T)) for T in half_subsets(4)])
    assert taut_to_git(even).is_trivial()


def test_git_form_examples():
    assert git_form_of_L(3, (1, 2), 0) == GitLineBundle.make(3, (-1, -1, 0))
    assert git_form_of_L(2, (), 0).is_trivial()
    b = git_form_of_L(4, (1, 2), 0)
    assert b.exponents == (-1, -1, 0, 0) and b.character == 0
    assert b.exc_map() == {(1, 2): -1, (3, 4): -1}


def test_restriction_table():
    T = (1, 2)
    assert restrict_to_boundary(TautClass.of(4, (1, ("psiinf",))), T) == (-1, 0)
    assert restrict_to_boundary(TautClass.of(4, (1, ("dT", T))), T) == (-1, -1)


def test_restriction_of_L_and_its_dual():
    # L itself restricts to (0, 1); its dual gives the (0, -1) recorded as the worked value.
    L = git_form_of_L(4, (1, 2), 0)
    assert restrict_to_boundary(L, (1, 2)) == (0, 1)
    assert restrict_to_boundary(-L, (1, 2)) == (0, -1)


def test_restriction_taut_and_git_agree():
    for n in (4, 6):
        for E in all_subsets(n)[::3]:
            for p in (-2, 0, 2):
                if (len(E) + p) % 2:
                    p += 1
                for T in half_subsets(n):
                    assert restrict_to_boundary(taut_form_of_L(n, E, p), T) == \
                        restrict_to_boundary(git_form_of_L(n, E, p), T)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_relations_vanish(n):
    for name, rel in tautological_relations(n):
        assert taut_to_git(rel).is_trivial(), name


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_dictionary_audit_small(n):
    rep = dictionary_audit(n)
    assert rep.ok, rep.as_dict()


@st.composite
def even_bundle_args(draw):
    n = draw(st.sampled_from([4, 6]))
    E = tuple(sorted(draw(st.sets(st.integers(1, n)))))
    p = draw(st.integers(-4, 4).filter(lambda q: (q + len(E)) % 2 == 0))
    return n, E, p


@given(even_bundle_args())
def test_taut_and_git_forms_agree(args):
    n, E, p = args
    assert taut_to_git(taut_form_of_L(n, E, p)) == git_form_of_L(n, E, p)


@given(even_bundle_args())
def test_alpha_is_minus_abs_x_and_antisymmetric(args):
    n, E, p = args
    for T in half_subsets(n):
        comp = tuple(i for i in range(1, n + 1) if i not in T)
        assert alpha_coeff(n, T, E, p) == -abs(x_coeff(n, T, E, p))
        # x over complementary halves sums to p
        assert x_coeff(n, T, E, p) + x_coeff(n, comp, E, p) == p


@given(st.integers(2, 7), st.data())
def test_score_is_flip_symmetric(n, data):
    E = tuple(sorted(data.draw(st.sets(st.integers(1, n)))))
    p = data.draw(st.integers(-5, 5).filter(lambda q: (q + len(E)) % 2 == 0))
    assert score(n, E, p) == score(n, E, -p)
