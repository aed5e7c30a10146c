import json
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from hassett_ec.fullness import (GenerationCertificate, GenerationError, bundle_tag, generate,
                                 generate_even, generate_odd, koszul_terms, pushforward_targets,
                                 quotient_chain, score_targets, tag_label, torsion_tag,
                                 verify_certificate, verify_fullness)


def _labels(step):
    return {tag_label(t): c for t, c in step.terms}


def test_odd_koszul_examples():
    st1 = koszul_terms("OddType1", 3, (1, 2), ((), 2))
    assert _labels(st1) == {"L[1,2|0]": 1, "L[1|1]": -1, "L[2|1]": -1, "L[|2]": 1}
    st2 = koszul_terms("OddType1", 3, (2, 3), ((1,), 1))
    assert _labels(st2) == {"L[1,2,3|-1]": 1, "L[1,2|0]": -1, "L[1,3|0]": -1, "L[1|1]": 1}


def test_even_k2_example():
    step = koszul_terms("EvenK2", 4, (1, 2), ((1, 2), 0))
    assert _labels(step) == {"R[1,2|0]": 1, "R[2|-1]": -1, "R[1|-1]": -1, "R[|-2]": 1}


def test_quotient_chain_examples():
    full = quotient_chain(4, "LtoR", (1, 2, 3, 4), 2)
    quotients = [t for t, _ in full.terms if t[0] == "O"]
    assert len(quotients) == 6 and all(t[2:] == (-1, 0) for t in quotients)
    assert [t for t, _ in quotient_chain(4, "LtoQ", (), 0).terms if t[0] == "O"] == []
    rv = [t for t, _ in quotient_chain(4, "RtoV", (1, 2), 0).terms if t[0] == "O"]
    assert rv == [torsion_tag((3, 4), 0, -1)]


def test_quotient_chain_rejects_wrong_target():
    with pytest.raises(GenerationError):
        quotient_chain(4, "LtoR", (1, 2, 3, 4), 2, target=bundle_tag("L", (1,), 1))


def test_generate_odd_small():
    cert = generate_odd(3, (), 2)
    non_leaf = [st for st in cert.steps if st.kind != "Leaf"]
    assert [tag_label(st.target) for st in non_leaf][-1] == "L[|2]"
    assert {tag_label(st.target) for st in non_leaf} == {"L[1|1]", "L[2|1]", "L[|2]"}
    assert verify_certificate(cert).ok
    leaf = generate_odd(3, (1, 2), 0)
    assert [st.kind for st in leaf.steps] == ["Leaf"]


def test_generate_odd_deeper_with_low_score_leaves():
    cert = generate_odd(5, (), 4)
    assert verify_certificate(cert).ok
    assert len(cert.steps) > 2
    assert all(abs(t[2]) + min(len(t[1]), 5 - len(t[1])) <= 2 for t in cert.leaves)


def test_generate_even_examples():
    assert [st.kind for st in generate_even(4, bundle_tag("L", (1, 2), 0)).steps] == ["Leaf"]
    for n, tag in [(4, bundle_tag("R", (1, 2, 3, 4), 2)), (2, bundle_tag("L", (), 2))]:
        assert verify_certificate(generate_even(n, tag)).ok


def _swap_first_leaf(cert, new_tag):
    steps = list(cert.steps)
    k = next(i for i, st in enumerate(steps) if st.kind == "Leaf")
    old = steps[k].target
    steps[k] = replace(steps[k], target=new_tag, terms=((new_tag, 1),))
    return GenerationCertificate(cert.n, cert.target, steps), old


def test_leaf_outside_collection_fails_leaf_check():
    bad, _ = _swap_first_leaf(generate_odd(3, (), 2), bundle_tag("L", (1, 2, 3), 3))
    res = verify_certificate(bad)
    assert not res.ok and not res.checks["leaves"]


def test_perturbed_multiplicity_fails_k_exactness():
    cert = generate_odd(3, (), 2)
    steps = list(cert.steps)
    k = next(i for i, st in enumerate(steps) if st.kind == "OddType1")
    terms = list(steps[k].terms)
    t, c = terms[-1]
    terms[-1] = (t, c * 2)
    steps[k] = replace(steps[k], terms=tuple(terms))
    res = verify_certificate(GenerationCertificate(cert.n, cert.target, steps))
    assert not res.ok and not res.checks["k_exact"] and not res.checks["closed_forms"]


def test_dropped_step_fails_dag_check():
    cert = generate_odd(3, (), 2)
    res = verify_certificate(GenerationCertificate(cert.n, cert.target, cert.steps[1:]))
    assert not res.checks["dag"]


@given(st.sampled_from([2, 3, 4, 5]), st.data())
def test_certificate_json_round_trip(n, data):
    target = data.draw(st.sampled_from(pushforward_targets(n)))
    cert = generate(n, target)
    again = GenerationCertificate.from_dict(json.loads(cert.to_json()))
    assert again == cert and verify_certificate(again).ok


def test_unknown_schema_is_rejected():
    obj = json.loads(generate(3, bundle_tag("L", (), 0)).to_json())
    obj["schema"] = "something-else"
    with pytest.raises(ValueError):
        GenerationCertificate.from_dict(obj)


def test_pushforward_target_lists():
    assert len(pushforward_targets(3)) == 6
    assert [tag_label(t) for t in pushforward_targets(2)] == ["L[|0]", "V[1,2|0]"]
    four = pushforward_targets(4)
    assert sum(t[0] == "O" for t in four) == 6


@pytest.mark.parametrize("n", range(2, 6))
def test_fullness_small(n):
    s = (n - 1) // 2 if n % 2 else (n - 2) // 2
    rep = verify_fullness(n, extra_targets=score_targets(n, s + 4))
    assert rep.ok, rep.errors[:3]


def test_even_pushforward_twist_formula():
    from itertools import combinations
    from hassett_ec.core_model import git_form, half_subsets
    for E in combinations(range(1, 5), 2):
        b = git_form("V", 4, E, 0)
        assert b.exponents == tuple(-1 if i in E else 0 for i in range(1, 5)) and b.character == 0
        for T in half_subsets(4):
            outside = len(set(E) - set(T))
            assert b.exc_at(T) == abs(1 - outside)
