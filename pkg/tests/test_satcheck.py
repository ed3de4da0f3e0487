"""Tableau satisfiability against the bounded model finder."""

import random

import pytest

from dlq import (
    Interpretation,
    ResourceLimitExceeded,
    brute_force_model,
    interpretation_to_json,
    is_model,
    is_satisfiable,
    parse_kb,
)
from dlq.satcheck import _canonical_placements, _solve_cnf

from conftest import make_kb


def test_trivial_verdicts():
    assert not is_satisfiable(parse_kb("A(a). A SubClassOf Bot."))
    assert not is_satisfiable(parse_kb("A(a). r(a,b). not r(a,b)."))
    assert is_satisfiable(
        parse_kb("A(a). A SubClassOf exists (r & s).B. B SubClassOf exists (r).A.")
    )


def test_curated_unsat_set():
    unsat = [
        "A(a). A SubClassOf Bot.",
        "A(a). not A(a).",
        "A(a). Top SubClassOf Bot.",
        "r(a,b). not r(a,b).",
        "A(a). A SubClassOf B. B SubClassOf not A.",
        "A(a). A SubClassOf exists (r).B. Top SubClassOf forall (r).Bot.",
        "A(a). A SubClassOf exists (r & s).B. B SubClassOf Bot.",
        "A(a). A SubClassOf (B and not B).",
    ]
    for text in unsat:
        kb = parse_kb(text)
        assert not is_satisfiable(kb), text
        assert brute_force_model(kb, 4) is None, text


def test_blocking_terminates_infinite_chain():
    assert is_satisfiable(parse_kb("A(a). A SubClassOf exists (r).A."))
    assert not is_satisfiable(
        parse_kb("A(a). A SubClassOf exists (r).A. A SubClassOf forall (r).(A and not A).")
    )


def test_brute_force_model_examples():
    kb = parse_kb("A(a). A SubClassOf exists (r & s).B. B SubClassOf exists (r).A.")
    model = brute_force_model(kb, 2)
    assert model is not None
    assert is_model(model, kb)
    # the self-loop structure on one element already satisfies the KB,
    # so the smallest-domain search stops at size 1
    assert len(model.domain) == 1

    assert brute_force_model(parse_kb("A(a). A SubClassOf Bot."), 3) is None

    singleton = brute_force_model(parse_kb("A(a). Top SubClassOf Top."), 1)
    assert singleton is not None and len(singleton.domain) == 1


def test_brute_force_smallest_domain():
    # two individuals forced apart need two elements
    kb = parse_kb("A(a). not A(b). Top SubClassOf Top.")
    model = brute_force_model(kb, 3)
    assert model is not None and len(model.domain) == 2


def test_agreement_on_random_kbs():
    rng = random.Random(81)
    found_models = 0
    unsat_count = 0
    for _ in range(150):
        kb = make_kb(rng)
        verdict = is_satisfiable(kb)
        witness = brute_force_model(kb, 3)
        if witness is not None:
            found_models += 1
            assert verdict, "a found model contradicts an unsat verdict"
            assert is_model(witness, kb)
        if not verdict:
            unsat_count += 1
            assert witness is None
    assert found_models > 30 and unsat_count > 5


def test_determinism_verdict_and_trace():
    rng = random.Random(82)
    for _ in range(25):
        kb = make_kb(rng)
        t1, t2 = [], []
        v1 = is_satisfiable(kb, trace=t1)
        v2 = is_satisfiable(kb, trace=t2)
        assert v1 == v2
        assert t1 == t2

    m1 = brute_force_model(parse_kb("A(a). A SubClassOf exists (r).B."), 3)
    m2 = brute_force_model(parse_kb("A(a). A SubClassOf exists (r).B."), 3)
    assert interpretation_to_json(m1) == interpretation_to_json(m2)


def test_resource_caps():
    chain = parse_kb(
        "A0(a). A0 SubClassOf exists (r).A1. A1 SubClassOf exists (r).A2. "
        "A2 SubClassOf exists (r).A3. A3 SubClassOf exists (r).A4."
    )
    with pytest.raises(ResourceLimitExceeded):
        is_satisfiable(chain, max_nodes=2)
    assert is_satisfiable(chain)


def test_canonical_placements_symmetry_reduction():
    maps = list(_canonical_placements(("a", "b"), 3))
    # first name pinned to element 0; second name to 0 or the next fresh slot
    assert maps == [{"a": 0, "b": 0}, {"a": 0, "b": 1}]
    assert list(_canonical_placements((), 2)) == [{}]


def test_cnf_solver_basics():
    # (x1 or x2) and (not x1 or x2) and (not x2 or x3)
    model = _solve_cnf(3, [(1, 2), (-1, 2), (-2, 3)])
    assert model is not None
    assert model[2] and model[3]
    assert _solve_cnf(1, [(1,), (-1,)]) is None
    assert _solve_cnf(2, [(1, 2), (-1, -2), (1, -2), (-1, 2)]) is None


def test_model_validation_examples():
    kb = parse_kb("A(a). A SubClassOf exists (r).B.")
    i = Interpretation(
        ["d", "e"], {"A": {"d"}, "B": {"e"}}, {"r": {("d", "e")}}, {"a": "d"}
    )
    assert is_model(i, kb)
    broken = Interpretation(["d"], {"A": {"d"}}, {}, {"a": "d"})
    assert not is_model(broken, kb)
