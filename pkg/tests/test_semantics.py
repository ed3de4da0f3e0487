"""Concept evaluation, matching, homomorphisms, neighbourhoods, forests."""

import random

import pytest

from dlq import (
    Atomic,
    BOT,
    ConceptAssertion,
    EmptyRestriction,
    Exists,
    ForwardTree,
    GCI,
    Interpretation,
    NotForest,
    RoleAssertion,
    RoleConjunction,
    RootedForest,
    UnassignedIndividual,
    check_axiom,
    classify_forest,
    eval_concept,
    find_homomorphism,
    find_matches,
    interpretation_from_json,
    interpretation_to_json,
    is_homomorphism,
    is_lff_like,
    neighbourhood,
    parse_cq,
    restrict,
)
from dlq.semantics import is_match, satisfies

from conftest import brute_matches, make_cq, make_interpretation


def small():
    return Interpretation(
        ["d", "e"], {"A": {"d"}, "B": {"e"}}, {"r": {("d", "e")}}, {"a": "d"}
    )


def test_eval_concept_examples():
    i = small()
    assert eval_concept(i, BOT) == frozenset()
    assert eval_concept(i, Exists(RoleConjunction(["r"]), Atomic("B"))) == {"d"}
    assert eval_concept(i, Exists(RoleConjunction(["r", "s"]), Atomic("B"))) == frozenset()


def test_check_axiom_examples():
    i = small()
    assert check_axiom(i, GCI(Atomic("A"), Exists(RoleConjunction(["r"]), Atomic("B"))))
    from dlq import NegRoleAssertion

    assert check_axiom(i, NegRoleAssertion("r", "a", "a"))
    with pytest.raises(UnassignedIndividual):
        check_axiom(i, RoleAssertion("r", "a", "b"))


def test_find_matches_examples():
    i = small()
    q = parse_cq("r(?x,?y)")
    assert list(find_matches(i, q)) == [{"x": "d", "y": "e"}]
    empty = Interpretation(["d"])
    assert list(find_matches(empty, parse_cq("A(?x)"))) == []


def test_find_matches_agrees_with_product_enumeration():
    rng = random.Random(21)
    for _ in range(80):
        i = make_interpretation(rng, rng.randint(1, 4))
        q = make_cq(rng, 4, var_pool=("x", "y", "z"))
        got = sorted(sorted(m.items()) for m in find_matches(i, q))
        want = sorted(sorted(m.items()) for m in brute_matches(i, q))
        assert got == want


def test_homomorphism_identity_and_absence():
    i = small()
    ident = {e: e for e in i.domain}
    assert is_homomorphism(i, i, ident)
    assert find_homomorphism(i, i) is not None

    src = Interpretation(["x"], {"A": {"x"}})
    dst = Interpretation(["y"], {"B": {"y"}})
    assert find_homomorphism(src, dst) is None


def test_homomorphism_name_preservation():
    src = Interpretation(["x"], {"A": {"x"}}, names={"a": "x"})
    dst = Interpretation(["y", "z"], {"A": {"y", "z"}}, names={"a": "z"})
    h = find_homomorphism(src, dst, {"a"})
    assert h == {"x": "z"}
    assert find_homomorphism(src, Interpretation(["y"], {"A": {"y"}}), {"a"}) is None


def test_homomorphisms_preserve_matches():
    rng = random.Random(22)
    for _ in range(60):
        src = make_interpretation(rng, rng.randint(1, 3), edge_p=0.35)
        dst = make_interpretation(rng, rng.randint(1, 4), edge_p=0.5, member_p=0.6)
        h = find_homomorphism(src, dst)
        if h is None:
            continue
        q = make_cq(rng, 3, var_pool=("x", "y"))
        for m in brute_matches(src, q):
            assert is_match(dst, q, {v: h[e] for v, e in m.items()})


def test_restrict_examples():
    i = small()
    assert restrict(i, set(i.domain)) == i
    r = restrict(i, {"e"})
    assert "a" not in r.names
    assert r.role_ext("r") == frozenset()
    with pytest.raises(EmptyRestriction):
        restrict(i, set())


def test_neighbourhood_examples():
    chain = Interpretation(
        ["d1", "d2", "d3"], {}, {"r": {("d1", "d2"), ("d2", "d3")}}
    )
    assert set(neighbourhood(chain, "d2", 0).domain) == {"d2"}
    assert set(neighbourhood(chain, "d2", 1).domain) == {"d1", "d2", "d3"}
    assert set(neighbourhood(chain, "d3", 1).domain) == {"d2", "d3"}


def test_neighbourhood_monotone():
    rng = random.Random(23)
    for _ in range(40):
        i = make_interpretation(rng, rng.randint(1, 5))
        d = rng.choice(i.domain)
        prev = set()
        for k in range(4):
            cur = set(neighbourhood(i, d, k).domain)
            assert prev <= cur
            prev = cur


def test_classify_forest_examples():
    named_root = Interpretation(
        ["u", "c"], {}, {"r": {("u", "c")}}, {"a": "u"}
    )
    assert classify_forest(named_root, {"a"}) == RootedForest({"u"})

    cycle = Interpretation(["x", "y"], {}, {"r": {("x", "y"), ("y", "x")}})
    out = classify_forest(cycle, set())
    assert isinstance(out, NotForest)
    assert out.reason == "cycle"

    tree = Interpretation(["x", "y"], {}, {"r": {("x", "y")}})
    assert classify_forest(tree, set()) == ForwardTree("x")


def test_classify_forest_root_discipline():
    # an anonymous edge into a named element disqualifies the rooted reading,
    # but the structure can still be a plain forward tree (rooted anonymously)
    tree_not_forest = Interpretation(["u", "x"], {}, {"r": {("x", "u")}}, {"a": "u"})
    assert classify_forest(tree_not_forest, {"a"}) == ForwardTree("x")
    # with two named elements the tree fallback dies too
    bad = Interpretation(
        ["u", "v", "x"], {}, {"r": {("x", "u")}}, {"a": "u", "b": "v"}
    )
    out = classify_forest(bad, {"a", "b"})
    assert isinstance(out, NotForest)
    assert out.reason == "anonymous-edge-into-root"
    # root-to-root edges, including self-loops at roots, are fine
    roots = Interpretation(
        ["u", "v"], {}, {"r": {("u", "v"), ("v", "u"), ("v", "v")}},
        {"a": "u", "b": "v"},
    )
    assert classify_forest(roots, {"a", "b"}) == RootedForest({"u", "v"})


def test_classify_forest_two_parents():
    shared = Interpretation(
        ["u", "v", "x"], {}, {"r": {("u", "x"), ("v", "x")}}, {"a": "u", "b": "v"}
    )
    out = classify_forest(shared, {"a", "b"})
    assert isinstance(out, NotForest)
    assert out.reason == "two-parents"


def test_is_lff_like_examples():
    shared = Interpretation(
        ["u", "v", "x"], {}, {"r": {("u", "x"), ("v", "x")}}, {"a": "u", "b": "v"}
    )
    assert not is_lff_like(shared, 1, {"a", "b"})
    assert is_lff_like(Interpretation(["d"]), 3, set())
    with pytest.raises(UnassignedIndividual):
        is_lff_like(Interpretation(["d"]), 1, {"a"})


def test_satisfies_matches_componentwise():
    rng = random.Random(24)
    for _ in range(40):
        i = make_interpretation(rng, rng.randint(1, 4))
        q = make_cq(rng, 4)
        assert satisfies(i, q) == bool(brute_matches(i, q))


def test_json_round_trip_bit_exact():
    rng = random.Random(25)
    for _ in range(40):
        i = make_interpretation(rng, rng.randint(1, 4), names=("a",))
        text = interpretation_to_json(i)
        back = interpretation_from_json(text)
        assert back == i
        assert interpretation_to_json(back) == text


def test_json_matches_documented_shape():
    i = small()
    assert (
        interpretation_to_json(i)
        == '{"concepts":{"A":["d"],"B":["e"]},"domain":["d","e"],'
        '"names":{"a":"d"},"roles":{"r":[["d","e"]]}}'
    )
