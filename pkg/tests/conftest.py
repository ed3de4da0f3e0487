"""Shared random-instance generators and independent brute-force oracles.

Generators are seeded per test so runs are reproducible; oracles stay naive
on purpose (plain enumeration or plain recursive search) so they never share
a code path with the operation they check.
"""

from __future__ import annotations

import random
from itertools import product

from dlq import (
    BOT,
    Atomic,
    ConceptAssertion,
    ConjunctiveQuery,
    Exists,
    GCI,
    Interpretation,
    KnowledgeBase,
    NegRoleAssertion,
    Not,
    RoleAssertion,
    RoleConjunction,
    forward_unravel,
    is_match,
)
from dlq.syntax import conj, disj, forall

CONCEPT_NAMES = ["A", "B", "C"]
ROLE_NAMES = ["r", "s"]
INDIVIDUALS = ["a", "b"]


# ---------------------------------------------------------------------------
# Random structures


def make_interpretation(rng, size, concept_names=CONCEPT_NAMES, role_names=ROLE_NAMES,
                        names=(), edge_p=0.25, member_p=0.4):
    domain = [f"e{i}" for i in range(size)]
    concepts = {
        a: {e for e in domain if rng.random() < member_p} for a in concept_names
    }
    roles = {
        r: {(x, y) for x in domain for y in domain if rng.random() < edge_p}
        for r in role_names
    }
    assignment = {a: rng.choice(domain) for a in names}
    return Interpretation(domain, concepts, roles, assignment)


def make_concept(rng, depth, concept_names=CONCEPT_NAMES, role_names=ROLE_NAMES):
    pick = rng.random()
    if depth == 0 or pick < 0.4:
        base = BOT if rng.random() < 0.05 else Atomic(rng.choice(concept_names))
        return Not(base) if rng.random() < 0.4 else base
    if pick < 0.6:
        return conj(make_concept(rng, depth - 1, concept_names, role_names),
                    make_concept(rng, depth - 1, concept_names, role_names))
    if pick < 0.75:
        return disj(make_concept(rng, depth - 1, concept_names, role_names),
                    make_concept(rng, depth - 1, concept_names, role_names))
    roles = RoleConjunction(rng.sample(role_names, rng.choice([1, 1, 2])))
    inner = make_concept(rng, depth - 1, concept_names, role_names)
    return Exists(roles, inner) if rng.random() < 0.7 else forall(roles, inner)


def make_kb(rng, max_abox=3, max_tbox=3, depth=2, individuals=INDIVIDUALS):
    abox = set()
    for _ in range(rng.randint(1, max_abox)):
        kind = rng.random()
        if kind < 0.5:
            abox.add(ConceptAssertion(make_concept(rng, 1), rng.choice(individuals)))
        elif kind < 0.85:
            abox.add(RoleAssertion(rng.choice(ROLE_NAMES), rng.choice(individuals),
                                   rng.choice(individuals)))
        else:
            abox.add(NegRoleAssertion(rng.choice(ROLE_NAMES), rng.choice(individuals),
                                      rng.choice(individuals)))
    tbox = set()
    for _ in range(rng.randint(1, max_tbox)):
        tbox.add(GCI(make_concept(rng, 1), make_concept(rng, depth)))
    return KnowledgeBase.make(abox, tbox)


def make_cq(rng, max_atoms, var_pool=("x", "y", "z", "u"), concept_names=CONCEPT_NAMES,
            role_names=ROLE_NAMES):
    catoms, ratoms = set(), set()
    for _ in range(rng.randint(1, max_atoms)):
        if rng.random() < 0.4:
            catoms.add((rng.choice(concept_names), rng.choice(var_pool)))
        else:
            x, y = rng.choice(var_pool), rng.choice(var_pool)
            ratoms.add((rng.choice(role_names), x, y))
    return ConjunctiveQuery.make(catoms, ratoms)


def make_tree_cq(rng, max_vars=6, concept_names=CONCEPT_NAMES, role_names=ROLE_NAMES):
    """A random forward-tree-shaped query."""
    n = rng.randint(1, max_vars)
    names = [f"t{i}" for i in range(n)]
    catoms, ratoms = set(), set()
    for i in range(1, n):
        parent = names[rng.randrange(i)]
        for role in rng.sample(role_names, rng.choice([1, 1, 2])):
            ratoms.add((role, parent, names[i]))
    for v in names:
        for a in concept_names:
            if rng.random() < 0.35:
                catoms.add((a, v))
    if not catoms and not ratoms:
        catoms.add((rng.choice(concept_names), names[0]))
    return ConjunctiveQuery.make(catoms, ratoms, variables=names)


def make_forest(rng, names=("a",), base_size=4, depth=2, max_nodes=40,
                reachable_only=None):
    """A names-rooted forward forest built by unravelling a random base."""
    mode = rng.random() < 0.5 if reachable_only is None else reachable_only
    for _ in range(50):
        base = make_interpretation(rng, rng.randint(1, base_size), names=names,
                                   edge_p=0.3)
        try:
            result = forward_unravel(base, names, depth, reachable_only=mode,
                                     max_nodes=max_nodes)
        except Exception:
            continue
        return result.interpretation
    raise RuntimeError("could not build a forest within the node budget")


# ---------------------------------------------------------------------------
# Independent oracles


def brute_matches(i: Interpretation, q: ConjunctiveQuery):
    """All matches by plain product enumeration (no backtracking)."""
    variables = list(q.variables)
    out = []
    for combo in product(i.domain, repeat=len(variables)):
        assignment = dict(zip(variables, combo))
        if is_match(i, q, assignment):
            out.append(assignment)
    return out


def tree_hom_search(i: Interpretation, q: ConjunctiveQuery, root, element):
    """Brute-force search for a homomorphism of q pinning root to element.

    Variables are tried in a fixed order with incremental atom checking;
    this never touches concept evaluation or rolled-up concepts.
    """
    variables = sorted(q.variables)
    catoms = sorted(q.concept_atoms)
    ratoms = sorted(q.role_atoms)

    def consistent(assignment):
        for a, v in catoms:
            if v in assignment and assignment[v] not in i.concept_ext(a):
                return False
        for r, x, y in ratoms:
            if x in assignment and y in assignment:
                if (assignment[x], assignment[y]) not in i.role_ext(r):
                    return False
        return True

    def extend(pos, assignment):
        if pos == len(variables):
            return True
        v = variables[pos]
        if v in assignment:
            return extend(pos + 1, assignment)
        for d in i.domain:
            assignment[v] = d
            if consistent(assignment) and extend(pos + 1, assignment):
                return True
            del assignment[v]
        return False

    start = {root: element}
    return consistent(start) and extend(0, start)


def subtree_variables(q: ConjunctiveQuery, info, v):
    """v plus all its descendants in the tree order."""
    out = set()
    stack = [v]
    while stack:
        u = stack.pop()
        if u in out:
            continue
        out.add(u)
        stack.extend(info.children[u])
    return out


def set_partitions(items):
    """All partitions of a list into non-empty blocks."""
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for partial in set_partitions(rest):
        for idx in range(len(partial)):
            yield partial[:idx] + [[head] + partial[idx]] + partial[idx + 1:]
        yield [[head]] + partial
