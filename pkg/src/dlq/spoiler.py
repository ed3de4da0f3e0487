"""Blocking axioms for splittings and super-spoiler enumeration.

A knowledge base spoils a splitting when it contains at least one axiom
denying one of the splitting's compatibility conditions.  A super-spoiler is
an inclusion-minimal axiom set spoiling every splitting of every fork
rewriting of the query, so super-spoilers are exactly the minimal hitting
sets of the per-splitting blocking-option family.
"""

from __future__ import annotations

from .errors import InvalidSplitting
from .forkrew import fork_rewritings, maximal_fork_rewriting, occurring_signature, qtree_set
from .rollup import match_concept
from .splitting import Splitting, enumerate_splittings, subtree_root, validate_splitting
from .syntax import (
    Atomic,
    Axiom,
    ConceptAssertion,
    ConjunctiveQuery,
    Exists,
    GCI,
    NegRoleAssertion,
    Not,
    RoleConjunction,
    TOP,
    axiom_key,
)

SuperSpoiler = frozenset  # frozenset[Axiom]


def blocking_options(qr: ConjunctiveQuery, s: Splitting) -> frozenset[Axiom]:
    """Every axiom that alone spoils the splitting, one per condition instance."""
    bad = validate_splitting(s, qr)
    if bad:
        raise InvalidSplitting(bad)
    nu = s.naming_map
    out = set()
    if s.trees:
        restriction = qr.restrict(s.trees)
        for comp in restriction.components():
            concept = match_concept(restriction.restrict(comp))
            out.add(GCI(TOP, Not(concept)))
    for a, v in qr.concept_atoms:
        if v in s.roots:
            out.add(ConceptAssertion(Not(Atomic(a)), nu[v]))
    for r, x, y in qr.role_atoms:
        if x in s.roots and y in s.roots:
            out.add(NegRoleAssertion(r, nu[x], nu[y]))
    for idx, block in enumerate(s.subtrees):
        mu = s.attach[idx]
        root = subtree_root(qr, block)
        roles = {r for r, x, y in qr.role_atoms if x == mu and y == root}
        witness = Exists(RoleConjunction(roles), match_concept(qr.restrict(block)))
        out.add(ConceptAssertion(Not(witness), nu[mu]))
    return frozenset(out)


def candidate_spoiler_axioms(q: ConjunctiveQuery, names) -> frozenset[Axiom]:
    """The pool every super-spoiler draws from.

    Built from the query trees of the maximal fork rewriting and the
    occurring signature: tree-denying inclusions, negated concept assertions,
    negated role assertions, and negated existential witnesses.
    """
    names = sorted(frozenset(names))
    if not names:
        raise ValueError("the name set must be non-empty")
    qmax = maximal_fork_rewriting(q)
    trees = sorted(qtree_set(qmax), key=lambda t: sorted(map(str, t.concept_atoms | t.role_atoms)))
    cnames, rnames, conjunctions = occurring_signature(qmax)
    out = set()
    for t in trees:
        out.add(GCI(TOP, Not(match_concept(t))))
    for a in cnames:
        for name in names:
            out.add(ConceptAssertion(Not(Atomic(a)), name))
    for r in rnames:
        for x in names:
            for y in names:
                out.add(NegRoleAssertion(r, x, y))
    for t in trees:
        for rc in conjunctions:
            witness = Exists(RoleConjunction(rc), match_concept(t))
            for name in names:
                out.add(ConceptAssertion(Not(witness), name))
    return frozenset(out)


def blocking_option_family(q: ConjunctiveQuery, names):
    """Deduplicated blocking-option sets over all (rewriting, splitting) pairs."""
    family = set()
    for q2 in sorted(fork_rewritings(q), key=lambda c: sorted(map(str, c.concept_atoms | c.role_atoms))):
        for s in enumerate_splittings(q2, names):
            family.add(blocking_options(q2, s))
    return family


def minimal_hitting_sets(family) -> tuple[frozenset, ...]:
    """All inclusion-minimal sets intersecting every member of the family.

    Supersets inside the family are pruned first (hitting a subset hits its
    supersets); the search branches on the smallest unhit member.  A result
    is kept when every chosen element is the sole hitter of some member.
    """
    if any(not member for member in family):
        return ()
    members = sorted(family, key=lambda m: (len(m), sorted(map(axiom_key, m))))
    minimized = []
    for m in members:
        if not any(k <= m for k in minimized):
            minimized.append(m)
    results = set()

    def descend(chosen, unhit):
        if not unhit:
            for e in chosen:
                if not any(member & chosen == {e} for member in minimized):
                    return
            results.add(frozenset(chosen))
            return
        pivot = min(unhit, key=lambda m: (len(m), sorted(map(axiom_key, m))))
        for e in sorted(pivot, key=axiom_key):
            descend(chosen | {e}, [m for m in unhit if e not in m])

    descend(frozenset(), minimized)
    return tuple(
        sorted(results, key=lambda h: (len(h), sorted(map(axiom_key, h))))
    )


def enumerate_super_spoilers(q: ConjunctiveQuery, names) -> tuple[SuperSpoiler, ...]:
    """All super-spoilers for the query, in canonical order.

    Empty when some splitting admits no blocking option at all (then no
    axiom set can spoil everything).
    """
    names = frozenset(names)
    if not names:
        raise ValueError("the name set must be non-empty")
    return minimal_hitting_sets(blocking_option_family(q, names))
