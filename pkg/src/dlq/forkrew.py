"""Fork elimination, the fork-rewriting space, and query-tree extraction.

A fork is a pair of role atoms sharing a target but coming from distinct
sources; eliminating it merges the two sources.  Exhaustive elimination is
confluent up to variable renaming, so the maximal rewriting is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ForkNotPresent, HasForks
from .rollup import tree_shape
from .syntax import ConjunctiveQuery, canonicalize_cq, var_key


@dataclass(frozen=True)
class Fork:
    """Two in-atoms of `target` from the distinct variables source_a < source_b."""

    target: str
    source_a: str
    source_b: str

    @staticmethod
    def make(target, u, v) -> "Fork":
        a, b = sorted((u, v), key=var_key)
        return Fork(target, a, b)


def list_forks(q: ConjunctiveQuery) -> frozenset[Fork]:
    sources = {}
    for r, x, y in q.role_atoms:
        sources.setdefault(y, set()).add(x)
    out = set()
    for target, srcs in sources.items():
        srcs = sorted(srcs, key=var_key)
        for i in range(len(srcs)):
            for j in range(i + 1, len(srcs)):
                out.add(Fork.make(target, srcs[i], srcs[j]))
    return frozenset(out)


def _substitute(q: ConjunctiveQuery, old: str, new: str) -> ConjunctiveQuery:
    def sub(v):
        return new if v == old else v

    return ConjunctiveQuery.make(
        {(a, sub(v)) for a, v in q.concept_atoms},
        {(r, sub(x), sub(y)) for r, x, y in q.role_atoms},
    )


def eliminate_fork(q: ConjunctiveQuery, fork: Fork) -> ConjunctiveQuery:
    """Merge the fork's sources (keeping source_a); deduplicated, canonical."""
    if fork not in list_forks(q):
        raise ForkNotPresent(f"{fork} does not occur in the query")
    return canonicalize_cq(_substitute(q, fork.source_b, fork.source_a))


def fork_rewritings(q: ConjunctiveQuery) -> frozenset[ConjunctiveQuery]:
    """Every query reachable by zero or more fork eliminations, up to renaming."""
    start = canonicalize_cq(q)
    seen = {start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for fork in sorted(list_forks(cur), key=_fork_key):
            nxt = eliminate_fork(cur, fork)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def _fork_key(f: Fork):
    return (var_key(f.target), var_key(f.source_a), var_key(f.source_b))


def maximal_fork_rewriting(q: ConjunctiveQuery) -> ConjunctiveQuery:
    """Exhaustive fork elimination; the result is order-independent."""
    cur = canonicalize_cq(q)
    while True:
        forks = list_forks(cur)
        if not forks:
            return cur
        cur = eliminate_fork(cur, min(forks, key=_fork_key))


def reachable_variables(q: ConjunctiveQuery, v: str) -> frozenset[str]:
    """v plus everything reachable from it along directed role atoms."""
    succ = {u: set() for u in q.variables}
    for r, x, y in q.role_atoms:
        succ[x].add(y)
    out = set()
    stack = [v]
    while stack:
        u = stack.pop()
        if u in out:
            continue
        out.add(u)
        stack.extend(succ[u] - out)
    return frozenset(out)


def qtree_set(qmax: ConjunctiveQuery) -> frozenset[ConjunctiveQuery]:
    """Tree-shaped reachability restrictions of a fork-free query.

    One candidate per variable: the restriction to its directed-reachability
    closure.  Restrictions that are not forward-tree-shaped are dropped;
    duplicates collapse under canonical renaming.
    """
    if list_forks(qmax):
        raise HasForks("qtree_set expects the maximal (fork-free) rewriting")
    out = set()
    for v in qmax.variables:
        sub = qmax.restrict(reachable_variables(qmax, v))
        if tree_shape(sub) is not None:
            out.add(canonicalize_cq(sub))
    return frozenset(out)


def occurring_signature(q: ConjunctiveQuery):
    """(concept names, role names, role conjunctions) occurring in the query.

    A role conjunction occurs when some ordered variable pair carries exactly
    that set of role atoms.
    """
    cnames = tuple(sorted({a for a, _ in q.concept_atoms}))
    rnames = tuple(sorted({r for r, _, _ in q.role_atoms}))
    per_pair = {}
    for r, x, y in q.role_atoms:
        per_pair.setdefault((x, y), set()).add(r)
    conjunctions = frozenset(frozenset(rs) for rs in per_pair.values())
    return cnames, rnames, conjunctions
