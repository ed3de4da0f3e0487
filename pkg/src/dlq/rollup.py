"""Rolling forward-tree-shaped queries up into concepts.

A forward-tree-shaped query is translated bottom-up: each variable becomes
the conjunction of its concept-atom names and, per child, an existential
restriction over the roles connecting it to that child.  The empty
conjunction is Top, so the concept of the whole query is non-trivial exactly
when the query constrains something.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotTreeShaped
from .syntax import Atomic, Concept, ConjunctiveQuery, RoleConjunction, conj, Exists, var_key


@dataclass(frozen=True, eq=False)
class TreeInfo:
    root: str
    parent: dict  # variable -> (parent variable, RoleConjunction)
    children: dict  # variable -> tuple of child variables, sorted


def tree_shape(q: ConjunctiveQuery):
    """TreeInfo if the query structure is a forward tree, else None.

    Required: no self-loops, every non-root variable receives role atoms
    from exactly one other variable, no directed cycles, a unique parentless
    variable.  Connectivity follows from the parent chains.
    """
    in_srcs = {v: set() for v in q.variables}
    for r, x, y in q.role_atoms:
        if x == y:
            return None
        in_srcs[y].add(x)
    parent_var = {}
    for v in q.variables:
        if len(in_srcs[v]) > 1:
            return None
        if in_srcs[v]:
            parent_var[v] = next(iter(in_srcs[v]))
    # cycle check along parent chains
    for start in parent_var:
        seen = set()
        node = start
        while node in parent_var:
            if node in seen:
                return None
            seen.add(node)
            node = parent_var[node]
    roots = [v for v in q.variables if v not in parent_var]
    if len(roots) != 1:
        return None
    role_sets = {}
    for r, x, y in q.role_atoms:
        role_sets.setdefault(y, set()).add(r)
    parent = {
        v: (p, RoleConjunction(role_sets[v])) for v, p in parent_var.items()
    }
    children = {v: [] for v in q.variables}
    for v, p in parent_var.items():
        children[p].append(v)
    children = {v: tuple(sorted(cs, key=var_key)) for v, cs in children.items()}
    return TreeInfo(roots[0], parent, children)


def subtree_concept(q: ConjunctiveQuery, v: str) -> Concept:
    """The concept describing the query subtree rooted at v."""
    info = tree_shape(q)
    if info is None:
        raise NotTreeShaped("query is not forward-tree-shaped")
    if v not in set(q.variables):
        raise ValueError(f"{v!r} is not a query variable")
    return _subtree(q, info, v)


def _subtree(q, info, v):
    parts = [Atomic(a) for a, u in q.concept_atoms if u == v]
    for child in info.children[v]:
        roles = info.parent[child][1]
        parts.append(Exists(roles, _subtree(q, info, child)))
    return conj(*parts)


def match_concept(q: ConjunctiveQuery) -> Concept:
    """The rolled-up concept of the whole query: non-empty extension iff a match exists."""
    info = tree_shape(q)
    if info is None:
        raise NotTreeShaped("query is not forward-tree-shaped")
    return _subtree(q, info, info.root)


def concept_size(c: Concept) -> int:
    """Constructor-node count, used to check the linear size bound."""
    from .syntax import And, Bottom, Not

    if isinstance(c, (Bottom, Atomic)):
        return 1
    if isinstance(c, Not):
        return 1 + concept_size(c.inner)
    if isinstance(c, And):
        return 1 + sum(concept_size(p) for p in c.parts)
    if isinstance(c, Exists):
        return 1 + concept_size(c.inner)
    raise TypeError(f"not a concept: {c!r}")
