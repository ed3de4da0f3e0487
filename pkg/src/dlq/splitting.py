"""Splittings: partitioning query variables into named roots, dangling
subtrees and detached trees, and checking compatibility with forest-like
interpretations.

A splitting abstracts how a match can sit on a rooted forward forest: root
variables land on named elements, subtree blocks hang below one root each,
and tree blocks live far from every named element.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import InvalidSplitting, NotAMatch, NotLffLike, UnassignedIndividual
from .rollup import match_concept, tree_shape
from .semantics import Interpretation, eval_concept, is_lff_like, is_match
from .syntax import ConjunctiveQuery, Exists, RoleConjunction, var_key


@dataclass(frozen=True)
class Splitting:
    """(roots, naming, subtrees S_1..S_n, attach, trees).

    Subtree blocks are kept sorted by their root variable, so structurally
    equal splittings compare equal.  `naming` maps each root variable to an
    individual name; `attach[i]` is the root variable subtree i hangs from.
    """

    roots: frozenset[str]
    naming: tuple[tuple[str, str], ...]
    subtrees: tuple[frozenset[str], ...]
    attach: tuple[str, ...]
    trees: frozenset[str]

    @staticmethod
    def make(roots, naming, subtrees, attach, trees) -> "Splitting":
        naming = tuple(sorted(dict(naming).items(), key=lambda kv: var_key(kv[0])))
        blocks = sorted(
            zip((frozenset(s) for s in subtrees), attach),
            key=lambda pair: var_key(min(pair[0], key=var_key)),
        )
        return Splitting(
            frozenset(roots),
            naming,
            tuple(s for s, _ in blocks),
            tuple(m for _, m in blocks),
            frozenset(trees),
        )

    @property
    def naming_map(self) -> dict:
        return dict(self.naming)

    def parts(self):
        return (self.roots, *self.subtrees, self.trees)


def subtree_root(q: ConjunctiveQuery, block) -> str | None:
    """Root variable of the restriction of q to the block, if tree-shaped."""
    info = tree_shape(q.restrict(block))
    return None if info is None else info.root


def validate_splitting(s: Splitting, q: ConjunctiveQuery, names=None) -> list[str]:
    """Violated items among partition/nu/mu/a/b/c/d; empty means valid.

    With names=None the range check on the naming function is skipped.
    """
    violations = []
    qvars = set(q.variables)

    pieces = [s.roots, *s.subtrees, s.trees]
    union = set()
    overlap = False
    for p in pieces:
        overlap = overlap or bool(union & p)
        union |= p
    if union != qvars or overlap or any(not b for b in s.subtrees):
        violations.append("partition")
    nu_ok = set(s.naming_map) == set(s.roots)
    if names is not None:
        nu_ok = nu_ok and set(s.naming_map.values()) <= frozenset(names)
    if not nu_ok:
        violations.append("nu")
    if len(s.attach) != len(s.subtrees) or not set(s.attach) <= s.roots:
        violations.append("mu")

    tree_restriction = q.restrict(s.trees & qvars) if s.trees & qvars else None
    if tree_restriction is not None:
        for comp in tree_restriction.components():
            if tree_shape(tree_restriction.restrict(comp)) is None:
                violations.append("a")
                break

    block_roots = []
    b_ok = True
    for block in s.subtrees:
        if not block <= qvars:
            b_ok = False
            block_roots.append(None)
            continue
        root = subtree_root(q, block)
        block_roots.append(root)
        if root is None:
            b_ok = False
    if not b_ok:
        violations.append("b")

    part_of = {}
    for idx, block in enumerate(s.subtrees):
        for v in block:
            part_of[v] = idx
    for v in s.roots:
        part_of[v] = "R"
    for v in s.trees:
        part_of[v] = "T"

    c_ok = True
    for r, x, y in sorted(q.role_atoms):
        px, py = part_of.get(x), part_of.get(y)
        if px == py and px is not None:
            continue
        if (
            px == "R"
            and isinstance(py, int)
            and s.attach[py] == x
            and block_roots[py] == y
        ):
            continue
        c_ok = False
        break
    if not c_ok:
        violations.append("c")

    for idx, block in enumerate(s.subtrees):
        root = block_roots[idx]
        mu = s.attach[idx] if idx < len(s.attach) else None
        if root is None or mu is None:
            violations.append("d")
            break
        if not any(x == mu and y == root for _, x, y in q.role_atoms):
            violations.append("d")
            break

    return violations


def enumerate_splittings(q: ConjunctiveQuery, names):
    """Yield every valid names-splitting of q exactly once, canonically ordered.

    For a fixed root set the rest is forced: each connected component of the
    non-root part must become one subtree block (when the roots point into
    it) or a detached tree (when no atoms connect it to the roots), so the
    enumeration only iterates over root subsets and namings.
    """
    names = sorted(frozenset(names))
    if not names:
        raise ValueError("the name set must be non-empty")
    qvars = list(q.variables)

    for size in range(len(qvars) + 1):
        for roots in combinations(sorted(qvars, key=var_key), size):
            plan = _plan_for_roots(q, frozenset(roots))
            if plan is None:
                continue
            subtrees, attach, trees = plan
            for assignment in product(names, repeat=len(roots)):
                naming = dict(zip(roots, assignment))
                s = Splitting.make(roots, naming, subtrees, attach, trees)
                bad = validate_splitting(s, q, names)
                if bad:
                    raise InvalidSplitting(bad)
                yield s


def _plan_for_roots(q: ConjunctiveQuery, roots):
    rest = [v for v in q.variables if v not in roots]
    # atoms leaving the non-root part into the roots admit no splitting
    for _, x, y in q.role_atoms:
        if x not in roots and y in roots:
            return None
    if not rest:
        return (), (), frozenset()
    outside = q.restrict(rest)
    subtrees, attach, trees = [], [], set()
    for comp in outside.components():
        inbound = {
            (x, y) for _, x, y in q.role_atoms if x in roots and y in comp
        }
        if tree_shape(outside.restrict(comp)) is None:
            return None
        if not inbound:
            trees |= comp
            continue
        root = subtree_root(q, comp)
        sources = {x for x, _ in inbound}
        targets = {y for _, y in inbound}
        if len(sources) != 1 or targets != {root}:
            return None
        subtrees.append(comp)
        attach.append(next(iter(sources)))
    return tuple(subtrees), tuple(attach), frozenset(trees)


def is_compatible(s: Splitting, q: ConjunctiveQuery, i: Interpretation) -> bool:
    """Compatibility of a splitting with a forest-like interpretation.

    (A) every detached tree component has a non-empty rolled-up extension,
    (B) concept atoms on roots hold at their named elements, (C) role atoms
    between roots hold, and (D) each subtree's rolled-up concept is witnessed
    below its attachment point through all connecting roles.
    """
    nu = s.naming_map
    for a in sorted(set(nu.values())):
        if a not in i.names:
            raise UnassignedIndividual(a)

    if s.trees:
        tree_restriction = q.restrict(s.trees)
        for comp in tree_restriction.components():
            concept = match_concept(tree_restriction.restrict(comp))
            if not eval_concept(i, concept):
                return False

    for a, v in q.concept_atoms:
        if v in s.roots and i.names[nu[v]] not in i.concept_ext(a):
            return False

    for r, x, y in q.role_atoms:
        if x in s.roots and y in s.roots:
            if (i.names[nu[x]], i.names[nu[y]]) not in i.role_ext(r):
                return False

    for idx, block in enumerate(s.subtrees):
        mu = s.attach[idx]
        root = subtree_root(q, block)
        roles = {r for r, x, y in q.role_atoms if x == mu and y == root}
        witness = Exists(RoleConjunction(roles), match_concept(q.restrict(block)))
        if i.names[nu[mu]] not in eval_concept(i, witness):
            return False
    return True


def splitting_from_match(q: ConjunctiveQuery, i: Interpretation, m, names):
    """Build (q', splitting) from a match on an lff-like interpretation.

    Forks whose sources map to the same element are merged first; root
    variables are those mapped onto named elements, subtree blocks grow by
    directed reachability from the variables dangling off the roots, and the
    remainder is detached.  The result validates and is compatible with i.
    """
    names = frozenset(names)
    if not is_match(i, q, m):
        raise NotAMatch("the assignment is not a match for the query")
    if not is_lff_like(i, q.size, names):
        raise NotLffLike(
            f"interpretation is not ({q.size}, names)-locally-forward-forest-like"
        )

    catoms = set(q.concept_atoms)
    ratoms = set(q.role_atoms)
    mapping = dict(m)

    def forks():
        sources = {}
        for r, x, y in ratoms:
            sources.setdefault(y, set()).add(x)
        for target in sorted(sources, key=var_key):
            srcs = sorted(sources[target], key=var_key)
            for a, b in combinations(srcs, 2):
                if mapping[a] == mapping[b]:
                    return a, b
        return None

    while True:
        fork = forks()
        if fork is None:
            break
        keep, gone = fork

        def sub(v):
            return keep if v == gone else v

        catoms = {(a, sub(v)) for a, v in catoms}
        ratoms = {(r, sub(x), sub(y)) for r, x, y in ratoms}
        del mapping[gone]

    q2 = ConjunctiveQuery.make(catoms, ratoms)
    named = i.named_elements(names)
    roots = {v for v in q2.variables if mapping[v] in named}
    naming = {}
    for v in sorted(roots, key=var_key):
        naming[v] = min(a for a in names if i.names[a] == mapping[v])

    dangling = sorted(
        {
            y
            for _, x, y in ratoms
            if x in roots and y not in roots
        },
        key=var_key,
    )
    anon = [v for v in q2.variables if v not in roots]
    succ = {v: set() for v in anon}
    for r, x, y in ratoms:
        if x not in roots and y not in roots:
            succ[x].add(y)
    subtrees, attach = [], []
    for start in dangling:
        block = set()
        stack = [start]
        while stack:
            u = stack.pop()
            if u in block:
                continue
            block.add(u)
            stack.extend(succ[u] - block)
        owners = {x for _, x, y in ratoms if y == start and x in roots}
        subtrees.append(frozenset(block))
        attach.append(min(owners, key=var_key))
    covered = roots | set().union(*subtrees) if subtrees else set(roots)
    trees = frozenset(v for v in q2.variables if v not in covered)

    s = Splitting.make(roots, naming, subtrees, attach, trees)
    bad = validate_splitting(s, q2, names)
    if bad:
        raise InvalidSplitting(bad)
    return q2, s


def splitting_to_obj(s: Splitting, q: ConjunctiveQuery) -> dict:
    """JSON form using ?-prefixed variable names."""
    tree_components = []
    if s.trees:
        restriction = q.restrict(s.trees)
        tree_components = [
            sorted(f"?{v}" for v in comp) for comp in restriction.components()
        ]
    return {
        "roots": {f"?{v}": a for v, a in s.naming},
        "subtrees": [
            {
                "vars": sorted(f"?{v}" for v in block),
                "attach": f"?{s.attach[idx]}",
            }
            for idx, block in enumerate(s.subtrees)
        ],
        "trees": tree_components,
    }
