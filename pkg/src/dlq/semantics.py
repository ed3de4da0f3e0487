"""Finite interpretations: model checking, matching, homomorphisms, forests.

An Interpretation with a total name assignment for some name set N is an
interpretation w.r.t. N; with a partial assignment it plays the role of a
structure.  All values are immutable after construction.
"""

from __future__ import annotations

import json

from .errors import EmptyRestriction, UnassignedIndividual
from .syntax import (
    And,
    Atomic,
    Axiom,
    Bottom,
    Concept,
    ConceptAssertion,
    ConjunctiveQuery,
    Exists,
    GCI,
    KnowledgeBase,
    NegRoleAssertion,
    Not,
    RoleAssertion,
    var_key,
)


class Interpretation:
    """Finite domain with concept/role extensions and a partial name map.

    Equality and hashing are extensional: the domain is compared as a set,
    empty extensions are indistinguishable from absent ones.
    """

    __slots__ = ("domain", "concepts", "roles", "names", "_key", "_hash")

    def __init__(self, domain, concepts=None, roles=None, names=None):
        domain = tuple(dict.fromkeys(domain))
        if not domain:
            raise ValueError("the domain must be non-empty")
        dset = set(domain)
        concepts = {
            a: frozenset(es) for a, es in dict(concepts or {}).items() if es
        }
        roles = {
            r: frozenset((x, y) for x, y in ps)
            for r, ps in dict(roles or {}).items()
            if ps
        }
        names = dict(names or {})
        for a, es in concepts.items():
            if not es <= dset:
                raise ValueError(f"extension of {a} leaves the domain")
        for r, ps in roles.items():
            for x, y in ps:
                if x not in dset or y not in dset:
                    raise ValueError(f"extension of {r} leaves the domain")
        for n, e in names.items():
            if e not in dset:
                raise ValueError(f"name {n} assigned outside the domain")
        self.domain = domain
        self.concepts = concepts
        self.roles = roles
        self.names = names
        self._key = (
            frozenset(domain),
            frozenset(concepts.items()),
            frozenset(roles.items()),
            frozenset(names.items()),
        )
        self._hash = hash(self._key)

    def __eq__(self, other):
        return isinstance(other, Interpretation) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Interpretation(|domain|={len(self.domain)}, names={sorted(self.names)})"

    def concept_ext(self, name: str) -> frozenset:
        return self.concepts.get(name, frozenset())

    def role_ext(self, name: str) -> frozenset:
        return self.roles.get(name, frozenset())

    def element_of(self, name: str) -> str:
        if name not in self.names:
            raise UnassignedIndividual(name)
        return self.names[name]

    def named_elements(self, names) -> frozenset:
        """Elements interpreting some name from the given set (defined ones)."""
        return frozenset(self.names[a] for a in names if a in self.names)

    def edges(self):
        """All role pairs, ignoring role names."""
        out = set()
        for ps in self.roles.values():
            out |= ps
        return out


def eval_concept(i: Interpretation, c: Concept) -> frozenset:
    """The extension of a concept, per the semantics table."""
    if isinstance(c, Bottom):
        return frozenset()
    if isinstance(c, Atomic):
        return i.concept_ext(c.name)
    if isinstance(c, Not):
        return frozenset(i.domain) - eval_concept(i, c.inner)
    if isinstance(c, And):
        out = frozenset(i.domain)
        for p in c.parts:
            out &= eval_concept(i, p)
            if not out:
                break
        return out
    if isinstance(c, Exists):
        pairs = None
        for r in c.roles:
            ext = i.role_ext(r)
            pairs = ext if pairs is None else pairs & ext
            if not pairs:
                return frozenset()
        targets = eval_concept(i, c.inner)
        return frozenset(x for x, y in pairs if y in targets)
    raise TypeError(f"not a concept: {c!r}")


def check_axiom(i: Interpretation, a: Axiom) -> bool:
    if isinstance(a, GCI):
        return eval_concept(i, a.lhs) <= eval_concept(i, a.rhs)
    if isinstance(a, ConceptAssertion):
        return i.element_of(a.individual) in eval_concept(i, a.concept)
    if isinstance(a, RoleAssertion):
        return (i.element_of(a.subject), i.element_of(a.object)) in i.role_ext(a.role)
    if isinstance(a, NegRoleAssertion):
        return (i.element_of(a.subject), i.element_of(a.object)) not in i.role_ext(
            a.role
        )
    raise TypeError(f"not an axiom: {a!r}")


def is_model(i: Interpretation, kb: KnowledgeBase) -> bool:
    return all(check_axiom(i, a) for a in kb.axioms)


def failing_axioms(i: Interpretation, kb: KnowledgeBase):
    return [a for a in sorted(kb.axioms, key=repr) if not check_axiom(i, a)]


# ---------------------------------------------------------------------------
# Query matching


def find_matches(i: Interpretation, q: ConjunctiveQuery):
    """Yield every match of q on i, backtracking over variables.

    Variables are processed by descending atom degree (ties by name), and
    candidate elements in domain order, so enumeration order is deterministic.
    """
    degree = {v: 0 for v in q.variables}
    for _, v in q.concept_atoms:
        degree[v] += 1
    for _, x, y in q.role_atoms:
        degree[x] += 1
        degree[y] += 1
    order = sorted(q.variables, key=lambda v: (-degree[v], var_key(v)))
    cmust = {}
    for a, v in q.concept_atoms:
        cmust.setdefault(v, []).append(a)
    ratoms = sorted(q.role_atoms)

    def consistent(v, e, assignment):
        for a in cmust.get(v, ()):
            if e not in i.concept_ext(a):
                return False
        for r, x, y in ratoms:
            if x == v and y == v:
                if (e, e) not in i.role_ext(r):
                    return False
            elif x == v and y in assignment:
                if (e, assignment[y]) not in i.role_ext(r):
                    return False
            elif y == v and x in assignment:
                if (assignment[x], e) not in i.role_ext(r):
                    return False
        return True

    def extend(pos, assignment):
        if pos == len(order):
            yield dict(assignment)
            return
        v = order[pos]
        for e in i.domain:
            if consistent(v, e, assignment):
                assignment[v] = e
                yield from extend(pos + 1, assignment)
                del assignment[v]

    yield from extend(0, {})


def is_match(i: Interpretation, q: ConjunctiveQuery, assignment) -> bool:
    if set(assignment) != set(q.variables):
        return False
    for a, v in q.concept_atoms:
        if assignment[v] not in i.concept_ext(a):
            return False
    for r, x, y in q.role_atoms:
        if (assignment[x], assignment[y]) not in i.role_ext(r):
            return False
    return True


def satisfies(i: Interpretation, q: ConjunctiveQuery) -> bool:
    """Match existence, decided component-wise to keep the search shallow."""
    for comp in q.components():
        if next(find_matches(i, q.restrict(comp)), None) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# Homomorphisms


def is_homomorphism(src: Interpretation, dst: Interpretation, mapping, names=()) -> bool:
    """Check concept, role and name preservation of a total map src -> dst."""
    if set(mapping) != set(src.domain):
        return False
    if not set(mapping.values()) <= set(dst.domain):
        return False
    for a in names:
        if a in src.names:
            if a not in dst.names or dst.names[a] != mapping[src.names[a]]:
                return False
    for cname, ext in src.concepts.items():
        dext = dst.concept_ext(cname)
        if any(mapping[e] not in dext for e in ext):
            return False
    for rname, pairs in src.roles.items():
        dext = dst.role_ext(rname)
        if any((mapping[x], mapping[y]) not in dext for x, y in pairs):
            return False
    return True


def find_homomorphism(src: Interpretation, dst: Interpretation, names=()):
    """Some names-preserving homomorphism src -> dst, or None.

    The result is re-validated by is_homomorphism before being returned.
    """
    pinned = {}
    for a in names:
        if a in src.names:
            if a not in dst.names:
                return None
            e = src.names[a]
            want = dst.names[a]
            if pinned.get(e, want) != want:
                return None
            pinned[e] = want

    memberships = {e: set() for e in src.domain}
    for cname, ext in src.concepts.items():
        for e in ext:
            memberships[e].add(cname)
    out_pairs = {e: [] for e in src.domain}
    in_pairs = {e: [] for e in src.domain}
    for rname, pairs in src.roles.items():
        for x, y in pairs:
            out_pairs[x].append((rname, y))
            in_pairs[y].append((rname, x))
    degree = {e: len(out_pairs[e]) + len(in_pairs[e]) for e in src.domain}
    order = sorted(src.domain, key=lambda e: (e not in pinned, -degree[e], e))

    def ok(e, d, partial):
        for cname in memberships[e]:
            if d not in dst.concept_ext(cname):
                return False
        for rname, y in out_pairs[e]:
            if y == e:
                if (d, d) not in dst.role_ext(rname):
                    return False
            elif y in partial and (d, partial[y]) not in dst.role_ext(rname):
                return False
        for rname, x in in_pairs[e]:
            if x in partial and x != e and (partial[x], d) not in dst.role_ext(rname):
                return False
        return True

    def extend(pos, partial):
        if pos == len(order):
            return dict(partial)
        e = order[pos]
        candidates = [pinned[e]] if e in pinned else dst.domain
        for d in candidates:
            if ok(e, d, partial):
                partial[e] = d
                found = extend(pos + 1, partial)
                if found is not None:
                    return found
                del partial[e]
        return None

    found = extend(0, {})
    if found is None:
        return None
    assert is_homomorphism(src, dst, found, names)
    return found


# ---------------------------------------------------------------------------
# Substructures and neighbourhoods


def restrict(i: Interpretation, keep) -> Interpretation:
    """The restriction of i to a non-empty element subset."""
    keep_set = set(keep)
    if not keep_set:
        raise EmptyRestriction("cannot restrict to the empty set")
    if not keep_set <= set(i.domain):
        raise ValueError("restriction set leaves the domain")
    return Interpretation(
        tuple(e for e in i.domain if e in keep_set),
        {a: ext & keep_set for a, ext in i.concepts.items()},
        {
            r: {(x, y) for x, y in ps if x in keep_set and y in keep_set}
            for r, ps in i.roles.items()
        },
        {n: e for n, e in i.names.items() if e in keep_set},
    )


def neighbourhood(i: Interpretation, element: str, k: int) -> Interpretation:
    """Restriction to elements within undirected role distance <= k."""
    if element not in set(i.domain):
        raise ValueError(f"{element!r} is not a domain element")
    adj = {e: set() for e in i.domain}
    for ps in i.roles.values():
        for x, y in ps:
            adj[x].add(y)
            adj[y].add(x)
    reached = {element}
    frontier = {element}
    for _ in range(k):
        frontier = {n for e in frontier for n in adj[e]} - reached
        if not frontier:
            break
        reached |= frontier
    return restrict(i, reached)


# ---------------------------------------------------------------------------
# Forest classification


class ForestClass:
    __slots__ = ()


class ForwardTree(ForestClass):
    __slots__ = ("root",)

    def __init__(self, root):
        self.root = root

    def __repr__(self):
        return f"ForwardTree({self.root!r})"

    def __eq__(self, other):
        return isinstance(other, ForwardTree) and self.root == other.root

    def __hash__(self):
        return hash(("ForwardTree", self.root))


class RootedForest(ForestClass):
    __slots__ = ("roots",)

    def __init__(self, roots):
        self.roots = frozenset(roots)

    def __repr__(self):
        return f"RootedForest({sorted(self.roots)!r})"

    def __eq__(self, other):
        return isinstance(other, RootedForest) and self.roots == other.roots

    def __hash__(self):
        return hash(("RootedForest", self.roots))


class NotForest(ForestClass):
    __slots__ = ("reason", "witness")

    def __init__(self, reason, witness=()):
        self.reason = reason
        self.witness = tuple(witness)

    def __repr__(self):
        return f"NotForest({self.reason!r}, {self.witness!r})"


def _in_neighbours(i: Interpretation):
    out = {e: set() for e in i.domain}
    for ps in i.roles.values():
        for x, y in ps:
            out[y].add(x)
    return out


def _self_loops(i: Interpretation):
    return {x for ps in i.roles.values() for x, y in ps if x == y}


def _parent_cycle(parents):
    # parents: node -> unique parent or absent; detect a cycle along the chains
    state = {}
    for start in parents:
        if state.get(start):
            continue
        path = []
        node = start
        while node in parents and state.get(node) != "done":
            if state.get(node) == "open":
                k = path.index(node)
                return tuple(path[k:])
            state[node] = "open"
            path.append(node)
            node = parents[node]
        for n in path:
            state[n] = "done"
    return None


def _tree_check(i: Interpretation):
    loops = _self_loops(i)
    if loops:
        return None, NotForest("self-loop", (min(loops),))
    in_nbrs = _in_neighbours(i)
    parents = {}
    for e in sorted(i.domain):
        srcs = in_nbrs[e]
        if len(srcs) > 1:
            a, b = sorted(srcs)[:2]
            return None, NotForest("two-parents", (e, a, b))
        if srcs:
            parents[e] = next(iter(srcs))
    cycle = _parent_cycle(parents)
    if cycle:
        return None, NotForest("cycle", cycle)
    roots = [e for e in i.domain if e not in parents]
    if len(roots) != 1:
        return None, NotForest("root-count", tuple(sorted(roots)))
    return roots[0], None


def _forest_check(i: Interpretation, names):
    for a in sorted(names):
        if a not in i.names:
            return None, NotForest("undefined-name", (a,))
    named = i.named_elements(names)
    if not named:
        return None, NotForest("no-roots", ())
    in_nbrs = _in_neighbours(i)
    loops = _self_loops(i)
    parents = {}
    for e in sorted(i.domain):
        if e in named:
            bad = sorted(in_nbrs[e] - named)
            if bad:
                return None, NotForest("anonymous-edge-into-root", (bad[0], e))
            continue
        if e in loops:
            return None, NotForest("self-loop", (e,))
        srcs = in_nbrs[e]
        if len(srcs) > 1:
            a, b = sorted(srcs)[:2]
            return None, NotForest("two-parents", (e, a, b))
        if srcs:
            parents[e] = next(iter(srcs))
    cycle = _parent_cycle(parents)
    if cycle:
        return None, NotForest("cycle", cycle)
    return named, None


def classify_forest(i: Interpretation, names) -> ForestClass:
    """Classify a structure as a forward tree, a rooted forward forest, or neither.

    The check is up to isomorphism with a word-domain forest: non-root
    elements need all their in-edges from a single parent, edges into roots
    must come from roots, and directed cycles may only run through roots.
    Elements without in-edges embed as edge-less words, so they are accepted
    in a rooted forest as long as the named roots exist.
    """
    names = frozenset(names)
    if names:
        roots, forest_fail = _forest_check(i, names)
        if roots is not None:
            return RootedForest(roots)
        root, _ = _tree_check(i)
        if root is not None:
            return ForwardTree(root)
        return forest_fail
    root, tree_fail = _tree_check(i)
    if root is not None:
        return ForwardTree(root)
    return tree_fail


def is_lff_like(i: Interpretation, n: int, names) -> bool:
    """Every k-neighbourhood (k = n) is a forward tree or a rooted forest.

    The name set used per neighbourhood is the subset whose assignments
    survive inside that neighbourhood.
    """
    names = frozenset(names)
    for a in sorted(names):
        if a not in i.names:
            raise UnassignedIndividual(a)
    for d in i.domain:
        nb = neighbourhood(i, d, n)
        local = frozenset(a for a in names if i.names[a] in set(nb.domain))
        if isinstance(classify_forest(nb, local), NotForest):
            return False
    return True


# ---------------------------------------------------------------------------
# JSON interchange


def interpretation_to_obj(i: Interpretation) -> dict:
    return {
        "domain": sorted(i.domain),
        "concepts": {a: sorted(ext) for a, ext in sorted(i.concepts.items())},
        "roles": {
            r: sorted([x, y] for x, y in ps) for r, ps in sorted(i.roles.items())
        },
        "names": {n: e for n, e in sorted(i.names.items())},
    }


def interpretation_to_json(i: Interpretation) -> str:
    return json.dumps(interpretation_to_obj(i), sort_keys=True, separators=(",", ":"))


def interpretation_from_obj(obj: dict) -> Interpretation:
    return Interpretation(
        obj["domain"],
        {a: set(ext) for a, ext in obj.get("concepts", {}).items()},
        {r: {(x, y) for x, y in ps} for r, ps in obj.get("roles", {}).items()},
        obj.get("names", {}),
    )


def interpretation_from_json(text: str) -> Interpretation:
    return interpretation_from_obj(json.loads(text))
