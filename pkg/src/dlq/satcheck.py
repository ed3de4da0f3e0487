"""Satisfiability of knowledge bases.

Two independent routes:

* `is_satisfiable` runs a completion-graph tableau with NNF labels,
  internalised inclusions, and ancestor subset-blocking (no inverses, so
  subset-blocking terminates).  Verdict-only; it never fabricates a model.
* `brute_force_model` / `bounded_model_search` perform a complete search for
  a model up to a domain-size bound: name assignments are enumerated with a
  first-occurrence symmetry reduction and the remaining extension choices
  are decided by a small DPLL over a direct propositional encoding.  Every
  returned model is re-validated before being handed out.

Finite and unrestricted satisfiability coincide for this logic, so one
checker serves both modes.
"""

from __future__ import annotations

import time
from itertools import product

from .errors import ResourceLimitExceeded
from .semantics import Interpretation, is_model, satisfies
from .syntax import (
    And,
    Atomic,
    Bottom,
    Concept,
    ConceptAssertion,
    Exists,
    KnowledgeBase,
    NegRoleAssertion,
    Not,
    RoleAssertion,
    UCQ,
    BOT,
    concept_key,
    forall_parts,
    gci_rewrite,
    nnf,
    or_parts,
    subconcepts,
)

# ---------------------------------------------------------------------------
# Completion-graph tableau


class _State:
    __slots__ = ("nodes", "labels", "edges", "succ", "parent", "next_id")

    def __init__(self, nodes, labels, edges, succ, parent, next_id):
        self.nodes = nodes
        self.labels = labels
        self.edges = edges
        self.succ = succ
        self.parent = parent
        self.next_id = next_id

    def copy(self):
        return _State(
            list(self.nodes),
            {n: set(lab) for n, lab in self.labels.items()},
            dict(self.edges),
            {n: set(s) for n, s in self.succ.items()},
            dict(self.parent),
            self.next_id,
        )


def _is_clashed(state):
    for n in state.nodes:
        lab = state.labels[n]
        if BOT in lab:
            return True
        for c in lab:
            if isinstance(c, Not) and isinstance(c.inner, Atomic) and c.inner in lab:
                return True
    return False


def _blocked(state, n):
    if isinstance(n, str):
        return False
    lab = state.labels[n]
    anc = state.parent[n]
    while True:
        if lab <= state.labels[anc]:
            return True
        if isinstance(anc, str):
            return False
        anc = state.parent[anc]


def _saturate(state, tu, caps, trace):
    """Apply rules until clash, completion, or a pending disjunction.

    Returns ("clash",), ("sat",), or ("branch", node, disjuncts).
    """
    max_nodes, deadline = caps
    while True:
        if deadline is not None and time.monotonic() > deadline:
            raise ResourceLimitExceeded("tableau time cap exceeded")
        if len(state.nodes) > max_nodes:
            raise ResourceLimitExceeded("tableau node cap exceeded")
        if _is_clashed(state):
            if trace is not None:
                trace.append(("clash",))
            return ("clash",)

        changed = False
        for n in state.nodes:
            lab = state.labels[n]
            for c in sorted(lab, key=concept_key):
                if isinstance(c, And):
                    missing = [p for p in c.parts if p not in lab]
                    if missing:
                        lab.update(missing)
                        changed = True
                        if trace is not None:
                            trace.append(("and", n, c))
        for n in state.nodes:
            for c in sorted(state.labels[n], key=concept_key):
                fa = forall_parts(c)
                if fa is None:
                    continue
                roles, payload = fa
                need = set(roles.roles)
                for w in sorted(state.succ.get(n, ()), key=str):
                    if need <= state.edges[(n, w)] and payload not in state.labels[w]:
                        state.labels[w].add(payload)
                        changed = True
                        if trace is not None:
                            trace.append(("forall", n, c, w))
        if changed:
            continue

        for n in state.nodes:
            lab = state.labels[n]
            for c in sorted(lab, key=concept_key):
                ds = or_parts(c)
                if ds is not None and not any(d in lab for d in ds):
                    return ("branch", n, tuple(sorted(ds, key=concept_key)))

        expanded = False
        for n in state.nodes:
            lab = state.labels[n]
            pending = [
                c for c in sorted(lab, key=concept_key) if isinstance(c, Exists)
            ]
            if not pending or _blocked(state, n):
                continue
            for c in pending:
                need = set(c.roles.roles)
                if any(
                    need <= state.edges[(n, w)] and c.inner in state.labels[w]
                    for w in state.succ.get(n, ())
                ):
                    continue
                child = state.next_id
                state.next_id += 1
                state.nodes.append(child)
                state.labels[child] = set(tu) | {c.inner}
                state.edges[(n, child)] = frozenset(need)
                state.succ.setdefault(n, set()).add(child)
                state.succ[child] = set()
                state.parent[child] = n
                if trace is not None:
                    trace.append(("exists", n, c))
                expanded = True
                break
            if expanded:
                break
        if expanded:
            continue
        return ("sat",)


def is_satisfiable(
    kb: KnowledgeBase,
    *,
    max_nodes: int = 20000,
    max_seconds: float | None = None,
    trace: list | None = None,
) -> bool:
    """Tableau satisfiability; deterministic, verdict-only.

    Negative role assertions clash only against ABox edges, which is
    complete here because no rule ever adds an edge between named nodes.
    """
    tu = sorted({gci_rewrite(g) for g in kb.tbox}, key=concept_key)
    inds = list(kb.individuals())

    labels = {a: set(tu) for a in inds}
    edges = {}
    forbidden = set()
    for a in kb.abox:
        if isinstance(a, ConceptAssertion):
            labels[a.individual].add(nnf(a.concept))
        elif isinstance(a, RoleAssertion):
            key = (a.subject, a.object)
            edges[key] = edges.get(key, frozenset()) | {a.role}
        elif isinstance(a, NegRoleAssertion):
            forbidden.add((a.role, a.subject, a.object))
    for role, x, y in forbidden:
        if role in edges.get((x, y), ()):
            if trace is not None:
                trace.append(("forbidden-edge", role, x, y))
            return False
    succ = {a: set() for a in inds}
    for x, y in edges:
        succ[x].add(y)

    deadline = time.monotonic() + max_seconds if max_seconds else None
    caps = (max_nodes, deadline)
    initial = _State(list(inds), labels, edges, succ, {}, 0)

    stack = [initial]
    while stack:
        state = stack.pop()
        outcome = _saturate(state, tu, caps, trace)
        if outcome[0] == "clash":
            continue
        if outcome[0] == "sat":
            return True
        _, node, disjuncts = outcome
        if trace is not None:
            trace.append(("or", node, disjuncts))
        for d in reversed(disjuncts):
            branch = state.copy()
            branch.labels[node].add(d)
            stack.append(branch)
    return False


# ---------------------------------------------------------------------------
# Propositional core for the bounded model finder


def _solve_cnf(num_vars, clauses):
    """Iterative DPLL with two watched literals; returns assignment or None."""
    cls = []
    for c in clauses:
        c = tuple(dict.fromkeys(c))
        if not c:
            return None
        if any(-lit in c for lit in c):
            continue
        cls.append(list(c))

    assign = [0] * (num_vars + 1)

    def value(lit):
        v = assign[abs(lit)]
        if v == 0:
            return 0
        return v if lit > 0 else -v

    watch = {}
    trail = []
    queue = []

    def enqueue(lit):
        v = value(lit)
        if v == -1:
            return False
        if v == 0:
            assign[abs(lit)] = 1 if lit > 0 else -1
            trail.append(lit)
            queue.append(lit)
        return True

    for ci, c in enumerate(cls):
        if len(c) == 1:
            if not enqueue(c[0]):
                return None
        else:
            watch.setdefault(c[0], []).append(ci)
            watch.setdefault(c[1], []).append(ci)

    def propagate():
        while queue:
            lit = queue.pop()
            falsified = -lit
            wl = watch.get(falsified)
            if not wl:
                continue
            i = 0
            while i < len(wl):
                ci = wl[i]
                c = cls[ci]
                if c[0] == falsified:
                    c[0], c[1] = c[1], c[0]
                if value(c[0]) == 1:
                    i += 1
                    continue
                for k in range(2, len(c)):
                    if value(c[k]) != -1:
                        c[1], c[k] = c[k], c[1]
                        watch.setdefault(c[1], []).append(ci)
                        wl[i] = wl[-1]
                        wl.pop()
                        break
                else:
                    if not enqueue(c[0]):
                        return False
                    i += 1
        return True

    decisions = []
    while True:
        if not propagate():
            while decisions:
                var, retried, mark = decisions.pop()
                for lit in trail[mark:]:
                    assign[abs(lit)] = 0
                del trail[mark:]
                queue.clear()
                if not retried:
                    decisions.append((var, True, mark))
                    enqueue(var)
                    break
            else:
                return None
            continue
        var = next((v for v in range(1, num_vars + 1) if assign[v] == 0), None)
        if var is None:
            return [v == 1 for v in assign]
        decisions.append((var, False, len(trail)))
        enqueue(-var)


class _Cnf:
    def __init__(self):
        self.num_vars = 0
        self.clauses = []

    def var(self):
        self.num_vars += 1
        return self.num_vars

    def add(self, *lits):
        self.clauses.append(tuple(lits))


def _signature(kb: KnowledgeBase, block):
    concepts, roles = set(), set()

    def scan(c: Concept):
        for sub in subconcepts(c):
            if isinstance(sub, Atomic):
                concepts.add(sub.name)
            elif isinstance(sub, Exists):
                roles.update(sub.roles.roles)

    for a in kb.abox:
        if isinstance(a, ConceptAssertion):
            scan(a.concept)
        else:
            roles.add(a.role)
    for g in kb.tbox:
        scan(g.lhs)
        scan(g.rhs)
    if block is not None:
        for q in block.disjuncts:
            concepts.update(a for a, _ in q.concept_atoms)
            roles.update(r for r, _, _ in q.role_atoms)
    return sorted(concepts), sorted(roles)


class _Encoder:
    """Propositional encoding of a knowledge base over a fixed small domain."""

    def __init__(self, n, concept_names, role_names):
        self.n = n
        self.cnf = _Cnf()
        self.true_lit = self.cnf.var()
        self.cnf.add(self.true_lit)
        self.xvar = {
            (a, i): self.cnf.var() for a in concept_names for i in range(n)
        }
        self.yvar = {
            (r, i, j): self.cnf.var()
            for r in role_names
            for i in range(n)
            for j in range(n)
        }
        self._memo = {}

    def lit(self, c: Concept, i: int) -> int:
        key = (c, i)
        if key in self._memo:
            return self._memo[key]
        if isinstance(c, Bottom):
            out = -self.true_lit
        elif isinstance(c, Atomic):
            out = self.xvar[(c.name, i)]
        elif isinstance(c, Not):
            out = -self.lit(c.inner, i)
        elif isinstance(c, And):
            parts = [self.lit(p, i) for p in c.parts]
            out = self.cnf.var()
            for p in parts:
                self.cnf.add(-out, p)
            self.cnf.add(out, *(-p for p in parts))
        elif isinstance(c, Exists):
            alts = []
            for j in range(self.n):
                conjuncts = [self.yvar[(r, i, j)] for r in c.roles] + [
                    self.lit(c.inner, j)
                ]
                aux = self.cnf.var()
                for p in conjuncts:
                    self.cnf.add(-aux, p)
                self.cnf.add(aux, *(-p for p in conjuncts))
                alts.append(aux)
            out = self.cnf.var()
            self.cnf.add(-out, *alts)
            for a in alts:
                self.cnf.add(out, -a)
        else:
            raise TypeError(f"not a concept: {c!r}")
        self._memo[key] = out
        return out

    def assert_kb(self, kb: KnowledgeBase, placement):
        for g in kb.tbox:
            for i in range(self.n):
                self.cnf.add(-self.lit(g.lhs, i), self.lit(g.rhs, i))
        for a in kb.abox:
            if isinstance(a, ConceptAssertion):
                self.cnf.add(self.lit(a.concept, placement[a.individual]))
            elif isinstance(a, RoleAssertion):
                self.cnf.add(self.yvar[(a.role, placement[a.subject], placement[a.object])])
            elif isinstance(a, NegRoleAssertion):
                self.cnf.add(-self.yvar[(a.role, placement[a.subject], placement[a.object])])

    def block_query(self, q):
        """Forbid every match of the query: one clause per assignment."""
        variables = list(q.variables)
        for combo in product(range(self.n), repeat=len(variables)):
            pi = dict(zip(variables, combo))
            clause = []
            for a, v in sorted(q.concept_atoms):
                clause.append(-self.xvar[(a, pi[v])])
            for r, x, y in sorted(q.role_atoms):
                clause.append(-self.yvar[(r, pi[x], pi[y])])
            self.cnf.add(*clause)

    def decode(self, model, placement) -> Interpretation:
        domain = [f"d{i}" for i in range(self.n)]
        concepts = {}
        for (a, i), v in self.xvar.items():
            if model[v]:
                concepts.setdefault(a, set()).add(domain[i])
        roles = {}
        for (r, i, j), v in self.yvar.items():
            if model[v]:
                roles.setdefault(r, set()).add((domain[i], domain[j]))
        names = {name: domain[i] for name, i in placement.items()}
        return Interpretation(domain, concepts, roles, names)


def _canonical_placements(individuals, n):
    """Name-to-element maps up to element permutation (first occurrences ordered)."""
    individuals = list(individuals)

    def extend(prefix, used):
        if len(prefix) == len(individuals):
            yield dict(zip(individuals, prefix))
            return
        for i in range(min(used + 1, n - 1) + 1):
            yield from extend(prefix + [i], max(used, i))

    if individuals:
        yield from extend([], -1)
    else:
        yield {}


def bounded_model_search(kb: KnowledgeBase, max_size: int, block: UCQ | None = None):
    """Smallest model of kb with at most max_size elements, or None.

    With `block`, only models matching no disjunct of the union query are
    accepted, which is exactly the bounded countermodel search.  Results are
    validated against the semantics before being returned.
    """
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    concept_names, role_names = _signature(kb, block)
    individuals = kb.individuals()
    for n in range(1, max_size + 1):
        for placement in _canonical_placements(individuals, n):
            if placement and max(placement.values()) >= n:
                continue
            enc = _Encoder(n, concept_names, role_names)
            enc.assert_kb(kb, placement)
            if block is not None:
                for q in block.disjuncts:
                    enc.block_query(q)
            model = _solve_cnf(enc.cnf.num_vars, enc.cnf.clauses)
            if model is None:
                continue
            interp = enc.decode(model, placement)
            assert is_model(interp, kb)
            if block is not None:
                assert not any(satisfies(interp, q) for q in block.disjuncts)
            return interp
    return None


def brute_force_model(kb: KnowledgeBase, max_size: int):
    """Bounded model finding oracle; absence within the bound proves nothing."""
    return bounded_model_search(kb, max_size)
