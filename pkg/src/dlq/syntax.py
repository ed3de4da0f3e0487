"""Terms, axioms, knowledge bases and queries, with parsing and printing.

Concepts are kept in a canonical structural form: conjunctions are n-ary,
flattened, duplicate-free and sorted, so structural equality doubles as
canonical-form equality.  Disjunction, universal restriction, Top and
implication are sugar and are expanded into the five core constructors
(Bottom, Atomic, Not, And, Exists) at construction time.

Grammar for knowledge base text (statements end with "."):

    concept := "Bot" | "Top" | NAME | "not" concept
             | "(" concept ("and" concept)+ ")" | "(" concept ("or" concept)+ ")"
             | "(" concept ")"
             | "exists" "(" role ("&" role)* ")" "." concept
             | "forall" "(" role ("&" role)* ")" "." concept
    stmt    := concept "SubClassOf" concept "."
             | concept "(" IND ")" "."
             | role "(" IND "," IND ")" "."
             | "not" role "(" IND "," IND ")" "."

NAME matches [A-Z][A-Za-z0-9_]*, role and IND match [a-z][A-Za-z0-9_]*,
"#" starts a line comment.  Query grammar:

    ucq  := cq ("or" cq)*
    cq   := atom ("," atom)*
    atom := NAME "(" VAR ")" | role "(" VAR "," VAR ")"

with VAR matching "?"[A-Za-z0-9_]+.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import EmptyABox, EmptyQuery, ParseError

# ---------------------------------------------------------------------------
# Concepts


@dataclass(frozen=True)
class RoleConjunction:
    """A non-empty set of role names, stored sorted."""

    roles: tuple[str, ...]

    def __init__(self, roles):
        roles = tuple(sorted(set(roles)))
        if not roles:
            raise ValueError("role conjunction must name at least one role")
        object.__setattr__(self, "roles", roles)

    def __iter__(self):
        return iter(self.roles)

    def __len__(self):
        return len(self.roles)

    def __str__(self):
        return " & ".join(self.roles)


class Concept:
    """Base class for the five core concept constructors."""

    __slots__ = ()


@dataclass(frozen=True)
class Bottom(Concept):
    __slots__ = ()


@dataclass(frozen=True)
class Atomic(Concept):
    name: str


@dataclass(frozen=True)
class Not(Concept):
    inner: Concept


@dataclass(frozen=True)
class And(Concept):
    """n-ary conjunction; parts are >= 2, flattened, sorted, duplicate-free."""

    parts: tuple[Concept, ...]


@dataclass(frozen=True)
class Exists(Concept):
    roles: RoleConjunction
    inner: Concept


BOT = Bottom()
TOP = Not(BOT)


def concept_key(c: Concept):
    """Total order on concepts; used for sorting conjuncts and axioms."""
    if isinstance(c, Bottom):
        return (0,)
    if isinstance(c, Atomic):
        return (1, c.name)
    if isinstance(c, Not):
        return (2, concept_key(c.inner))
    if isinstance(c, Exists):
        return (3, c.roles.roles, concept_key(c.inner))
    if isinstance(c, And):
        return (4, tuple(concept_key(p) for p in c.parts))
    raise TypeError(f"not a concept: {c!r}")


def conj(*parts: Concept) -> Concept:
    """Canonical conjunction: flatten, drop Top, absorb Bottom, sort, dedupe.

    The empty conjunction is Top.
    """
    flat = []
    for p in parts:
        if isinstance(p, And):
            flat.extend(p.parts)
        else:
            flat.append(p)
    if any(p == BOT for p in flat):
        return BOT
    flat = [p for p in flat if p != TOP]
    uniq = sorted(set(flat), key=concept_key)
    if not uniq:
        return TOP
    if len(uniq) == 1:
        return uniq[0]
    return And(tuple(uniq))


def or_parts(c: Concept):
    """Disjuncts of a disjunction-shaped concept, or None.

    The sugar expansion of C1 or ... or Cn is Not(And(Not(C1), ..., Not(Cn))).
    """
    if isinstance(c, Not) and isinstance(c.inner, And):
        if all(isinstance(p, Not) for p in c.inner.parts):
            return tuple(p.inner for p in c.inner.parts)
    return None


def forall_parts(c: Concept):
    """(roles, payload) of a universal-restriction-shaped concept, or None."""
    if isinstance(c, Not) and isinstance(c.inner, Exists):
        if isinstance(c.inner.inner, Not):
            return c.inner.roles, c.inner.inner.inner
    return None


def disj(*parts: Concept) -> Concept:
    """Canonical disjunction, expanded into the core grammar."""
    flat = []
    for p in parts:
        nested = or_parts(p)
        if nested is not None:
            flat.extend(nested)
        else:
            flat.append(p)
    if any(p == TOP for p in flat):
        return TOP
    flat = [p for p in flat if p != BOT]
    uniq = sorted(set(flat), key=concept_key)
    if not uniq:
        return BOT
    if len(uniq) == 1:
        return uniq[0]
    return Not(And(tuple(Not(p) for p in uniq)))


def forall(roles: RoleConjunction, inner: Concept) -> Concept:
    return Not(Exists(roles, Not(inner)))


def implies(lhs: Concept, rhs: Concept) -> Concept:
    return disj(Not(lhs), rhs)


def nnf(c: Concept) -> Concept:
    """Negation normal form: negation only on atomic concepts or Bottom.

    Disjunction and universal restriction count as primitive patterns, so the
    result may contain Not nodes that are part of those sugar shapes.
    """
    if isinstance(c, (Bottom, Atomic)):
        return c
    if isinstance(c, And):
        return conj(*(nnf(p) for p in c.parts))
    if isinstance(c, Exists):
        return Exists(c.roles, nnf(c.inner))
    if isinstance(c, Not):
        return _nnf_neg(c.inner)
    raise TypeError(f"not a concept: {c!r}")


def _nnf_neg(c: Concept) -> Concept:
    # NNF of Not(c)
    if isinstance(c, Bottom):
        return TOP
    if isinstance(c, Atomic):
        return Not(c)
    if isinstance(c, Not):
        return nnf(c.inner)
    if isinstance(c, And):
        return disj(*(_nnf_neg(p) for p in c.parts))
    if isinstance(c, Exists):
        return forall(c.roles, _nnf_neg(c.inner))
    raise TypeError(f"not a concept: {c!r}")


def is_nnf(c: Concept) -> bool:
    """True if negation occurs only on atoms, Bottom, or inside sugar shapes."""
    if isinstance(c, (Bottom, Atomic)):
        return True
    if isinstance(c, And):
        return all(is_nnf(p) for p in c.parts)
    if isinstance(c, Exists):
        return is_nnf(c.inner)
    if isinstance(c, Not):
        if isinstance(c.inner, (Atomic, Bottom)):
            return True
        ds = or_parts(c)
        if ds is not None:
            return all(is_nnf(d) for d in ds)
        fa = forall_parts(c)
        if fa is not None:
            return is_nnf(fa[1])
        return False
    return False


def subconcepts(c: Concept) -> frozenset[Concept]:
    """All structural subterms of c, including c itself."""
    out = set()

    def walk(x):
        if x in out:
            return
        out.add(x)
        if isinstance(x, Not):
            walk(x.inner)
        elif isinstance(x, And):
            for p in x.parts:
                walk(p)
        elif isinstance(x, Exists):
            walk(x.inner)

    walk(c)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Axioms and knowledge bases


class Axiom:
    __slots__ = ()


@dataclass(frozen=True)
class GCI(Axiom):
    lhs: Concept
    rhs: Concept


@dataclass(frozen=True)
class ConceptAssertion(Axiom):
    concept: Concept
    individual: str


@dataclass(frozen=True)
class RoleAssertion(Axiom):
    role: str
    subject: str
    object: str


@dataclass(frozen=True)
class NegRoleAssertion(Axiom):
    role: str
    subject: str
    object: str


def axiom_key(a: Axiom):
    if isinstance(a, GCI):
        return (0, concept_key(a.lhs), concept_key(a.rhs))
    if isinstance(a, ConceptAssertion):
        return (1, a.individual, concept_key(a.concept))
    if isinstance(a, RoleAssertion):
        return (2, a.role, a.subject, a.object)
    if isinstance(a, NegRoleAssertion):
        return (3, a.role, a.subject, a.object)
    raise TypeError(f"not an axiom: {a!r}")


TAUTOLOGY = GCI(TOP, TOP)


@dataclass(frozen=True)
class KnowledgeBase:
    abox: frozenset[Axiom]
    tbox: frozenset[Axiom]

    @staticmethod
    def make(abox, tbox=()) -> "KnowledgeBase":
        """Normalise: empty TBox becomes {Top SubClassOf Top}, empty ABox errors."""
        abox = frozenset(abox)
        tbox = frozenset(tbox)
        if not abox:
            raise EmptyABox("a knowledge base needs at least one ABox assertion")
        for a in abox:
            if isinstance(a, GCI):
                raise ValueError("GCIs belong to the TBox")
        for a in tbox:
            if not isinstance(a, GCI):
                raise ValueError("only GCIs belong to the TBox")
        if not tbox:
            tbox = frozenset({TAUTOLOGY})
        return KnowledgeBase(abox, tbox)

    @property
    def axioms(self):
        return self.abox | self.tbox

    def individuals(self) -> tuple[str, ...]:
        """ind(K): the individual names occurring in the knowledge base."""
        out = set()
        for a in self.abox:
            if isinstance(a, ConceptAssertion):
                out.add(a.individual)
            else:
                out.add(a.subject)
                out.add(a.object)
        return tuple(sorted(out))

    def union(self, extra_axioms) -> "KnowledgeBase":
        """The knowledge base extended with further axioms (ABox or TBox)."""
        abox = set(self.abox)
        tbox = set(self.tbox)
        for a in extra_axioms:
            (tbox if isinstance(a, GCI) else abox).add(a)
        return KnowledgeBase(frozenset(abox), frozenset(tbox))


def closure(kb: KnowledgeBase) -> frozenset[Concept]:
    """Concept closure for the tableau.

    The smallest set containing the NNF of every concept in the knowledge
    base and every GCI's rewrite nnf(not C or D), closed under logical
    decomposition and NNF-complement.
    """
    roots = set()
    for a in kb.abox:
        if isinstance(a, ConceptAssertion):
            roots.add(nnf(a.concept))
    for g in kb.tbox:
        roots.add(nnf(g.lhs))
        roots.add(nnf(g.rhs))
        roots.add(gci_rewrite(g))
    out = set()
    todo = list(roots)
    while todo:
        c = todo.pop()
        if c in out:
            continue
        out.add(c)
        todo.append(nnf(Not(c)))
        todo.extend(_decompose(c))
    return frozenset(out)


def gci_rewrite(g: GCI) -> Concept:
    """nnf(not lhs or rhs), the internalised form used by the tableau."""
    return nnf(disj(Not(g.lhs), g.rhs))


def _decompose(c: Concept):
    if isinstance(c, And):
        return list(c.parts)
    if isinstance(c, Exists):
        return [c.inner]
    if isinstance(c, Not):
        ds = or_parts(c)
        if ds is not None:
            return list(ds)
        fa = forall_parts(c)
        if fa is not None:
            return [fa[1]]
        return [c.inner]
    return []


# ---------------------------------------------------------------------------
# Queries


def var_key(v: str):
    # canonical names v0..v11.. must sort in index order
    return (len(v), v)


@dataclass(frozen=True)
class ConjunctiveQuery:
    """Concept atoms (name, var) and role atoms (role, var, var).

    Parsed queries always cover every variable with at least one atom.
    Internal restrictions (qtree members, splitting subtrees) may carry
    variables without atoms; the atomless single-variable query plays the
    role of the always-matched Top query.
    """

    variables: tuple[str, ...]
    concept_atoms: frozenset[tuple[str, str]]
    role_atoms: frozenset[tuple[str, str, str]]

    @staticmethod
    def make(concept_atoms=(), role_atoms=(), variables=None) -> "ConjunctiveQuery":
        concept_atoms = frozenset(concept_atoms)
        role_atoms = frozenset(role_atoms)
        used = {v for _, v in concept_atoms}
        for _, x, y in role_atoms:
            used.add(x)
            used.add(y)
        if variables is None:
            variables = sorted(used, key=var_key)
        else:
            variables = list(dict.fromkeys(variables))
            if not used <= set(variables):
                raise ValueError("atoms use variables outside the variable set")
        if not variables:
            raise ValueError("a query needs at least one variable")
        return ConjunctiveQuery(tuple(variables), concept_atoms, role_atoms)

    @property
    def size(self) -> int:
        return len(self.concept_atoms) + len(self.role_atoms)

    def restrict(self, keep) -> "ConjunctiveQuery":
        """Sub-query over the given variables; atoms leaving the set are dropped."""
        keep = set(keep)
        return ConjunctiveQuery.make(
            {(a, v) for a, v in self.concept_atoms if v in keep},
            {(r, x, y) for r, x, y in self.role_atoms if x in keep and y in keep},
            variables=sorted(keep, key=var_key),
        )

    def components(self) -> tuple[frozenset[str], ...]:
        """Weakly connected components of the query structure, sorted."""
        adj = {v: set() for v in self.variables}
        for _, x, y in self.role_atoms:
            adj[x].add(y)
            adj[y].add(x)
        seen = set()
        comps = []
        for v in sorted(self.variables, key=var_key):
            if v in seen:
                continue
            comp = set()
            stack = [v]
            while stack:
                u = stack.pop()
                if u in comp:
                    continue
                comp.add(u)
                stack.extend(adj[u] - comp)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(comps)


@dataclass(frozen=True)
class UCQ:
    disjuncts: tuple[ConjunctiveQuery, ...]

    def __post_init__(self):
        if not self.disjuncts:
            raise ValueError("a UCQ needs at least one disjunct")


# ---------------------------------------------------------------------------
# Canonicalisation of queries


@lru_cache(maxsize=None)
def canonicalize_cq(q: ConjunctiveQuery) -> ConjunctiveQuery:
    """Rename variables to v0, v1, ... by a canonical labelling.

    Two queries canonicalise to the same value exactly when they differ by a
    bijective variable renaming.  Colour refinement narrows the candidate
    orderings; remaining ties are broken by trying every ordering consistent
    with the refined classes and keeping the smallest atom encoding.
    """
    variables = tuple(sorted(q.variables, key=var_key))
    csig = {v: tuple(sorted(a for a, u in q.concept_atoms if u == v)) for v in variables}
    out_atoms = {v: [] for v in variables}
    in_atoms = {v: [] for v in variables}
    for r, x, y in q.role_atoms:
        out_atoms[x].append((r, y))
        in_atoms[y].append((r, x))

    def refine(colors):
        while True:
            sigs = {}
            for v in variables:
                sigs[v] = (
                    colors[v],
                    tuple(sorted((r, colors[u]) for r, u in out_atoms[v])),
                    tuple(sorted((r, colors[u]) for r, u in in_atoms[v])),
                )
            ranking = {s: i for i, s in enumerate(sorted(set(sigs.values())))}
            new = {v: ranking[sigs[v]] for v in variables}
            if new == colors:
                return colors
            colors = new

    init = {s: i for i, s in enumerate(sorted(set(csig.values())))}
    colors0 = refine({v: init[csig[v]] for v in variables})

    best = None

    def encode(order):
        idx = {v: i for i, v in enumerate(order)}
        return (
            tuple(sorted((a, idx[v]) for a, v in q.concept_atoms)),
            tuple(sorted((r, idx[x], idx[y]) for r, x, y in q.role_atoms)),
        )

    def descend(colors):
        nonlocal best
        classes = {}
        for v in variables:
            classes.setdefault(colors[v], []).append(v)
        pending = [c for c, vs in sorted(classes.items()) if len(vs) > 1]
        if not pending:
            order = sorted(variables, key=lambda v: colors[v])
            enc = encode(order)
            if best is None or enc < best:
                best = enc
        else:
            target = classes[pending[0]]
            for v in sorted(target, key=var_key):
                split = {u: (colors[u], 0 if u == v else 1) for u in variables}
                ranking = {s: i for i, s in enumerate(sorted(set(split.values())))}
                descend(refine({u: ranking[split[u]] for u in variables}))

    descend(colors0)
    catoms, ratoms = best
    names = [f"v{i}" for i in range(len(variables))]
    return ConjunctiveQuery.make(
        {(a, names[i]) for a, i in catoms},
        {(r, names[i], names[j]) for r, i, j in ratoms},
        variables=names,
    )


# ---------------------------------------------------------------------------
# Tokeniser and parsers

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)"
    r"|(?P<uname>[A-Z][A-Za-z0-9_]*)|(?P<lname>[a-z][A-Za-z0-9_]*)"
    r"|(?P<var>\?[A-Za-z0-9_]+)|(?P<punct>[().,&])"
)


def _tokenize(text):
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(line, col, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
            col = 1
        elif kind in ("ws", "comment"):
            col += len(value)
        else:
            tokens.append((kind, value, line, col))
            col += len(value)
        pos = m.end()
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, ahead=0):
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def next(self):
        tok = self.tokens[self.pos]
        if tok[0] != "eof":
            self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(tok[2], tok[3], message)

    def expect(self, value):
        tok = self.next()
        if tok[1] != value:
            self.fail(f"expected {value!r}, found {tok[1]!r}", tok)
        return tok

    def at_eof(self):
        return self.peek()[0] == "eof"

    # -- concepts

    def role_group(self) -> RoleConjunction:
        self.expect("(")
        roles = [self.lname("role name")]
        while self.peek()[1] == "&":
            self.next()
            roles.append(self.lname("role name"))
        self.expect(")")
        return RoleConjunction(roles)

    def lname(self, what):
        tok = self.next()
        if tok[0] != "lname" or tok[1] in ("not", "and", "or", "exists", "forall"):
            self.fail(f"expected {what}", tok)
        return tok[1]

    def concept(self) -> Concept:
        kind, value, _, _ = self.peek()
        if value == "Bot":
            self.next()
            return BOT
        if value == "Top":
            self.next()
            return TOP
        if kind == "uname":
            if value == "SubClassOf":
                self.fail("expected a concept")
            self.next()
            return Atomic(value)
        if value == "not":
            self.next()
            return Not(self.concept())
        if value in ("exists", "forall"):
            self.next()
            roles = self.role_group()
            self.expect(".")
            inner = self.concept()
            return Exists(roles, inner) if value == "exists" else forall(roles, inner)
        if value == "(":
            self.next()
            parts = [self.concept()]
            op = None
            while self.peek()[1] in ("and", "or"):
                tok = self.next()
                if op is None:
                    op = tok[1]
                elif op != tok[1]:
                    self.fail("mixed 'and'/'or' inside one group; add parentheses", tok)
                parts.append(self.concept())
            self.expect(")")
            if op == "or":
                return disj(*parts)
            if op == "and":
                return conj(*parts)
            return parts[0]
        self.fail("expected a concept")

    # -- knowledge bases

    def statement(self) -> Axiom:
        kind, value, _, _ = self.peek()
        if kind == "lname" and value not in ("not", "exists", "forall") and self.peek(1)[1] == "(":
            return self._role_assertion(negated=False)
        if value == "not" and self.peek(1)[0] == "lname" and self.peek(2)[1] == "(":
            nxt = self.peek(1)[1]
            if nxt not in ("exists", "forall"):
                self.next()
                return self._role_assertion(negated=True)
        lhs = self.concept()
        tok = self.next()
        if tok[1] == "SubClassOf":
            rhs = self.concept()
            self.expect(".")
            return GCI(lhs, rhs)
        if tok[1] == "(":
            ind = self.lname("individual name")
            self.expect(")")
            self.expect(".")
            return ConceptAssertion(lhs, ind)
        self.fail("expected 'SubClassOf' or '(individual)'", tok)

    def _role_assertion(self, negated) -> Axiom:
        role = self.lname("role name")
        self.expect("(")
        a = self.lname("individual name")
        self.expect(",")
        b = self.lname("individual name")
        self.expect(")")
        self.expect(".")
        return NegRoleAssertion(role, a, b) if negated else RoleAssertion(role, a, b)

    # -- queries

    def atom(self, seen_vars):
        kind, value, _, _ = self.peek()
        if kind == "uname":
            name = self.next()[1]
            self.expect("(")
            v = self.variable(seen_vars)
            self.expect(")")
            return ("concept", name, v)
        if kind == "lname" and value not in ("or",):
            role = self.lname("role name")
            self.expect("(")
            x = self.variable(seen_vars)
            self.expect(",")
            y = self.variable(seen_vars)
            self.expect(")")
            return ("role", role, x, y)
        self.fail("expected a query atom")

    def variable(self, seen_vars):
        tok = self.next()
        if tok[0] != "var":
            self.fail("expected a ?variable", tok)
        name = tok[1][1:]
        seen_vars.add(name)
        return name


def parse_concept(text: str) -> Concept:
    p = _Parser(text)
    c = p.concept()
    if not p.at_eof():
        p.fail("trailing input after concept")
    return c


def parse_kb(text: str) -> KnowledgeBase:
    """Parse knowledge base text into canonical-form axioms."""
    p = _Parser(text)
    abox, tbox = set(), set()
    while not p.at_eof():
        stmt = p.statement()
        (tbox if isinstance(stmt, GCI) else abox).add(stmt)
    if not abox:
        raise EmptyABox("input contains no ABox assertion")
    return KnowledgeBase.make(abox, tbox)


def parse_ucq(text: str) -> UCQ:
    """Parse a union of conjunctive queries; duplicate atoms are merged."""
    p = _Parser(text)
    disjuncts = []
    while True:
        concept_atoms, role_atoms = set(), set()
        seen = set()
        if p.at_eof() or p.peek()[1] == "or":
            raise EmptyQuery("a query disjunct needs at least one atom")
        while True:
            atom = p.atom(seen)
            if atom[0] == "concept":
                concept_atoms.add((atom[1], atom[2]))
            else:
                role_atoms.add((atom[1], atom[2], atom[3]))
            if p.peek()[1] == ",":
                p.next()
                continue
            break
        disjuncts.append(ConjunctiveQuery.make(concept_atoms, role_atoms))
        if p.peek()[1] == "or":
            p.next()
            continue
        break
    if not p.at_eof():
        p.fail("trailing input after query")
    return UCQ(tuple(disjuncts))


def parse_cq(text: str) -> ConjunctiveQuery:
    """Parse text holding exactly one conjunctive query."""
    u = parse_ucq(text)
    if len(u.disjuncts) != 1:
        raise ParseError(1, 1, "expected a single conjunctive query, found a union")
    return u.disjuncts[0]


# ---------------------------------------------------------------------------
# Printing (parse of the printed form reproduces the canonical value)


def concept_to_text(c: Concept) -> str:
    if c == TOP:
        return "Top"
    if isinstance(c, Bottom):
        return "Bot"
    if isinstance(c, Atomic):
        return c.name
    if isinstance(c, And):
        return "(" + " and ".join(concept_to_text(p) for p in c.parts) + ")"
    if isinstance(c, Exists):
        return f"exists ({c.roles}).{concept_to_text(c.inner)}"
    ds = or_parts(c)
    if ds is not None:
        return "(" + " or ".join(concept_to_text(d) for d in ds) + ")"
    fa = forall_parts(c)
    if fa is not None:
        return f"forall ({fa[0]}).{concept_to_text(fa[1])}"
    return f"not {concept_to_text(c.inner)}"


def axiom_to_text(a: Axiom) -> str:
    if isinstance(a, GCI):
        return f"{concept_to_text(a.lhs)} SubClassOf {concept_to_text(a.rhs)}"
    if isinstance(a, ConceptAssertion):
        return f"{concept_to_text(a.concept)}({a.individual})"
    if isinstance(a, RoleAssertion):
        return f"{a.role}({a.subject},{a.object})"
    if isinstance(a, NegRoleAssertion):
        return f"not {a.role}({a.subject},{a.object})"
    raise TypeError(f"not an axiom: {a!r}")


def kb_to_text(kb: KnowledgeBase) -> str:
    axioms = sorted(kb.abox, key=axiom_key) + sorted(kb.tbox, key=axiom_key)
    return "".join(axiom_to_text(a) + ".\n" for a in axioms)


def cq_to_text(q: ConjunctiveQuery) -> str:
    if q.size == 0:
        raise ValueError("the atomless query has no concrete syntax")
    catoms = [f"{a}(?{v})" for a, v in sorted(q.concept_atoms)]
    ratoms = [f"{r}(?{x},?{y})" for r, x, y in sorted(q.role_atoms)]
    return ", ".join(catoms + ratoms)


def ucq_to_text(u: UCQ) -> str:
    return " or ".join(cq_to_text(q) for q in u.disjuncts)
