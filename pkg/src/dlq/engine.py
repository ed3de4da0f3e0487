"""Union-of-conjunctive-queries entailment.

An unsatisfiable knowledge base entails everything.  Otherwise the query is
not entailed exactly when some selection of one super-spoiler per disjunct
keeps the knowledge base satisfiable: that satisfiable extension then admits
a forest-like countermodel.  Selections are tested in canonical order and
the first satisfiable one is recorded, so verdicts are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .satcheck import bounded_model_search, is_satisfiable
from .semantics import Interpretation, interpretation_to_obj
from .spoiler import enumerate_super_spoilers
from .syntax import (
    Axiom,
    ConjunctiveQuery,
    KnowledgeBase,
    UCQ,
    axiom_key,
    axiom_to_text,
)

MODES = ("finite", "unrestricted")

INCONSISTENT_KB = "InconsistentKB"
NO_SELECTION_SATISFIABLE = "NoSpoilerSelectionSatisfiable"
SELECTION_SATISFIABLE = "SpoilerSelectionSatisfiable"


@dataclass(frozen=True, eq=False)
class Verdict:
    entailed: bool
    reason: str
    selection: tuple[tuple[Axiom, ...], ...] | None
    countermodel: Interpretation | None
    mode: str


def entails(
    kb: KnowledgeBase,
    query: UCQ | ConjunctiveQuery,
    *,
    mode: str = "unrestricted",
    extract_countermodel: bool = False,
    max_domain: int = 4,
    max_nodes: int = 20000,
    max_seconds: float | None = None,
) -> Verdict:
    """Decide whether the knowledge base entails the query.

    Finite and unrestricted mode run the same decision procedure (the logic
    has matching finite and unrestricted entailment); the mode is recorded
    in the verdict.  Countermodel extraction is opt-in and bounded; its
    absence never weakens a negative verdict.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if isinstance(query, ConjunctiveQuery):
        query = UCQ((query,))

    if not is_satisfiable(kb, max_nodes=max_nodes, max_seconds=max_seconds):
        return Verdict(True, INCONSISTENT_KB, None, None, mode)

    names = kb.individuals()
    per_disjunct = [enumerate_super_spoilers(q, names) for q in query.disjuncts]

    for selection in product(*per_disjunct):
        extension = set()
        for spoiler in selection:
            extension |= spoiler
        candidate = kb.union(extension)
        if is_satisfiable(candidate, max_nodes=max_nodes, max_seconds=max_seconds):
            countermodel = None
            if extract_countermodel:
                countermodel = bounded_model_search(
                    candidate, max_domain, block=query
                )
            recorded = tuple(
                tuple(sorted(spoiler, key=axiom_key)) for spoiler in selection
            )
            return Verdict(False, SELECTION_SATISFIABLE, recorded, countermodel, mode)
    return Verdict(True, NO_SELECTION_SATISFIABLE, None, None, mode)


@dataclass(frozen=True, eq=False)
class BruteForceReport:
    """Outcome of the bounded countermodel search; never claims entailment."""

    countermodel: Interpretation | None
    max_size: int

    @property
    def not_entailed(self) -> bool:
        return self.countermodel is not None


def brute_force_entails(
    kb: KnowledgeBase, query: UCQ | ConjunctiveQuery, max_size: int
) -> BruteForceReport:
    """Exhaustively search bounded models of kb matching no disjunct."""
    if isinstance(query, ConjunctiveQuery):
        query = UCQ((query,))
    countermodel = bounded_model_search(kb, max_size, block=query)
    return BruteForceReport(countermodel, max_size)


def verdict_to_obj(v: Verdict) -> dict:
    return {
        "entailed": v.entailed,
        "reason": v.reason,
        "selection": None
        if v.selection is None
        else [[axiom_to_text(a) for a in spoiler] for spoiler in v.selection],
        "mode": v.mode,
        "countermodel": None
        if v.countermodel is None
        else interpretation_to_obj(v.countermodel),
    }
