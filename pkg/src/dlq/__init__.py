"""Query entailment for the description logic ALC with role conjunctions.

The pipeline: parse knowledge bases and unions of conjunctive queries, roll
forward-tree-shaped queries up into concepts, explore fork rewritings and
splittings, enumerate super-spoilers as minimal hitting sets, and decide
entailment through satisfiability checks.  Finite model machinery
(interpretations, matching, homomorphisms, unravellings) backs the tests.
"""

from .engine import BruteForceReport, Verdict, brute_force_entails, entails, verdict_to_obj
from .errors import (
    DlqError,
    EmptyABox,
    EmptyQuery,
    EmptyRestriction,
    ForkNotPresent,
    HasForks,
    InvalidSplitting,
    NamesUnassigned,
    NotAMatch,
    NotLffLike,
    NotTreeShaped,
    ParseError,
    ResourceLimitExceeded,
    SizeLimitExceeded,
    UnassignedIndividual,
)
from .forkrew import (
    Fork,
    eliminate_fork,
    fork_rewritings,
    list_forks,
    maximal_fork_rewriting,
    occurring_signature,
    qtree_set,
)
from .rollup import TreeInfo, match_concept, subtree_concept, tree_shape
from .satcheck import bounded_model_search, brute_force_model, is_satisfiable
from .semantics import (
    ForestClass,
    ForwardTree,
    Interpretation,
    NotForest,
    RootedForest,
    classify_forest,
    check_axiom,
    eval_concept,
    find_homomorphism,
    find_matches,
    interpretation_from_json,
    interpretation_from_obj,
    interpretation_to_json,
    interpretation_to_obj,
    is_homomorphism,
    is_lff_like,
    is_match,
    is_model,
    neighbourhood,
    restrict,
    satisfies,
)
from .splitting import (
    Splitting,
    enumerate_splittings,
    is_compatible,
    splitting_from_match,
    validate_splitting,
)
from .spoiler import (
    blocking_options,
    candidate_spoiler_axioms,
    enumerate_super_spoilers,
    minimal_hitting_sets,
)
from .syntax import (
    And,
    Atomic,
    Axiom,
    BOT,
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
    RoleConjunction,
    TOP,
    UCQ,
    canonicalize_cq,
    closure,
    concept_to_text,
    axiom_to_text,
    cq_to_text,
    kb_to_text,
    nnf,
    parse_cq,
    parse_concept,
    parse_kb,
    parse_ucq,
    ucq_to_text,
)
from .unravel import UnravelResult, forward_unravel

__version__ = "0.1.0"
