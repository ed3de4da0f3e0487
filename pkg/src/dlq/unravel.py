"""Depth-truncated rooted forward unravellings of finite interpretations.

The unravelling's domain consists of words over the base domain that start
at a named element and never have two named elements in the first two
positions.  Concept membership is inherited from the last letter; roles are
the named-to-named pairs of the base plus the one-step extension pairs.
The full unravelling is infinite, so a truncation depth is mandatory: depth
counts word length minus one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NamesUnassigned, SizeLimitExceeded
from .semantics import Interpretation

WORD_SEP = "/"


@dataclass(frozen=True, eq=False)
class UnravelResult:
    interpretation: Interpretation
    last_letter: dict  # node id -> base element
    names: frozenset
    depth: int
    reachable_only: bool


def forward_unravel(
    i: Interpretation,
    names,
    depth: int,
    reachable_only: bool = False,
    max_nodes: int = 50000,
) -> UnravelResult:
    """Unravel i from its names-rooted elements, truncated at the given depth.

    With reachable_only the domain keeps only words whose consecutive letters
    are connected by some role (classical path words); the default keeps all
    words, following the word-domain definition literally.  Both modes yield
    names-rooted forward forests.
    """
    names = frozenset(names)
    if not names:
        raise NamesUnassigned("the root name set must be non-empty")
    missing = sorted(a for a in names if a not in i.names)
    if missing:
        raise NamesUnassigned(f"names not assigned: {', '.join(missing)}")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    for e in i.domain:
        if WORD_SEP in e:
            raise ValueError(f"base element id {e!r} contains {WORD_SEP!r}")

    named = set(i.named_elements(names))
    connected = i.edges()

    words = [(e,) for e in i.domain if e in named]
    frontier = list(words)
    for _ in range(depth):
        nxt = []
        for w in frontier:
            for d in i.domain:
                if len(w) == 1 and d in named:
                    continue  # two named letters up front are excluded
                if reachable_only and (w[-1], d) not in connected:
                    continue
                nxt.append(w + (d,))
        words.extend(nxt)
        frontier = nxt
        if len(words) > max_nodes:
            raise SizeLimitExceeded(
                f"unravelling exceeds {max_nodes} nodes at depth {depth}"
            )

    node_id = {w: WORD_SEP.join(w) for w in words}
    word_set = set(words)
    domain = [node_id[w] for w in words]

    concepts = {
        a: {node_id[w] for w in words if w[-1] in ext}
        for a, ext in i.concepts.items()
    }
    roles = {}
    for r, pairs in i.roles.items():
        ext = {
            (node_id[(x,)], node_id[(y,)])
            for x, y in pairs
            if x in named and y in named
        }
        for w in words:
            for x, y in pairs:
                if x == w[-1] and w + (y,) in word_set:
                    ext.add((node_id[w], node_id[w + (y,)]))
        roles[r] = ext

    out_names = {}
    for a, e in i.names.items():
        if a in names or e in named:
            out_names[a] = node_id[(e,)]

    interp = Interpretation(domain, concepts, roles, out_names)
    last = {node_id[w]: w[-1] for w in words}
    return UnravelResult(interp, last, names, depth, reachable_only)
