"""Command-line surface: every pipeline stage as a subcommand.

Exit codes: 0 = computed (or positive verdict), 1 = negative verdict where
the command has one, 2 = input error, 3 = resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .engine import brute_force_entails, entails, verdict_to_obj
from .errors import (
    DlqError,
    NotTreeShaped,
    ParseError,
    ResourceLimitExceeded,
)
from .forkrew import fork_rewritings, maximal_fork_rewriting
from .rollup import match_concept
from .satcheck import is_satisfiable
from .semantics import (
    failing_axioms,
    find_matches,
    interpretation_from_json,
    interpretation_to_obj,
    is_model,
)
from .splitting import enumerate_splittings, splitting_to_obj
from .spoiler import enumerate_super_spoilers
from .syntax import (
    axiom_key,
    axiom_to_text,
    canonicalize_cq,
    concept_to_text,
    cq_to_text,
    parse_cq,
    parse_kb,
    parse_ucq,
)
from .unravel import forward_unravel


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _read(path) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _names_list(text):
    names = [n.strip() for n in text.split(",") if n.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated name list")
    return names


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dlq",
        description="Query entailment toolkit for ALC with role conjunctions.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get("DLQ_THREADS", "1")),
        help="worker cap (informational; execution is deterministic)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    p = add("sat", "knowledge base satisfiability (exit 1 when unsatisfiable)")
    p.add_argument("kb")
    p.add_argument("--mode", choices=("finite", "unrestricted"), default="unrestricted")
    p.add_argument("--max-nodes", type=int, default=20000)
    p.add_argument("--max-seconds", type=float, default=None)

    p = add("entails", "UCQ entailment (exit 1 when not entailed)")
    p.add_argument("kb")
    p.add_argument("query")
    p.add_argument("--mode", choices=("finite", "unrestricted"), default="unrestricted")
    p.add_argument("--countermodel", action="store_true", help="attach a bounded countermodel")
    p.add_argument("--max-domain", type=int, default=4)
    p.add_argument("--max-nodes", type=int, default=20000)
    p.add_argument("--max-seconds", type=float, default=None)

    p = add("rollup", "rolled-up concept of a forward-tree-shaped query")
    p.add_argument("query")

    p = add("forkrew", "fork rewritings of a query")
    p.add_argument("query")
    p.add_argument("--maximal", action="store_true", help="print only the maximal rewriting")

    p = add("splittings", "all splittings of a query for a name set")
    p.add_argument("query")
    p.add_argument("--names", type=_names_list, required=True)

    p = add("spoilers", "all super-spoilers of a query for a name set")
    p.add_argument("query")
    p.add_argument("--names", type=_names_list, required=True)

    p = add("unravel", "rooted forward unravelling of an interpretation")
    p.add_argument("model")
    p.add_argument("--names", type=_names_list, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--reachable-only", action="store_true")
    p.add_argument("--max-nodes", type=int, default=50000)

    p = add("modelcheck", "check an interpretation against a knowledge base (exit 1 when not a model)")
    p.add_argument("kb")
    p.add_argument("model")

    p = add("match", "matches of a conjunctive query on an interpretation (exit 1 when none)")
    p.add_argument("model")
    p.add_argument("query")

    return parser


def _cmd_sat(args) -> int:
    kb = parse_kb(_read(args.kb))
    verdict = is_satisfiable(kb, max_nodes=args.max_nodes, max_seconds=args.max_seconds)
    if args.json:
        print(_dump({"satisfiable": verdict, "mode": args.mode}))
    else:
        print("satisfiable" if verdict else "unsatisfiable")
    return 0 if verdict else 1


def _cmd_entails(args) -> int:
    kb = parse_kb(_read(args.kb))
    query = parse_ucq(_read(args.query))
    verdict = entails(
        kb,
        query,
        mode=args.mode,
        extract_countermodel=args.countermodel,
        max_domain=args.max_domain,
        max_nodes=args.max_nodes,
        max_seconds=args.max_seconds,
    )
    if args.json:
        print(_dump(verdict_to_obj(verdict)))
    else:
        print("entailed" if verdict.entailed else "not entailed")
        print(f"reason: {verdict.reason}")
        if verdict.selection is not None:
            for idx, spoiler in enumerate(verdict.selection, start=1):
                print(f"spoiler {idx}: " + "; ".join(axiom_to_text(a) for a in spoiler))
        if verdict.countermodel is not None:
            print("countermodel: " + _dump(interpretation_to_obj(verdict.countermodel)))
    return 0 if verdict.entailed else 1


def _cmd_rollup(args) -> int:
    q = parse_cq(_read(args.query))
    concept = match_concept(q)
    if args.json:
        print(_dump({"concept": concept_to_text(concept)}))
    else:
        print(concept_to_text(concept))
    return 0


def _cmd_forkrew(args) -> int:
    q = parse_cq(_read(args.query))
    if args.maximal:
        out = [cq_to_text(maximal_fork_rewriting(q))]
    else:
        out = sorted(cq_to_text(r) for r in fork_rewritings(q))
    if args.json:
        print(_dump({"rewritings": out}))
    else:
        for line in out:
            print(line)
    return 0


def _cmd_splittings(args) -> int:
    q = canonicalize_cq(parse_cq(_read(args.query)))
    objs = [splitting_to_obj(s, q) for s in enumerate_splittings(q, args.names)]
    if args.json:
        print(_dump({"query": cq_to_text(q), "splittings": objs}))
    else:
        for obj in objs:
            print(_dump(obj))
    return 0


def _cmd_spoilers(args) -> int:
    q = parse_cq(_read(args.query))
    spoilers = enumerate_super_spoilers(q, args.names)
    rendered = [
        [axiom_to_text(a) for a in sorted(s, key=axiom_key)] for s in spoilers
    ]
    if args.json:
        print(_dump({"super_spoilers": rendered}))
    else:
        for idx, axioms in enumerate(rendered, start=1):
            print(f"super-spoiler {idx}:")
            for text in axioms:
                print(f"  {text}.")
    return 0


def _cmd_unravel(args) -> int:
    base = interpretation_from_json(_read(args.model))
    result = forward_unravel(
        base,
        args.names,
        args.depth,
        reachable_only=args.reachable_only,
        max_nodes=args.max_nodes,
    )
    obj = {
        "interpretation": interpretation_to_obj(result.interpretation),
        "last_letter": {k: result.last_letter[k] for k in sorted(result.last_letter)},
        "depth": result.depth,
        "reachable_only": result.reachable_only,
    }
    if args.json:
        print(_dump(obj))
    else:
        print(_dump(obj["interpretation"]))
    return 0


def _cmd_modelcheck(args) -> int:
    kb = parse_kb(_read(args.kb))
    interp = interpretation_from_json(_read(args.model))
    try:
        failing = failing_axioms(interp, kb)
    except DlqError as exc:
        raise exc
    ok = not failing
    if args.json:
        print(_dump({"model": ok, "failing": [axiom_to_text(a) for a in failing]}))
    else:
        print("model" if ok else "not a model")
        for a in failing:
            print(f"fails: {axiom_to_text(a)}.")
    return 0 if ok else 1


def _cmd_match(args) -> int:
    interp = interpretation_from_json(_read(args.model))
    q = parse_cq(_read(args.query))
    matches = [
        {f"?{v}": m[v] for v in sorted(m)} for m in find_matches(interp, q)
    ]
    if args.json:
        print(_dump({"matches": matches}))
    else:
        for m in matches:
            print(_dump(m))
    return 0 if matches else 1


_COMMANDS = {
    "sat": _cmd_sat,
    "entails": _cmd_entails,
    "rollup": _cmd_rollup,
    "forkrew": _cmd_forkrew,
    "splittings": _cmd_splittings,
    "spoilers": _cmd_spoilers,
    "unravel": _cmd_unravel,
    "modelcheck": _cmd_modelcheck,
    "match": _cmd_match,
}


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.command](args)
    except ResourceLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NotTreeShaped as exc:
        print(f"not forward-tree-shaped: {exc}", file=sys.stderr)
        return 1
    except (DlqError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
