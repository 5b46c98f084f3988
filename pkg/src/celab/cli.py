"""Command-line surface: list, enumerate, reduce, verify, hierarchy, corpus.

Exit codes: 0 success, 2 verification disagreement, 3 unknown verdicts
remain, 4 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import register_all_combinators
from .harness import (DEFAULT_WINDOW, corpus_from_json, corpus_to_json,
                      default_budget, exit_code, gen_corpus, verify_reduction)
from .hierarchy import BY_NUMBER, render, render_all
from .programs import Combinator, Evaluator
from .reductions import REDUCTIONS
from .relations import RELATIONS
from .serialization import ParseError, term_from_sexpr, term_to_sexpr

EXIT_OK = 0
EXIT_DISAGREEMENT = 2
EXIT_UNKNOWN = 3
EXIT_INPUT = 4


class InputError(Exception):
    pass


def _write(text: str, out: str) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_list(args) -> int:
    print("relations:")
    for rid in sorted(RELATIONS):
        rel = RELATIONS[rid]
        kind = "decidable" if rel.decide is not None else "node-only"
        level = rel.level or "-"
        print(f"  {rid:14s} {kind:10s} {level:12s} {rel.doc}")
    print("reductions:")
    for name in sorted(REDUCTIONS):
        red = REDUCTIONS[name]
        print(f"  {name:22s} {red.source:12s} -> {red.target:12s} {red.doc}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    try:
        term = term_from_sexpr(args.term)
    except ParseError as exc:
        raise InputError(str(exc))
    ev = Evaluator()
    elems = sorted(ev.approx(term, args.stage))
    print("{" + ", ".join(str(x) for x in elems) + "}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    red = REDUCTIONS.get(args.reduction)
    if red is None:
        raise InputError(f"no reduction named {args.reduction!r}")
    if not red.combinator:
        raise InputError(
            f"{args.reduction} has no single-combinator program form")
    try:
        term = term_from_sexpr(args.term)
    except ParseError as exc:
        raise InputError(str(exc))
    out = Combinator(red.combinator, (term,), ())
    print(term_to_sexpr(out))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.reduction not in REDUCTIONS:
        raise InputError(f"no reduction named {args.reduction!r}")
    corpus = None
    if args.corpus:
        try:
            with open(args.corpus) as fh:
                corpus = corpus_from_json(json.load(fh))
        except (OSError, ValueError, KeyError, ParseError) as exc:
            raise InputError(f"bad corpus file: {exc}")
    report = verify_reduction(
        args.reduction, corpus=corpus, seed=args.seed, size=args.size,
        budget=args.budget, window=args.window)
    _write(report.to_bytes().decode() + "\n", args.out)
    return exit_code(report)


def cmd_hierarchy(args) -> int:
    if args.figure is not None and args.figure not in BY_NUMBER:
        raise InputError(f"no diagram numbered {args.figure}")
    if args.figure is None:
        text = render_all(args.format)
    else:
        text = render(args.figure, args.format)
    _write(text, args.out)
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.infile:
        try:
            with open(args.infile) as fh:
                cases = corpus_from_json(json.load(fh))
        except (OSError, ValueError, KeyError, ParseError) as exc:
            raise InputError(f"bad corpus file: {exc}")
        eq = sum(1 for c in cases if c.expected)
        print(f"{len(cases)} cases ({eq} equivalent,"
              f" {len(cases) - eq} inequivalent), all verdicts re-checked")
        return EXIT_OK
    if not args.reduction or args.reduction not in REDUCTIONS:
        raise InputError(f"no reduction named {args.reduction!r}")
    cases = gen_corpus(args.reduction, args.seed, args.size)
    data = corpus_to_json(args.reduction, args.seed, cases)
    _write(json.dumps(data, sort_keys=True, indent=2) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="celab",
        description="computable-reducibility laboratory")
    sub = parser.add_subparsers(dest="verb", required=True)

    sub.add_parser("list", help="print relations and reductions")

    p = sub.add_parser("enumerate", help="print a stage approximation")
    p.add_argument("--term", required=True, help="program term s-expression")
    p.add_argument("--stage", type=int, default=0)

    p = sub.add_parser("reduce", help="apply a construction to a term")
    p.add_argument("--reduction", required=True)
    p.add_argument("--term", required=True)

    p = sub.add_parser("verify", help="run a reduction over a corpus")
    p.add_argument("--reduction", required=True)
    p.add_argument("--corpus", default="", help="corpus JSON file")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--size", type=int, default=50)
    p.add_argument("--budget", type=int, default=default_budget())
    p.add_argument("--window", type=int, default=None,
                   help=f"observation window (reduction default,"
                        f" up to {DEFAULT_WINDOW})")
    p.add_argument("--out", default="")

    p = sub.add_parser("hierarchy", help="emit the reducibility diagrams")
    p.add_argument("--format", choices=("json", "dot"), default="dot")
    p.add_argument("--figure", type=int, default=None)
    p.add_argument("--out", default="")

    p = sub.add_parser("corpus", help="write or re-check a corpus file")
    p.add_argument("--reduction", default="")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--size", type=int, default=50)
    p.add_argument("--in", dest="infile", default="")
    p.add_argument("--out", default="")
    return parser


COMMANDS = {
    "list": cmd_list,
    "enumerate": cmd_enumerate,
    "reduce": cmd_reduce,
    "verify": cmd_verify,
    "hierarchy": cmd_hierarchy,
    "corpus": cmd_corpus,
}


def main(argv=None) -> int:
    register_all_combinators()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return COMMANDS[args.verb](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
