#!/usr/bin/env python3
"""Sweep the verification harness over shipped reductions.

Prints one tally line per reduction and exits with the worst exit code
seen (0 clean, 2 disagreement, 3 unknown).  Reports can optionally be
written as JSON, one file per reduction.
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import celab  # noqa: F401,E402
from celab.harness import exit_code, verify_reduction  # noqa: E402
from celab.reductions import REDUCTIONS  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--reduction", action="append", default=None,
                    help="restrict to this reduction (repeatable)")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--size", type=int, default=50)
    ap.add_argument("--budget", type=int, default=None,
                    help="stage budget per program (default: harness)")
    ap.add_argument("--reports", metavar="DIR", default=None,
                    help="write one JSON report per reduction here")
    args = ap.parse_args()

    names = args.reduction or sorted(REDUCTIONS)
    for name in names:
        if name not in REDUCTIONS:
            ap.error(f"unknown reduction {name!r}")
    if args.reports:
        os.makedirs(args.reports, exist_ok=True)

    worst = 0
    started = time.monotonic()
    for name in names:
        rep = verify_reduction(name, seed=args.seed, size=args.size,
                               budget=args.budget)
        code = exit_code(rep)
        worst = max(worst, code)
        print(f"{name:22s} cases={rep.cases:3d} agree={rep.agreements:3d}"
              f" disagree={len(rep.disagreements):2d}"
              f" unknown={rep.unknowns:2d} ({rep.elapsed:5.1f}s)")
        if args.reports:
            path = os.path.join(args.reports, f"{name}.json")
            with open(path, "wb") as fh:
                fh.write(rep.to_bytes())
    print(f"total {time.monotonic() - started:.1f}s, exit {worst}")
    return worst


if __name__ == "__main__":
    sys.exit(main())
