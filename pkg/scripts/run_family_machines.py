#!/usr/bin/env python3
"""Exercise the stage-tracked family machine and the pairwise module.

Runs a batch of randomly generated column-structured families through
the tracked machine (slice markers, agreement pattern, settlement
checkpoint) and a batch of input pairs through the pairwise difference
machine, then prints a summary.  Exits 1 if any run reported issues.
"""

import argparse
import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

import celab  # noqa: F401,E402
from celab.reductions.benchmark import (check_pairwise, gen_family,  # noqa: E402
                                        gen_pair_inputs,
                                        run_tracked_family)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--families", type=int, default=25)
    ap.add_argument("--pairs", type=int, default=20)
    ap.add_argument("--k", type=int, default=4, help="inputs per family")
    ap.add_argument("--checkpoint", type=int, default=30)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    bad = 0
    for run in range(args.families):
        family = gen_family(rng, k=args.k)
        report = run_tracked_family(family, checkpoint=args.checkpoint)
        agree = sum(1 for want, got in report.verdicts.values()
                    if want == got)
        status = "ok" if not report.issues else report.issues[0]
        print(f"family {run:2d}: verdicts {agree}/{len(report.verdicts)}"
              f" agree, {status}")
        bad += bool(report.issues)

    for run in range(args.pairs):
        a, b = gen_pair_inputs(rng)
        issues = check_pairwise(a, b)
        print(f"pair {run:2d}: {'ok' if not issues else issues[0]}")
        bad += bool(issues)

    print(f"{bad} problematic runs out of {args.families + args.pairs}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
