#!/usr/bin/env python3
"""Render every classification diagram to DOT and JSON files.

Output is deterministic, so re-running over an existing directory is a
no-op unless the diagrams themselves changed.
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from celab.hierarchy import DIAGRAMS, render  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="diagrams", metavar="DIR")
    args = ap.parse_args()

    os.makedirs(args.out, exist_ok=True)
    for d in DIAGRAMS:
        for fmt in ("dot", "json"):
            path = os.path.join(args.out, f"fig{d.number}.{fmt}")
            with open(path, "w") as fh:
                fh.write(render(d.number, fmt))
            print(f"wrote {path} ({d.name})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
