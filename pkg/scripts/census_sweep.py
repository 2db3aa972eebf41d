#!/usr/bin/env python3
"""Sweep the fixed-point census.

Tabulates the closed-form counts (narrow tops, wide tops, total) for a
range of grain counts and, below a cutoff, cross-checks them against an
exhaustive breadth-first search of the symmetric orbit.  A handy way to
eyeball the square-root staircase and catch any drift between formula
and search.
"""

from __future__ import annotations

import argparse
import sys
import time
from math import isqrt

from sandpiles import Configuration, Model, fixed_point_counts, sink_census


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=64, help="largest grain count")
    ap.add_argument(
        "--bfs-cutoff",
        type=int,
        default=24,
        help="search exhaustively up to this n (default 24)",
    )
    args = ap.parse_args(argv)

    print(f"{'n':>5} {'narrow':>7} {'wide':>5} {'total':>6} {'isqrt':>6} {'search':>7} {'secs':>7}")
    drift = 0
    for n in range(1, args.n_max + 1):
        census = fixed_point_counts(n)
        searched = ""
        secs = ""
        if n <= args.bfs_cutoff:
            t0 = time.perf_counter()
            found = sink_census(Configuration.single_column(n), Model.SSPM)
            secs = f"{time.perf_counter() - t0:7.2f}"
            searched = str(len(found.sinks))
            if len(found.sinks) != census.total:
                drift += 1
        if census.total != isqrt(n):
            drift += 1
        print(
            f"{n:>5} {census.single_top:>7} {census.wide_top:>5}"
            f" {census.total:>6} {isqrt(n):>6} {searched:>7} {secs:>7}"
        )
    if drift:
        print(f"{drift} rows disagree", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
