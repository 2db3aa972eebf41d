#!/usr/bin/env python3
"""Profile orbit graphs from single columns.

For each n the script builds og((n)) under the chosen model and prints
vertex and edge counts, sink count, and the shortest and longest
transients.  Under SPM it also runs the lattice check.  The shortest
transient column is the interesting one: no closed formula for it is
known, so this table is where to stare.
"""

from __future__ import annotations

import argparse
import sys
import time

from sandpiles import (
    Configuration,
    Model,
    build,
    lattice_check,
    sinks,
    transient_stats,
)


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--model", choices=["spm", "sspm"], default="sspm")
    ap.add_argument("--n-max", type=int, default=20, help="largest grain count")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)
    model = Model(args.model)

    lattice_col = " lattice" if model is Model.SPM else ""
    print(f"{'n':>4} {'vertices':>9} {'edges':>9} {'sinks':>6} {'short':>6} {'long':>6} {'secs':>7}{lattice_col}")
    for n in range(1, args.n_max + 1):
        t0 = time.perf_counter()
        g = build(Configuration.single_column(n), model, workers=args.workers)
        stats = transient_stats(g)
        secs = time.perf_counter() - t0
        row = (
            f"{n:>4} {g.vertex_count:>9} {len(g.edges):>9} {len(sinks(g)):>6}"
            f" {stats.shortest:>6} {stats.longest:>6} {secs:>7.2f}"
        )
        if model is Model.SPM:
            row += f" {'yes' if lattice_check(g) else 'NO':>7}"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
