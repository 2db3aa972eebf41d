#!/usr/bin/env python3
"""Print every stable shape for a range of grain counts.

Each n gets a header line and an ASCII gallery of its fixed points,
widest pyramid first in lexicographic order.  Useful for spotting how
the doubled step migrates as n walks between squares.
"""

from __future__ import annotations

import argparse
import sys

from sandpiles import enumerate_fixed_points
from sandpiles.cli import render_gallery


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-min", type=int, default=1)
    ap.add_argument("--n-max", type=int, default=32)
    args = ap.parse_args(argv)
    if not 1 <= args.n_min <= args.n_max:
        ap.error("need 1 <= --n-min <= --n-max")

    for n in range(args.n_min, args.n_max + 1):
        shapes = enumerate_fixed_points(n)
        plural = "s" if len(shapes) != 1 else ""
        print(f"n = {n}: {len(shapes)} fixed point{plural}")
        print(render_gallery(shapes))
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
