"""Shared oracles for the test suite.

Everything here is deliberately written from the rule definitions with
different mechanics than the package (list surgery with explicit padding
instead of tuple splicing, pair positions instead of run scanning, a
counting recurrence instead of a sweep), so agreement between the two
routes actually means something.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator


def naive_successors(cols: tuple[int, ...], model: str) -> set[tuple[int, ...]]:
    """One-step images straight from the slope definitions."""

    k = len(cols)

    def shift(src: int, dst: int) -> tuple[int, ...]:
        work = [0] + list(cols) + [0]
        work[src + 1] -= 1
        work[dst + 1] += 1
        while work and work[0] == 0:
            work.pop(0)
        while work and work[-1] == 0:
            work.pop()
        return tuple(work)

    out: set[tuple[int, ...]] = set()
    for i in range(k):
        right = cols[i + 1] if i + 1 < k else 0
        if cols[i] - right >= 2:
            out.add(shift(i, i + 1))
        if model == "sspm":
            left = cols[i - 1] if i >= 1 else 0
            if cols[i] - left >= 2:
                out.add(shift(i, i - 1))
    return out


def naive_orbit(
    root: tuple[int, ...], model: str
) -> tuple[set[tuple[int, ...]], set[tuple[tuple[int, ...], tuple[int, ...]]], set[tuple[int, ...]]]:
    """Plain BFS over naive_successors: (vertices, edges, sinks)."""
    seen = {root}
    frontier = [root]
    edges: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    while frontier:
        nxt = []
        for c in frontier:
            for d in naive_successors(c, model):
                edges.add((c, d))
                if d not in seen:
                    seen.add(d)
                    nxt.append(d)
        frontier = nxt
    dead = {c for c in seen if not naive_successors(c, model)}
    return seen, edges, dead


def naive_crazed(cols: tuple[int, ...]) -> bool:
    """Plateau discipline by pair positions: every two consecutive equal
    pairs need a jump of at least 2 strictly between them."""
    pairs = [i for i in range(len(cols) - 1) if cols[i] == cols[i + 1]]
    jumps = {i for i in range(len(cols) - 1) if abs(cols[i] - cols[i + 1]) >= 2}
    for p, q in zip(pairs, pairs[1:]):
        if not any(p < j < q for j in jumps):
            return False
    return True


def compositions(n: int) -> Iterator[tuple[int, ...]]:
    """All ordered sequences of positive integers summing to n, via the
    cut-position encoding (2^(n-1) of them)."""
    for mask in range(1 << (n - 1)):
        parts = []
        run = 1
        for i in range(n - 1):
            if mask >> i & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield tuple(parts)


@lru_cache(maxsize=None)
def _extensions(rem: int, h: int, run: int, cliff_clear: bool) -> int:
    # Count the non-increasing crazed tails that can follow a column of
    # height h holding `rem` more grains.  `run` is the current equal
    # run length, `cliff_clear` whether a plateau may start here.
    if rem == 0:
        return 1
    total = 0
    if run == 1 and cliff_clear and h <= rem:
        total += _extensions(rem - h, h, 2, False)
    for h2 in range(min(h - 1, rem), 0, -1):
        total += _extensions(rem - h2, h2, 1, cliff_clear or (h - h2 >= 2))
    return total


def spm_orbit_size(n: int) -> int:
    """How many shapes the rightward-only rule can reach from (n): counts
    non-increasing crazed shapes of n grains by a recurrence, with no
    dynamics involved."""
    return sum(_extensions(n - h, h, 1, True) for h in range(1, n + 1))
