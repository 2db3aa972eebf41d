"""Column configurations and the grain-moving rules acting on them.

A configuration is a finite sequence of positive column heights, identified
up to horizontal translation. Two local rules rewrite it:

* the rightward rule takes one grain from column i and drops it on column
  i+1 whenever the drop ``c[i] - c[i+1]`` is at least 2, where a missing
  right neighbour counts as height 0 (so the pile may grow a new column at
  its right edge);
* the leftward rule is the mirror image, and may grow a new column at the
  left edge.

``Model.SPM`` enables only the rightward rule; ``Model.SSPM`` enables both.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator


class Model(Enum):
    """Which local rules are enabled."""

    SPM = "spm"
    SSPM = "sspm"

    def __str__(self) -> str:
        return self.value


class Direction(str, Enum):
    RIGHT = "right"
    LEFT = "left"

    def __str__(self) -> str:
        return self.value


class MoveError(ValueError):
    """Raised when a move is applied where its slope condition fails."""


@dataclass(frozen=True, order=True)
class Configuration:
    """An immutable pile shape: positive column heights, left to right.

    Heights are stored trimmed, so translated copies of the same shape
    compare equal.  Zero columns are accepted only at the edges of the
    input (where trimming removes them); an interior zero would describe
    a disconnected pile and is rejected.
    """

    columns: tuple[int, ...]

    def __post_init__(self) -> None:
        cols = tuple(self.columns)
        lo, hi = 0, len(cols)
        while lo < hi and cols[lo] == 0:
            lo += 1
        while hi > lo and cols[hi - 1] == 0:
            hi -= 1
        cols = cols[lo:hi]
        if not cols:
            raise ValueError("a configuration needs at least one grain")
        if min(cols) < 1:
            raise ValueError(f"interior zero or negative height in {cols!r}")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def single_column(cls, n: int) -> "Configuration":
        """The column of n grains that most orbit explorations start from."""
        return cls((n,))

    @property
    def width(self) -> int:
        return len(self.columns)

    @property
    def grains(self) -> int:
        return sum(self.columns)

    def height(self, i: int) -> int:
        """Height of column i (1-based); 0 just outside the pile."""
        if i == 0 or i == len(self.columns) + 1:
            return 0
        if not 1 <= i <= len(self.columns):
            raise IndexError(f"column {i} out of range 1..{len(self.columns)}")
        return self.columns[i - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.columns)

    def __str__(self) -> str:
        return ",".join(str(h) for h in self.columns)


@dataclass(frozen=True)
class Move:
    """One grain displacement: the rule fired at a 1-based column index."""

    direction: Direction
    index: int

    def sort_key(self) -> tuple[int, str]:
        return (self.index, self.direction.value)

    def __str__(self) -> str:
        return f"{self.direction.value}@{self.index}"


def grains(c: Configuration) -> int:
    """Total number of grains; every move conserves it."""
    return c.grains


def slope(c: Configuration, i: int, direction: Direction) -> int:
    """Signed drop seen by the rule at column i in the given direction.

    Rightward: c_i minus the height of the right neighbour (0 past the
    edge).  Leftward: c_i minus the left neighbour.  The move at (i,
    direction) is enabled exactly when this is at least 2.
    """
    if not 1 <= i <= c.width:
        raise IndexError(f"column {i} out of range 1..{c.width}")
    here = c.columns[i - 1]
    if direction is Direction.RIGHT:
        return here - (c.columns[i] if i < c.width else 0)
    return here - (c.columns[i - 2] if i > 1 else 0)


def _directions(model: Model) -> tuple[Direction, ...]:
    if model is Model.SPM:
        return (Direction.RIGHT,)
    return (Direction.RIGHT, Direction.LEFT)


def enabled_moves(c: Configuration, model: Model) -> frozenset[Move]:
    """All moves whose slope condition holds at c under the model."""
    cols = c.columns
    k = len(cols)
    found = []
    for i in range(k):
        if cols[i] - (cols[i + 1] if i + 1 < k else 0) >= 2:
            found.append(Move(Direction.RIGHT, i + 1))
        if model is Model.SSPM and cols[i] - (cols[i - 1] if i > 0 else 0) >= 2:
            found.append(Move(Direction.LEFT, i + 1))
    return frozenset(found)


def apply_move(c: Configuration, move: Move) -> Configuration:
    """Fire one move and return the rewritten configuration.

    Raises MoveError when the slope at the move's column is below 2;
    applying a disabled move is a rule violation, never a no-op.  Which
    directions are available at all is decided where moves are generated
    (enabled_moves), not here.
    """
    if slope(c, move.index, move.direction) < 2:
        raise MoveError(f"{move} is not enabled on {c}")
    cols = list(c.columns)
    i = move.index - 1
    cols[i] -= 1
    if move.direction is Direction.RIGHT:
        if i + 1 < len(cols):
            cols[i + 1] += 1
        else:
            cols.append(1)
    else:
        if i > 0:
            cols[i - 1] += 1
        else:
            cols.insert(0, 1)
    return Configuration(tuple(cols))


def _succ_tuples(cols: tuple[int, ...], model: Model) -> set[tuple[int, ...]]:
    # Raw-tuple successor kernel shared by the orbit builders; every result
    # is already trimmed because a fired column keeps height >= 1.
    k = len(cols)
    sspm = model is Model.SSPM
    out: set[tuple[int, ...]] = set()
    for i in range(k):
        if cols[i] - (cols[i + 1] if i + 1 < k else 0) >= 2:
            if i + 1 < k:
                out.add(cols[:i] + (cols[i] - 1, cols[i + 1] + 1) + cols[i + 2 :])
            else:
                out.add(cols[:i] + (cols[i] - 1, 1))
        if sspm and cols[i] - (cols[i - 1] if i > 0 else 0) >= 2:
            if i > 0:
                out.add(cols[: i - 1] + (cols[i - 1] + 1, cols[i] - 1) + cols[i + 1 :])
            else:
                out.add((1, cols[0] - 1) + cols[1:])
    return out


def _moves_with_results(
    cols: tuple[int, ...], model: Model
) -> list[tuple[Move, tuple[int, ...]]]:
    # Like _succ_tuples but keeps the move that produced each child, for
    # edge labelling and seeded trajectories.
    k = len(cols)
    sspm = model is Model.SSPM
    out: list[tuple[Move, tuple[int, ...]]] = []
    for i in range(k):
        if cols[i] - (cols[i + 1] if i + 1 < k else 0) >= 2:
            if i + 1 < k:
                child = cols[:i] + (cols[i] - 1, cols[i + 1] + 1) + cols[i + 2 :]
            else:
                child = cols[:i] + (cols[i] - 1, 1)
            out.append((Move(Direction.RIGHT, i + 1), child))
        if sspm and cols[i] - (cols[i - 1] if i > 0 else 0) >= 2:
            if i > 0:
                child = cols[: i - 1] + (cols[i - 1] + 1, cols[i] - 1) + cols[i + 1 :]
            else:
                child = (1, cols[0] - 1) + cols[1:]
            out.append((Move(Direction.LEFT, i + 1), child))
    return out


def _is_fixed_tuple(cols: tuple[int, ...], model: Model) -> bool:
    k = len(cols)
    for i in range(k):
        if cols[i] - (cols[i + 1] if i + 1 < k else 0) >= 2:
            return False
        if model is Model.SSPM and cols[i] - (cols[i - 1] if i > 0 else 0) >= 2:
            return False
    return True


def successors(c: Configuration, model: Model) -> frozenset[Configuration]:
    """The deduplicated one-step images of c.

    Distinct moves may collide on the same shape (on (2) the left and
    right rules both give (1,1)), so this can be smaller than the set of
    enabled moves.
    """
    return frozenset(Configuration(t) for t in _succ_tuples(c.columns, model))


def frontier_step(
    configs: Iterable[Configuration], model: Model
) -> frozenset[Configuration]:
    """One synchronous sweep: the union of successors over a whole set.

    A set of fixed points (or an empty set) maps to the empty set.
    """
    out: set[tuple[int, ...]] = set()
    for c in configs:
        out |= _succ_tuples(c.columns, model)
    return frozenset(Configuration(t) for t in out)


def energy(c: Configuration) -> int:
    """Sum of m(m+1)/2 over column heights m.

    Strictly decreases along every move: the fired column loses height h
    (paying h) while its neighbour climbs to at most h-1 (gaining at most
    h-1).  Among shapes with n grains the single column is the unique
    maximum, at n(n+1)/2.
    """
    return sum(m * (m + 1) // 2 for m in c.columns)


def is_fixed_point(c: Configuration, model: Model) -> bool:
    """True when no move is enabled on c under the model."""
    return _is_fixed_tuple(c.columns, model)
