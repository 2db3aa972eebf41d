"""Command-line front end: seeded trajectories, orbit-graph exports,
fixed-point galleries, counting tables and the verification suite.

Exit codes: 0 success, 1 a verification or counting mismatch, 2 usage
error, 3 an exploration limit cut the run short.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from math import isqrt
from pathlib import Path

from .core import Configuration, Model, _moves_with_results
from .orbit import ExplorationLimits, build, export, sink_census, verify
from .structure import enumerate_fixed_points, fixed_point_counts

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_LIMIT = 3


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation, normalized and validated."""

    command: str
    model: Model
    root: Configuration | None
    seed: int
    fmt: str
    limits: ExplorationLimits
    n_max: int
    bfs_cutoff: int
    out: str | None


def evolve(c0: Configuration, model: Model, seed: int) -> list[Configuration]:
    """Fire uniformly random enabled moves until a fixed point.

    The schedule comes from random.Random(seed) (Mersenne Twister, stable
    across platforms) choosing among the enabled moves sorted by column
    index and direction, so a trajectory is reproducible from its seed.
    Termination is guaranteed because every move strictly lowers energy.
    """
    rng = random.Random(seed)
    cur = c0.columns
    trajectory = [c0]
    while True:
        options = _moves_with_results(cur, model)
        if not options:
            return trajectory
        options.sort(key=lambda pair: pair[0].sort_key())
        _, cur = options[rng.randrange(len(options))]
        trajectory.append(Configuration(cur))


def render_ascii(c: Configuration) -> str:
    """Draw the pile as a bottom-aligned grid, '#' grain, '.' empty."""
    rows = []
    for level in range(max(c.columns), 0, -1):
        rows.append("".join("#" if h >= level else "." for h in c.columns))
    return "\n".join(rows)


def render_gallery(shapes: tuple[Configuration, ...], gap: str = "  ") -> str:
    """All shapes side by side on a shared baseline."""
    height = max(max(s.columns) for s in shapes)
    blocks = []
    for s in shapes:
        lines = render_ascii(s).split("\n")
        blocks.append(["." * s.width] * (height - len(lines)) + lines)
    return "\n".join(gap.join(parts) for parts in zip(*blocks))


def count_table(
    n_max: int, bfs_cutoff: int, limits: ExplorationLimits | None = None
) -> tuple[list[tuple[int, int, int, int, int | None]], bool]:
    """Rows (n, single-top, wide-top, closed-form total, search total).

    The search column is filled by an actual sweep for n up to the
    cutoff and left empty beyond it.  The boolean reports whether every
    row is internally consistent: the two family counts sum to the
    closed form, the closed form equals isqrt(n), and the sweep (when
    present) found the same number of sinks.
    """
    rows: list[tuple[int, int, int, int, int | None]] = []
    ok = True
    for n in range(1, n_max + 1):
        census = fixed_point_counts(n)
        searched: int | None = None
        if n <= bfs_cutoff:
            searched = len(
                sink_census(Configuration((n,)), Model.SSPM, limits).sinks
            )
        rows.append((n, census.single_top, census.wide_top, census.total, searched))
        if census.total != isqrt(n) or census.total != census.single_top + census.wide_top:
            ok = False
        if searched is not None and searched != census.total:
            ok = False
    return rows, ok


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _heights(text: str) -> tuple[int, ...]:
    try:
        cols = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected comma-separated heights, like 3,2,1"
        ) from None
    if not cols or any(h < 1 for h in cols):
        raise argparse.ArgumentTypeError("heights must be positive integers")
    return cols


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sandpiles",
        description="Grain-pile rewriting: trajectories, orbit graphs, "
        "fixed points and their counting laws.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--model",
            choices=["spm", "sspm"],
            default="sspm",
            help="rightward-only (spm) or symmetric (sspm) rule set",
        )

    def add_root(p: argparse.ArgumentParser) -> None:
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--n", type=_positive_int, help="start from a single column of n grains")
        group.add_argument("--config", type=_heights, metavar="H1,H2,...", help="start from an explicit shape")

    def add_out(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", help="write to this path instead of standard output")

    p = sub.add_parser("evolve", help="run one seeded trajectory to a fixed point")
    add_model(p)
    add_root(p)
    p.add_argument("--seed", type=_seed, default=0, help="PRNG seed (default 0)")
    p.add_argument("--format", choices=["ascii", "json"], default="ascii")
    add_out(p)

    p = sub.add_parser("graph", help="build the orbit graph and export it")
    add_model(p)
    add_root(p)
    p.add_argument("--format", choices=["dot", "json"], default="json")
    p.add_argument("--max-vertices", type=_positive_int, default=5_000_000)
    add_out(p)

    p = sub.add_parser("fixpoints", help="render all stable shapes for n grains")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--format", choices=["ascii", "json"], default="ascii")
    add_out(p)

    p = sub.add_parser("count", help="tabulate fixed-point counts up to n")
    p.add_argument("--n", type=_positive_int, required=True, help="largest grain count tabulated")
    p.add_argument(
        "--bfs-cutoff",
        type=int,
        default=24,
        help="fill the search column for n up to this bound (default 24)",
    )
    p.add_argument("--format", choices=["ascii", "csv"], default="ascii")
    p.add_argument("--max-vertices", type=_positive_int, default=5_000_000)
    add_out(p)

    p = sub.add_parser("verify", help="build an orbit graph and check its invariants")
    add_model(p)
    add_root(p)
    p.add_argument("--max-vertices", type=_positive_int, default=5_000_000)
    add_out(p)

    return parser


def _run_config(ns: argparse.Namespace) -> RunConfig:
    root = None
    if getattr(ns, "config", None) is not None:
        root = Configuration(ns.config)
    elif getattr(ns, "n", None) is not None and ns.command != "count":
        root = Configuration((ns.n,))
    return RunConfig(
        command=ns.command,
        model=Model(getattr(ns, "model", "sspm")),
        root=root,
        seed=getattr(ns, "seed", 0),
        fmt=getattr(ns, "format", "ascii"),
        limits=ExplorationLimits(max_vertices=getattr(ns, "max_vertices", 5_000_000)),
        n_max=getattr(ns, "n", 0) or 0,
        bfs_cutoff=getattr(ns, "bfs_cutoff", 24),
        out=getattr(ns, "out", None),
    )


def _emit(payload: str | bytes, out: str | None) -> None:
    if isinstance(payload, str):
        payload = payload.encode()
    if out is not None:
        Path(out).write_bytes(payload)
        return
    sys.stdout.buffer.write(payload)
    if not payload.endswith(b"\n"):
        sys.stdout.buffer.write(b"\n")
    sys.stdout.buffer.flush()


def _cmd_evolve(cfg: RunConfig) -> int:
    assert cfg.root is not None
    trajectory = evolve(cfg.root, cfg.model, cfg.seed)
    if cfg.fmt == "json":
        import json

        doc = {
            "model": cfg.model.name,
            "seed": cfg.seed,
            "trajectory": [list(c.columns) for c in trajectory],
        }
        _emit(json.dumps(doc, separators=(",", ":")), cfg.out)
    else:
        _emit("\n".join(str(c) for c in trajectory), cfg.out)
    return EXIT_OK


def _cmd_graph(cfg: RunConfig) -> int:
    assert cfg.root is not None
    g = build(cfg.root, cfg.model, cfg.limits)
    _emit(export(g, cfg.fmt), cfg.out)
    return EXIT_LIMIT if g.truncated else EXIT_OK


def _cmd_fixpoints(cfg: RunConfig) -> int:
    shapes = enumerate_fixed_points(cfg.n_max)
    if cfg.fmt == "json":
        import json

        doc = {
            "n": cfg.n_max,
            "count": len(shapes),
            "shapes": [list(c.columns) for c in shapes],
        }
        _emit(json.dumps(doc, separators=(",", ":")), cfg.out)
    else:
        _emit(render_gallery(shapes), cfg.out)
    return EXIT_OK


def _cmd_count(cfg: RunConfig) -> int:
    rows, ok = count_table(cfg.n_max, cfg.bfs_cutoff, cfg.limits)
    header = ("n", "g1", "g2", "closed", "search")
    if cfg.fmt == "csv":
        lines = [",".join(header)]
        for n, g1, g2, total, searched in rows:
            tail = "" if searched is None else str(searched)
            lines.append(f"{n},{g1},{g2},{total},{tail}")
    else:
        cells = [tuple(str(one) for one in header)]
        for n, g1, g2, total, searched in rows:
            cells.append(
                (str(n), str(g1), str(g2), str(total), "-" if searched is None else str(searched))
            )
        widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
        lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in cells]
    _emit("\n".join(lines), cfg.out)
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_verify(cfg: RunConfig) -> int:
    assert cfg.root is not None
    g = build(cfg.root, cfg.model, cfg.limits)
    report = verify(g)
    _emit(str(report), cfg.out)
    if g.truncated:
        return EXIT_LIMIT
    return EXIT_OK if report.ok else EXIT_MISMATCH


_HANDLERS = {
    "evolve": _cmd_evolve,
    "graph": _cmd_graph,
    "fixpoints": _cmd_fixpoints,
    "count": _cmd_count,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as stop:
        # argparse already printed usage; normalize its code
        return EXIT_USAGE if stop.code not in (0, None) else EXIT_OK
    try:
        cfg = _run_config(ns)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    return _HANDLERS[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
