"""Sandpile rewriting at desk scale: the rightward-only grain rule, its
symmetric two-way variant, the orbit graphs they generate from a column
of n grains, and the closed-form structure of their fixed points."""

from .core import (
    Configuration,
    Direction,
    Model,
    Move,
    MoveError,
    apply_move,
    enabled_moves,
    energy,
    frontier_step,
    grains,
    is_fixed_point,
    slope,
    successors,
)
from .orbit import (
    CheckResult,
    ExplorationLimits,
    OrbitGraph,
    SinkCensus,
    TransientStats,
    VerificationReport,
    build,
    export,
    lattice_check,
    sink_census,
    sinks,
    transient_stats,
    verify,
)
from .structure import (
    FixedPointCensus,
    LRSplit,
    TopSet,
    cliffs,
    enumerate_fixed_points,
    fixed_point_counts,
    has_crazed_lr,
    is_crazed,
    lr_splits,
    plateau_spans,
    spm_fixed_point,
    spm_member,
    sspm_member,
    top,
)

__all__ = [
    "Configuration",
    "Direction",
    "Model",
    "Move",
    "MoveError",
    "apply_move",
    "enabled_moves",
    "energy",
    "frontier_step",
    "grains",
    "is_fixed_point",
    "slope",
    "successors",
    "TopSet",
    "LRSplit",
    "FixedPointCensus",
    "top",
    "lr_splits",
    "is_crazed",
    "has_crazed_lr",
    "plateau_spans",
    "cliffs",
    "spm_member",
    "sspm_member",
    "spm_fixed_point",
    "fixed_point_counts",
    "enumerate_fixed_points",
    "OrbitGraph",
    "ExplorationLimits",
    "SinkCensus",
    "TransientStats",
    "CheckResult",
    "VerificationReport",
    "build",
    "sinks",
    "verify",
    "lattice_check",
    "transient_stats",
    "export",
    "sink_census",
]

__version__ = "0.1.0"
