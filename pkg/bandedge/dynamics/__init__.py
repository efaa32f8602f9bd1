"""Time-domain amplitude dynamics and the inverse-Laplace oracle that checks them."""

from bandedge.dynamics.crosscheck import (
    CrossValidationReport,
    cross_validate,
    long_time_oscillation,
)
from bandedge.dynamics.moments import MemoryWeights, g0, g1, memory_weights
from bandedge.dynamics.talbot import (
    BranchCrossing,
    ContourFailure,
    Pole,
    a1_inverse_laplace,
    fixed_talbot,
    shifted_transform,
)
from bandedge.dynamics.volterra import (
    SolverConfig,
    StepTooLarge,
    Trajectory,
    TrajectoryMode,
    solve_volterra,
)

__all__ = [
    "BranchCrossing",
    "ContourFailure",
    "CrossValidationReport",
    "MemoryWeights",
    "Pole",
    "SolverConfig",
    "StepTooLarge",
    "Trajectory",
    "TrajectoryMode",
    "a1_inverse_laplace",
    "cross_validate",
    "fixed_talbot",
    "g0",
    "g1",
    "long_time_oscillation",
    "memory_weights",
    "shifted_transform",
    "solve_volterra",
]
