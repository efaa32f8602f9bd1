"""Agreement between the Volterra solver and the inverse-Laplace oracle."""

import logging
from dataclasses import dataclass

import numpy as np

from bandedge.dynamics.talbot import a1_inverse_laplace
from bandedge.dynamics.volterra import SolverConfig, Trajectory, TrajectoryMode, solve_volterra
from bandedge.model.params import SystemParams
from bandedge.model.reservoir import ReservoirModel
from bandedge.spectra.susceptibility import a1_steady

logger = logging.getLogger(__name__)

# spread of |a1| in the last quarter, relative to its size, that counts as oscillating
OSCILLATION_THRESHOLD = 1e-3


@dataclass(frozen=True, eq=False)
class CrossValidationReport:
    """``steady_state_error`` is None when gamma = 0 and no steady state exists."""

    max_pointwise_error: float
    steady_state_error: float | None
    long_time_oscillation: bool
    trajectory: Trajectory


def long_time_oscillation(trajectory: Trajectory) -> bool:
    """Whether |a1| keeps oscillating over the last quarter of the horizon.

    Compares the spread of |a1| in the last quarter with the quarter before it; a decaying
    transient shrinks between the two, a persistent oscillation does not. Monotonic |a1|
    (steady growth or decay) never counts.
    """
    magnitude = np.abs(trajectory.a1)
    n = len(magnitude)
    if n < 8:
        return False
    last = magnitude[3 * n // 4 :]
    before = magnitude[n // 2 : 3 * n // 4]
    spread_last = float(np.ptp(last))
    spread_before = float(np.ptp(before))
    size = float(np.max(last)) or 1.0
    if spread_last <= OSCILLATION_THRESHOLD * size:
        return False
    steps = np.diff(last)
    if np.all(steps >= 0) or np.all(steps <= 0):
        return False
    return spread_last >= 0.5 * spread_before


def cross_validate(
    model: ReservoirModel, params: SystemParams, config: SolverConfig | None = None
) -> CrossValidationReport:
    config = config or SolverConfig()
    trajectory = solve_volterra(model, params, config, TrajectoryMode.PERTURBATIVE)
    oracle = a1_inverse_laplace(model, params, config, trajectory.times[1:])
    max_error = float(np.max(np.abs(trajectory.a1[1:] - oracle)))

    steady_error: float | None = None
    if params.gamma > 0:
        steady_error = abs(complex(trajectory.a1[-1]) - a1_steady(model, params))
    oscillating = long_time_oscillation(trajectory)

    logger.info(
        "Cross-validation (%s): max pointwise %.3e, steady state %s%s",
        model.name,
        max_error,
        "n/a" if steady_error is None else f"{steady_error:.3e}",
        ", long-time oscillation" if oscillating else "",
    )
    return CrossValidationReport(
        max_pointwise_error=max_error,
        steady_state_error=steady_error,
        long_time_oscillation=oscillating,
        trajectory=trajectory,
    )
