"""Time-domain integration of the amplitude equations with a weakly singular memory.

In the rotating frame the amplitudes obey

    da1/dt = -i Omega a0 + (i delta - gamma/2) a1 - int_0^t K(t - t') a1(t') dt'
    da0/dt = -i Omega a1

with a0(0) = 1 and a1(0) = 0. The memory integral is evaluated by product integration
(see ``moments``) and time is advanced implicitly, one 2x2 linear solve per step.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import numpy.typing as npt

from bandedge.dynamics.moments import memory_weights
from bandedge.model.errors import BandedgeError, ParameterError, UnsupportedModel
from bandedge.model.params import WEAK_PROBE_THRESHOLD, SystemParams, check_weak_probe
from bandedge.model.reservoir import ReservoirKind, ReservoirModel

logger = logging.getLogger(__name__)


class StepTooLarge(BandedgeError):
    """Raised when h times the fastest rate in the problem exceeds the configured limit."""


class TrajectoryMode(Enum):
    PERTURBATIVE = "perturbative"
    COUPLED = "coupled"


@dataclass(frozen=True)
class SolverConfig:
    """Step, horizon and scheme for the Volterra solver plus inverse-Laplace contour settings.

    ``order`` 1 is backward Euler with a piecewise-constant amplitude under the kernel;
    ``order`` 2 is the trapezoid rule with piecewise-linear interpolation.
    """

    step: float = 0.01
    horizon: float = 50.0
    order: int = 2
    contour_nodes: int = 64
    contour_scale: float = 1.0
    max_step_rate: float = 1.0
    weak_probe_threshold: float = WEAK_PROBE_THRESHOLD

    def __post_init__(self) -> None:
        if not (math.isfinite(self.step) and self.step > 0):
            raise ParameterError(f"step must be > 0 (got {self.step})")
        if not (math.isfinite(self.horizon) and self.horizon >= self.step):
            raise ParameterError(
                f"horizon must be >= step (got horizon={self.horizon}, step={self.step})"
            )
        if self.order not in (1, 2):
            raise ParameterError(f"order must be 1 or 2 (got {self.order})")
        if self.contour_nodes < 16 or self.contour_nodes % 2:
            raise ParameterError(
                f"contour_nodes must be an even number >= 16 (got {self.contour_nodes})"
            )
        if not (math.isfinite(self.contour_scale) and self.contour_scale > 0):
            raise ParameterError(f"contour_scale must be > 0 (got {self.contour_scale})")
        if self.max_step_rate <= 0:
            raise ParameterError(f"max_step_rate must be > 0 (got {self.max_step_rate})")
        if not self.weak_probe_threshold > 0:
            raise ParameterError(
                f"weak_probe_threshold must be > 0 (got {self.weak_probe_threshold})"
            )

    @property
    def steps(self) -> int:
        return int(math.floor(self.horizon / self.step + 1e-9))

    def times(self) -> npt.NDArray[np.float64]:
        return self.step * np.arange(self.steps + 1, dtype=np.float64)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Rotating-frame amplitudes a0(t), a1(t) on a uniform grid starting at t = 0."""

    times: npt.NDArray[np.float64]
    a0: npt.NDArray[np.complex128]
    a1: npt.NDArray[np.complex128]
    mode: TrajectoryMode

    def __len__(self) -> int:
        return len(self.times)

    @property
    def norm(self) -> npt.NDArray[np.float64]:
        """|a0|^2 + |a1|^2; never above 1 in coupled mode."""
        return np.abs(self.a0) ** 2 + np.abs(self.a1) ** 2


def _check_step(model: ReservoirModel, params: SystemParams, config: SolverConfig) -> None:
    h = config.step
    rate = abs(params.delta) + params.gamma / 2 + params.omega_rabi
    if model.kind is ReservoirKind.MARKOVIAN:
        rate += params.gamma1 / 2
    else:
        rate += abs(params.edge_detuning) + params.beta**1.5 / math.sqrt(h)
    if h * rate > config.max_step_rate:
        raise StepTooLarge(
            f"step {h} too large: h * rate = {h * rate:.3g} exceeds {config.max_step_rate}"
        )


def solve_volterra(
    model: ReservoirModel,
    params: SystemParams,
    config: SolverConfig | None = None,
    mode: TrajectoryMode = TrajectoryMode.PERTURBATIVE,
) -> Trajectory:
    config = config or SolverConfig()
    if model.kind is ReservoirKind.ANISOTROPIC:
        raise UnsupportedModel(
            "anisotropic kernel is not integrable at tau = 0; use the transform-domain routines"
        )
    _check_step(model, params, config)
    if mode is TrajectoryMode.PERTURBATIVE:
        check_weak_probe(params, config.weak_probe_threshold)

    h = config.step
    n_steps = config.steps
    times = config.times()
    weights = memory_weights(model, params, h, n_steps)
    coupled = mode is TrajectoryMode.COUPLED
    omega = params.omega_rabi
    rate = 1j * params.delta - params.gamma / 2

    a0 = np.ones(n_steps + 1, dtype=np.complex128)
    a1 = np.zeros(n_steps + 1, dtype=np.complex128)
    # memory integral at each grid time, kept for the trapezoid rule
    memory = np.zeros(n_steps + 1, dtype=np.complex128)

    logger.debug(
        "Solving %s trajectory (%s, order %d) over %d steps of %g",
        model.name,
        mode.value,
        config.order,
        n_steps,
        h,
    )

    if omega == 0:
        return Trajectory(times=times, a0=a0, a1=a1, mode=mode)

    w_const, w_old, w_new = weights.constant, weights.older, weights.newer
    for n in range(1, n_steps + 1):
        if config.order == 1 or n == 1:
            # backward Euler, amplitude held at the later end of each interval
            history = np.dot(w_const[2 : n + 1], a1[n - 1 : 0 : -1])
            rhs1 = a1[n - 1] - h * history
            diag = 1 - h * rate + h * w_const[1]
            if coupled:
                # a0_n = a0_{n-1} - i h Omega a1_n
                rhs1 -= 1j * h * omega * a0[n - 1]
                diag += (h * omega) ** 2
                a1[n] = rhs1 / diag
                a0[n] = a0[n - 1] - 1j * h * omega * a1[n]
            else:
                a1[n] = (rhs1 - 1j * h * omega) / diag
        else:
            half = h / 2
            history = np.dot(w_old[1 : n + 1], a1[n - 1 :: -1]) + np.dot(
                w_new[2 : n + 1], a1[n - 1 : 0 : -1]
            )
            previous = -1j * omega * a0[n - 1] + rate * a1[n - 1] - memory[n - 1]
            rhs1 = a1[n - 1] + half * previous - half * history
            diag = 1 - half * rate + half * w_new[1]
            if coupled:
                # a0_n = a0_{n-1} - i (h/2) Omega (a1_{n-1} + a1_n)
                rhs1 -= 1j * half * omega * (a0[n - 1] - 1j * half * omega * a1[n - 1])
                diag += (half * omega) ** 2
                a1[n] = rhs1 / diag
                a0[n] = a0[n - 1] - 1j * half * omega * (a1[n - 1] + a1[n])
            else:
                a1[n] = (rhs1 - 1j * half * omega) / diag

        if config.order == 2:
            memory[n] = np.dot(w_old[1 : n + 1], a1[n - 1 :: -1]) + np.dot(
                w_new[1 : n + 1], a1[n:0:-1]
            )

    logger.info(
        "Finished %s trajectory: %d steps, |a1(T)| = %.3e", model.name, n_steps, abs(a1[-1])
    )
    return Trajectory(times=times, a0=a0, a1=a1, mode=mode)
