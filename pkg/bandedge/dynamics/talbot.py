"""Numerical inverse Laplace transform of the perturbative amplitude A1(s).

A1(s) = Omega / (s [delta + i gamma/2 + i K~(s) + i s]). For the band-gap kernel the
inversion runs in the frame p = s + i(delta_g - delta), where the only branch point
sits at p = 0 with its cut along the negative real axis, so

    a1(t) = e^(-i (delta_g - delta) t) L^-1[G](t),    G(p) = A1(p - i(delta_g - delta)).

Poles of G on the principal sheet are subtracted analytically; the smooth remainder is
inverted on a fixed Talbot contour traversed over theta in (-pi, pi), since a1 is complex.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from bandedge.dynamics.volterra import SolverConfig
from bandedge.model.branch import principal_sqrt
from bandedge.model.errors import BandedgeError, ParameterError, UnsupportedModel
from bandedge.model.params import SystemParams, check_weak_probe
from bandedge.model.reservoir import EIGHTH_TURN, ReservoirKind, ReservoirModel

logger = logging.getLogger(__name__)

# nodes closer than this to a subtracted pole trigger a contour rescale
POLE_CLEARANCE = 1e-6
RESCALE_FACTOR = 1.25
MAX_RESCALES = 10
# |Re z| below this puts a root of the pole equation on the branch cut
CUT_TOLERANCE = 1e-12

Transform = Callable[[npt.NDArray[np.complex128]], npt.NDArray[np.complex128]]


class ContourFailure(BandedgeError):
    """Raised when the contour node sum is not finite."""


class BranchCrossing(BandedgeError):
    """Raised when the contour base does not lie to the right of the branch point."""


@dataclass(frozen=True)
class Pole:
    """Principal part residue / (p - location)^order of a transform."""

    location: complex
    residue: complex
    order: int = 1

    def term(self, p: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        return self.residue / (p - self.location) ** self.order

    def inverse(self, times: npt.NDArray[np.float64]) -> npt.NDArray[np.complex128]:
        scale = times ** (self.order - 1) / math.factorial(self.order - 1)
        return self.residue * scale * np.exp(self.location * times)


@dataclass(frozen=True)
class ShiftedTransform:
    """G(p) with its principal-sheet poles; a1(t) = e^(-i shift t) L^-1[G](t)."""

    params: SystemParams
    model: ReservoirModel
    shift: float
    poles: tuple[Pole, ...]

    def __call__(self, p: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        prm = self.params
        if self.model.kind is ReservoirKind.MARKOVIAN:
            denominator = prm.delta + 1j * (prm.gamma + prm.gamma1) / 2 + 1j * p
            return prm.omega_rabi / (p * denominator)
        c = prm.beta**1.5 * np.conj(EIGHTH_TURN)
        denominator = prm.delta_g + 1j * prm.gamma / 2 + 1j * c / principal_sqrt(p) + 1j * p
        return prm.omega_rabi / ((p - 1j * self.shift) * denominator)

    def remainder(self, p: npt.NDArray[np.complex128]) -> npt.NDArray[np.complex128]:
        value = self(p)
        for pole in self.poles:
            value = value - pole.term(p)
        return value


def _isotropic_poles(params: SystemParams, shift: float) -> list[Pole]:
    """Zeros of the bracket with z = sqrt(p): z^3 + (gamma/2 - i delta_g) z + c = 0."""
    c = params.beta**1.5 * complex(np.conj(EIGHTH_TURN))
    omega = params.omega_rabi
    poles: list[Pole] = []
    for z in np.roots([1.0, 0.0, params.gamma / 2 - 1j * params.delta_g, c]):
        z = complex(z)
        if abs(z.real) <= CUT_TOLERANCE * max(1.0, abs(z)):
            logger.warning("Pole at p = %s lies on the branch cut; skipped", z * z)
            continue
        if z.real < 0:
            continue
        location = z * z
        derivative = 1j * (1 - c / (2 * z**3))
        poles.append(Pole(location, omega / ((location - 1j * shift) * derivative)))
    return poles


def shifted_transform(model: ReservoirModel, params: SystemParams) -> ShiftedTransform:
    match model.kind:
        case ReservoirKind.ANISOTROPIC:
            raise UnsupportedModel("inverse Laplace oracle supports the iso and markov models")
        case ReservoirKind.MARKOVIAN:
            rate = 1j * params.delta - (params.gamma + params.gamma1) / 2
            omega = params.omega_rabi
            if rate == 0:
                # no decay and no detuning: G = -i Omega / p^2, so a1 = -i Omega t
                poles = [Pole(0j, -1j * omega, order=2)]
            else:
                poles = [Pole(0j, 1j * omega / rate), Pole(rate, -1j * omega / rate)]
            return ShiftedTransform(params, model, 0.0, tuple(poles))
        case ReservoirKind.ISOTROPIC:
            shift = params.edge_detuning
            poles = _isotropic_poles(params, shift)
            if shift != 0:
                # residue at p = i shift is the steady amplitude Omega / D(i shift)
                c = params.beta**1.5 * complex(np.conj(EIGHTH_TURN))
                bracket = (
                    params.delta
                    + 1j * params.gamma / 2
                    + 1j * c / complex(principal_sqrt(1j * shift))
                )
                if bracket == 0:
                    raise ContourFailure("steady-state pole coincides with a bound-state pole")
                poles.append(Pole(1j * shift, params.omega_rabi / bracket))
            return ShiftedTransform(params, model, shift, tuple(poles))
    raise AssertionError(model.kind)


def _contour_angles(nodes: int) -> tuple[npt.NDArray[np.float64], ...]:
    """theta_k = k pi / n for |k| < n, with theta cot(theta) and theta csc^2 - cot at each."""
    n = nodes // 2
    k = np.arange(-(n - 1), n, dtype=np.float64)
    theta = k * math.pi / n
    alpha = np.ones_like(theta)
    sigma = np.zeros_like(theta)
    nz = k != 0
    cot = np.cos(theta[nz]) / np.sin(theta[nz])
    alpha[nz] = theta[nz] * cot
    sigma[nz] = theta[nz] / np.sin(theta[nz]) ** 2 - cot
    return theta, alpha, sigma


def fixed_talbot(
    transform: Transform,
    times: npt.ArrayLike,
    nodes: int = 64,
    scale: float = 1.0,
    origin: float = 0.0,
    branch_point: float = 0.0,
    avoid: tuple[complex, ...] = (),
    auto_shift: bool = False,
) -> npt.NDArray[np.complex128]:
    """Invert ``transform`` at each t > 0 on p = origin + r theta (cot theta + i).

    f(t) = e^(origin t) (r / 2n) sum_k e^(t (p_k - origin)) F(p_k) (1 + i sigma_k) with
    r = scale 2n / (5 t) and n = nodes / 2. ``transform`` must be analytic to the right
    of ``branch_point`` apart from points listed in ``avoid``, which the nodes keep clear
    of by enlarging r. A contour whose base does not clear the branch point raises
    BranchCrossing, or with ``auto_shift`` is moved to start at the branch point.
    """
    times = np.atleast_1d(np.asarray(times, dtype=np.float64))
    if np.any(times <= 0):
        raise ParameterError("inverse Laplace times must be > 0")
    n = nodes // 2
    theta, alpha, sigma = _contour_angles(nodes)
    radius = scale * 2 * n / (5 * times)
    if np.any(origin + radius <= branch_point):
        message = f"contour base {origin} + r does not clear the branch point at {branch_point}"
        if not auto_shift:
            raise BranchCrossing(message)
        logger.info("%s; shifting the contour origin to %g", message, branch_point)
        origin = branch_point

    shape = alpha + 1j * theta
    poles = np.asarray(avoid, dtype=np.complex128)
    for _ in range(MAX_RESCALES):
        if poles.size == 0:
            break
        p = origin + radius[:, None] * shape[None, :]
        clearance = np.min(np.abs(p[:, :, None] - poles[None, None, :]), axis=(1, 2))
        close = clearance < POLE_CLEARANCE * np.maximum(1.0, np.abs(poles).max())
        if not np.any(close):
            break
        logger.info("Rescaling contour at %d time(s) away from a subtracted pole", close.sum())
        radius = np.where(close, radius * RESCALE_FACTOR, radius)

    p = origin + radius[:, None] * shape[None, :]
    terms = np.exp(times[:, None] * (p - origin)) * transform(p) * (1 + 1j * sigma[None, :])
    result = np.exp(origin * times) * radius / (2 * n) * terms.sum(axis=1)
    if not np.all(np.isfinite(result)):
        raise ContourFailure("fixed Talbot node sum is not finite")
    return result


def a1_inverse_laplace(
    model: ReservoirModel,
    params: SystemParams,
    config: SolverConfig | None = None,
    t_grid: npt.ArrayLike | None = None,
) -> npt.NDArray[np.complex128]:
    """Perturbative a1(t) at each t > 0 in ``t_grid``, in the Volterra solver's frame.

    Defaults to the solver grid of ``config`` without t = 0.
    """
    config = config or SolverConfig()
    times = config.times()[1:] if t_grid is None else np.asarray(t_grid, dtype=np.float64)
    times = np.atleast_1d(times)
    if np.any(times <= 0):
        raise ParameterError("inverse Laplace times must be > 0")
    check_weak_probe(params, config.weak_probe_threshold)
    transform = shifted_transform(model, params)
    if params.omega_rabi == 0:
        return np.zeros(times.shape, dtype=np.complex128)

    remainder = fixed_talbot(
        transform.remainder,
        times,
        nodes=config.contour_nodes,
        scale=config.contour_scale,
        avoid=tuple(pole.location for pole in transform.poles),
        auto_shift=True,
    )

    total = remainder
    for pole in transform.poles:
        total = total + pole.inverse(times)
    logger.debug(
        "Inverted %s transform at %d times with %d subtracted poles",
        model.name,
        len(times),
        len(transform.poles),
    )
    return np.exp(-1j * transform.shift * times) * total
