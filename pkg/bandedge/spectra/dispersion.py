"""Dispersion slope dRe(chi)/d(delta) and the resulting group velocity."""

import logging
import math
from dataclasses import dataclass, replace

import numpy as np
import numpy.typing as npt

from bandedge.model.errors import BandedgeError
from bandedge.model.params import SystemParams
from bandedge.model.reservoir import ReservoirModel, ktilde_derivative
from bandedge.spectra.susceptibility import ScalingParams, steady_denominators

logger = logging.getLogger(__name__)


class ThresholdDivergence(BandedgeError):
    """Raised when the dispersion slope is requested at a band edge."""


@dataclass(frozen=True)
class GroupVelocity:
    """Group velocity in units of c; ``at_threshold`` marks the v_g -> 0 limit."""

    value: float
    at_threshold: bool = False


def dchi_ddelta_values(
    model: ReservoirModel,
    params: SystemParams,
    scaling: ScalingParams,
    deltas: npt.ArrayLike,
) -> npt.NDArray[np.complex128]:
    """Analytic d(chi)/d(delta); NaN at the band edge of either band-gap model.

    With chi = -k / conj(D) and D = delta + i gamma/2 + i K~(0+), the transform depends on
    delta through s + i(delta_g - delta), so dD/d(delta) = 1 + dK~/ds and
    d(chi)/d(delta) = k conj(dD/d(delta)) / conj(D)^2.
    """
    denominators, _ = steady_denominators(model, params, deltas)
    deltas = np.atleast_1d(np.asarray(deltas, dtype=np.float64))
    # both band-edge transforms have an infinite s-derivative at the edge
    at_edge = np.zeros(deltas.shape, dtype=bool)
    if model.has_branch_point:
        at_edge = deltas == params.delta_g
    base = replace(params, delta=0.0)
    slope = np.full(denominators.shape, np.nan, dtype=np.complex128)
    off_edge = ~at_edge
    if np.any(off_edge):
        dd = 1.0 + ktilde_derivative(model, base, -1j * deltas[off_edge])
        d = denominators[off_edge]
        slope[off_edge] = scaling.chi_prefactor * np.conj(dd) / np.conj(d) ** 2
    return slope


def dre_chi_ddelta(
    model: ReservoirModel, params: SystemParams, scaling: ScalingParams | None = None
) -> float:
    scaling = scaling or ScalingParams()
    if model.has_branch_point and params.delta == params.delta_g:
        raise ThresholdDivergence(
            f"dRe(chi)/d(delta) diverges at the band edge delta = delta_g = {params.delta_g}"
        )
    return float(dchi_ddelta_values(model, params, scaling, params.delta)[0].real)


def group_velocity_from_slope(slope: float, scaling: ScalingParams) -> float:
    denominator = 1.0 + 0.5 * scaling.omega_over_c * slope
    if denominator == 0:
        return math.inf
    return 1.0 / denominator


def group_velocity(
    model: ReservoirModel, params: SystemParams, scaling: ScalingParams | None = None
) -> GroupVelocity:
    """v_g = 1 / (1 + (omega/c)/2 * dRe(chi)/d(delta)), with c = 1."""
    scaling = scaling or ScalingParams()
    try:
        slope = dre_chi_ddelta(model, params, scaling)
    except ThresholdDivergence:
        logger.info("Group velocity at the band edge reported as the v_g -> 0 limit")
        return GroupVelocity(value=0.0, at_threshold=True)
    return GroupVelocity(value=group_velocity_from_slope(slope, scaling))
