"""Steady-state amplitude and linear susceptibility of the probe transition."""

import logging
import math
from dataclasses import dataclass, replace

import numpy as np
import numpy.typing as npt

from bandedge.model.errors import BandedgeError, ParameterError
from bandedge.model.params import WEAK_PROBE_THRESHOLD, SystemParams, check_weak_probe
from bandedge.model.reservoir import ReservoirKind, ReservoirModel, ktilde

logger = logging.getLogger(__name__)


class GammaZeroSteadyStateUndefined(BandedgeError):
    """Raised when gamma = 0, where the final-value theorem does not apply."""


@dataclass(frozen=True)
class ScalingParams:
    """Prefactors that carry physical units into the normalized susceptibility.

    ``chi_prefactor`` stands for 4 pi N |mu_01|^2 and ``omega_over_c`` for the probe
    wavenumber entering the field equation.
    """

    chi_prefactor: float = 1.0
    omega_over_c: float = 1.0

    def __post_init__(self) -> None:
        for name in ("chi_prefactor", "omega_over_c"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ParameterError(f"{name} must be > 0 (got {value})")


@dataclass(frozen=True)
class SusceptibilitySample:
    """Complex susceptibility at one probe detuning."""

    delta: float
    chi: complex

    @property
    def absorption(self) -> float:
        return -self.chi.imag

    @property
    def dispersion(self) -> float:
        return self.chi.real


def _require_decay(params: SystemParams) -> None:
    if params.gamma <= 0:
        raise GammaZeroSteadyStateUndefined(
            "gamma must be > 0 for a steady state (final-value theorem needs decaying roots)"
        )


def steady_denominators(
    model: ReservoirModel, params: SystemParams, deltas: npt.ArrayLike
) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.bool_]]:
    """delta + i gamma/2 + i K~(0+) on a detuning array, plus the isotropic threshold mask.

    Entries under the mask are left at zero; there the steady amplitude is exactly 0.
    """
    _require_decay(params)
    deltas = np.atleast_1d(np.asarray(deltas, dtype=np.float64))
    at_edge = np.zeros(deltas.shape, dtype=bool)
    if model.kind is ReservoirKind.ISOTROPIC:
        at_edge = deltas == params.delta_g

    # s = -i delta_k against delta = 0 puts s + i(delta_g - delta) at i(delta_g - delta_k)
    base = replace(params, delta=0.0)
    s = -1j * deltas
    transform = np.zeros(deltas.shape, dtype=np.complex128)
    off_edge = ~at_edge
    if np.any(off_edge):
        transform[off_edge] = ktilde(model, base, s[off_edge])

    denominators = deltas + 1j * params.gamma / 2 + 1j * transform
    denominators[at_edge] = 0.0
    return denominators, at_edge


def a1_steady(model: ReservoirModel, params: SystemParams) -> complex:
    """Omega / (delta + i gamma/2 + i K~(0+)); exactly 0 at the isotropic transparency point."""
    denominators, at_edge = steady_denominators(model, params, params.delta)
    if at_edge[0] or params.omega_rabi == 0:
        return 0j
    return complex(params.omega_rabi / denominators[0])


def susceptibility_values(
    model: ReservoirModel,
    params: SystemParams,
    scaling: ScalingParams,
    deltas: npt.ArrayLike,
) -> npt.NDArray[np.complex128]:
    """chi = -chi_prefactor conj(a1) / Omega on a detuning array; params.delta is ignored."""
    denominators, at_edge = steady_denominators(model, params, deltas)
    chi = np.zeros(denominators.shape, dtype=np.complex128)
    chi[~at_edge] = -scaling.chi_prefactor / np.conj(denominators[~at_edge])
    return chi


def susceptibility(
    model: ReservoirModel,
    params: SystemParams,
    scaling: ScalingParams | None = None,
    weak_probe_threshold: float = WEAK_PROBE_THRESHOLD,
) -> SusceptibilitySample:
    scaling = scaling or ScalingParams()
    check_weak_probe(params, weak_probe_threshold)
    chi = susceptibility_values(model, params, scaling, params.delta)
    return SusceptibilitySample(delta=params.delta, chi=complex(chi[0]))
