"""Linear propagation of a probe pulse through a slab of band-edge atoms."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from bandedge.model.errors import BandedgeError, ParameterError
from bandedge.model.params import WEAK_PROBE_THRESHOLD, SystemParams, check_weak_probe
from bandedge.model.reservoir import ReservoirModel
from bandedge.propagation.pulse import PulseField
from bandedge.spectra.susceptibility import ScalingParams, susceptibility_values

logger = logging.getLogger(__name__)

# output below this fraction of the input energy has no meaningful centroid
ENERGY_FLOOR = 1e-6
# spectral energy allowed outside the valid detuning range
SPECTRAL_LEAKAGE = 1e-9
# outermost fraction of FFT bins treated as the Nyquist edge
NYQUIST_MARGIN = 0.05


class BandwidthTooWide(BandedgeError):
    """Raised when the pulse spectrum reaches outside the range chi is trusted on."""


class PulseAbsorbed(BandedgeError):
    """Raised when the output pulse carries too little energy to locate."""


@dataclass(frozen=True)
class MediumSlab:
    """Slab of length L; the field equation's omega/2c comes from ``scaling``."""

    length: float
    model: ReservoirModel
    params: SystemParams
    scaling: ScalingParams = field(default_factory=ScalingParams)

    def __post_init__(self) -> None:
        if not (math.isfinite(self.length) and self.length >= 0):
            raise ParameterError(f"length must be >= 0 (got {self.length})")

    @property
    def optical_depth_scale(self) -> float:
        """(omega/c)/2 * L."""
        return 0.5 * self.scaling.omega_over_c * self.length

    def transfer(self, detunings: npt.ArrayLike) -> npt.NDArray[np.complex128]:
        """exp(-i (omega/2c) chi(delta) L) at each probe detuning."""
        chi = susceptibility_values(self.model, self.params, self.scaling, detunings)
        return np.exp(-1j * self.optical_depth_scale * chi)


def _check_bandwidth(
    pulse: PulseField, spectrum: npt.NDArray[np.complex128], limit: float | None
) -> None:
    weight = np.abs(spectrum) ** 2
    total = weight.sum()
    if total == 0:
        return
    offsets = pulse.offsets()
    edge = np.abs(offsets) >= (1 - NYQUIST_MARGIN) * np.abs(offsets).max()
    if weight[edge].sum() > SPECTRAL_LEAKAGE * total:
        raise BandwidthTooWide(
            "pulse spectrum reaches the Nyquist edge of the time grid; use a finer grid"
        )
    if limit is not None:
        outside = np.abs(offsets) > limit
        if weight[outside].sum() > SPECTRAL_LEAKAGE * total:
            raise BandwidthTooWide(f"pulse spectrum extends beyond |delta - delta_c| = {limit}")


def propagate(
    pulse: PulseField,
    slab: MediumSlab,
    detuning_limit: float | None = None,
    weak_probe_threshold: float = WEAK_PROBE_THRESHOLD,
) -> PulseField:
    """Multiply each spectral component at delta_c + Delta by the slab transfer function.

    Works in the retarded frame, so a vacuum slab leaves the pulse in place.
    """
    check_weak_probe(slab.params, weak_probe_threshold)
    if slab.length == 0:
        return pulse.with_envelope(pulse.envelope.copy())

    spectrum = pulse.spectrum()
    _check_bandwidth(pulse, spectrum, detuning_limit)
    detunings = pulse.carrier_detuning + pulse.offsets()
    transmitted = np.fft.ifft(spectrum * slab.transfer(detunings))
    logger.debug(
        "Propagated %d-sample pulse through %s slab of length %g",
        len(pulse),
        slab.model.name,
        slab.length,
    )
    return pulse.with_envelope(transmitted)


def energy_retention(pulse_in: PulseField, pulse_out: PulseField) -> float:
    return pulse_out.energy / pulse_in.energy


def group_delay(pulse_in: PulseField, pulse_out: PulseField) -> float:
    """Centroid of |E_out|^2 minus centroid of |E_in|^2."""
    if not np.array_equal(pulse_in.times, pulse_out.times):
        raise ParameterError("group_delay needs both pulses on the same time grid")
    if pulse_out.energy < ENERGY_FLOOR * pulse_in.energy:
        raise PulseAbsorbed(
            f"output energy {pulse_out.energy:.3e} is below {ENERGY_FLOOR:g} of the input"
        )
    return pulse_out.centroid - pulse_in.centroid
