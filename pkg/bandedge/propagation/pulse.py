"""Probe pulse envelopes on uniform time grids."""

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Self

import numpy as np
import numpy.typing as npt

from bandedge.model.errors import ParameterError

DEFAULT_SAMPLES = 4096
# half-width of the default window, in units of the intensity standard deviation
WINDOW_HALF_WIDTH = 12.0


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@dataclass(frozen=True, eq=False)
class PulseField:
    """Complex envelope E(t) of a probe carried at detuning ``carrier_detuning``.

    A component e^(i Delta t) of the envelope sits at probe detuning carrier + Delta.
    """

    times: npt.NDArray[np.float64]
    envelope: npt.NDArray[np.complex128]
    carrier_detuning: float = 0.0

    def __post_init__(self) -> None:
        n = len(self.times)
        if len(self.envelope) != n:
            raise ParameterError(
                f"envelope has {len(self.envelope)} samples but the grid has {n}"
            )
        if not _is_power_of_two(n):
            raise ParameterError(f"pulse grid length must be a power of two (got {n})")
        if n > 1:
            spacing = np.diff(self.times)
            if spacing[0] <= 0 or not np.allclose(spacing, spacing[0], rtol=1e-9, atol=0):
                raise ParameterError("pulse time grid must be uniform and increasing")
        if not np.all(np.isfinite(self.envelope)):
            raise ParameterError("pulse envelope must be finite")
        if not math.isfinite(self.carrier_detuning):
            raise ParameterError(f"carrier_detuning must be finite (got {self.carrier_detuning})")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])

    @property
    def intensity(self) -> npt.NDArray[np.float64]:
        return np.abs(self.envelope) ** 2

    @property
    def energy(self) -> float:
        return float(self.intensity.sum() * self.dt)

    @property
    def centroid(self) -> float:
        """Energy-weighted mean time."""
        return float(np.sum(self.times * self.intensity) / np.sum(self.intensity))

    def offsets(self) -> npt.NDArray[np.float64]:
        """Detuning offsets Delta of each FFT bin from the carrier."""
        return 2 * math.pi * np.fft.fftfreq(len(self), self.dt)

    def spectrum(self) -> npt.NDArray[np.complex128]:
        return np.fft.fft(self.envelope)

    @property
    def bandwidth(self) -> float:
        """Standard deviation of the intensity spectrum |E^(Delta)|^2."""
        weight = np.abs(self.spectrum()) ** 2
        offsets = self.offsets()
        mean = np.sum(offsets * weight) / np.sum(weight)
        return float(math.sqrt(np.sum((offsets - mean) ** 2 * weight) / np.sum(weight)))

    def with_envelope(self, envelope: npt.NDArray[np.complex128]) -> "Self":
        return type(self)(self.times, envelope, self.carrier_detuning)


def gaussian_pulse(
    carrier_detuning: float,
    bandwidth: float,
    samples: int = DEFAULT_SAMPLES,
    center: float = 0.0,
) -> PulseField:
    """Gaussian envelope whose intensity spectrum has standard deviation ``bandwidth``.

    The intensity profile then has standard deviation 1 / (2 bandwidth) in time; the grid
    spans +-12 of those around ``center``.
    """
    if not (math.isfinite(bandwidth) and bandwidth > 0):
        raise ParameterError(f"bandwidth must be > 0 (got {bandwidth})")
    if not _is_power_of_two(samples):
        raise ParameterError(f"samples must be a power of two (got {samples})")
    sigma_t = 1 / (2 * bandwidth)
    half = WINDOW_HALF_WIDTH * sigma_t
    dt = 2 * half / samples
    times = center - half + dt * np.arange(samples, dtype=np.float64)
    envelope = np.exp(-((times - center) ** 2) / (4 * sigma_t**2)).astype(np.complex128)
    return PulseField(times, envelope, carrier_detuning)
