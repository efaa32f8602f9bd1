"""Uniform detuning grids and spectrum tables evaluated over them."""

import logging
import math
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from bandedge.model.errors import BandedgeError
from bandedge.model.params import WEAK_PROBE_THRESHOLD, SystemParams, check_weak_probe
from bandedge.model.reservoir import ReservoirModel
from bandedge.spectra.dispersion import dchi_ddelta_values, group_velocity_from_slope
from bandedge.spectra.susceptibility import (
    ScalingParams,
    SusceptibilitySample,
    susceptibility_values,
)

logger = logging.getLogger(__name__)

# relative mismatch allowed between the span and an integer number of steps
SPAN_TOLERANCE = 1e-9
# grid points handed to one worker at a time
CHUNK_SIZE = 512


class GridError(BandedgeError, ValueError):
    """Raised when a detuning grid is empty or not uniform."""


@dataclass(frozen=True)
class GridSpec:
    """Closed detuning interval [delta_min, delta_max] sampled every delta_step."""

    delta_min: float
    delta_max: float
    delta_step: float

    def __post_init__(self) -> None:
        for name in ("delta_min", "delta_max", "delta_step"):
            if not math.isfinite(getattr(self, name)):
                raise GridError(f"{name} must be finite (got {getattr(self, name)})")
        if self.delta_step <= 0:
            raise GridError(f"delta_step must be > 0 (got {self.delta_step})")
        if self.delta_max < self.delta_min:
            raise GridError(
                f"grid is empty: delta_max ({self.delta_max}) < delta_min ({self.delta_min})"
            )
        span = self.delta_max - self.delta_min
        steps = round(span / self.delta_step)
        if abs(steps * self.delta_step - span) > SPAN_TOLERANCE * max(1.0, abs(span)):
            raise GridError(
                f"delta_max - delta_min ({span}) must be a whole number of steps "
                f"of {self.delta_step}"
            )

    @property
    def size(self) -> int:
        return round((self.delta_max - self.delta_min) / self.delta_step) + 1

    def points(self) -> npt.NDArray[np.float64]:
        """Grid points (delta_min (n-1-k) + delta_max k) / (n-1).

        Integer-valued points such as 0 and +-1 come out exact.
        """
        n = self.size
        if n == 1:
            return np.array([self.delta_min])
        k = np.arange(n, dtype=np.float64)
        return (self.delta_min * (n - 1 - k) + self.delta_max * k) / (n - 1)


FIGURE_GRID = GridSpec(delta_min=-10.0, delta_max=10.0, delta_step=0.005)


@dataclass(frozen=True, eq=False)
class SpectrumTable:
    """Susceptibility sampled on a GridSpec, optionally with dispersion slope columns."""

    grid: GridSpec
    deltas: npt.NDArray[np.float64]
    chi: npt.NDArray[np.complex128]
    dre_chi_ddelta: npt.NDArray[np.float64] | None = None
    group_velocity: npt.NDArray[np.float64] | None = None

    def __len__(self) -> int:
        return len(self.deltas)

    @property
    def absorption(self) -> npt.NDArray[np.float64]:
        return -self.chi.imag

    @property
    def dispersion(self) -> npt.NDArray[np.float64]:
        return self.chi.real

    @property
    def has_dispersion(self) -> bool:
        return self.dre_chi_ddelta is not None

    def samples(self) -> Iterator[SusceptibilitySample]:
        for delta, chi in zip(self.deltas, self.chi, strict=True):
            yield SusceptibilitySample(delta=float(delta), chi=complex(chi))


def _evaluate_chunk(
    model: ReservoirModel,
    params: SystemParams,
    scaling: ScalingParams,
    deltas: npt.NDArray[np.float64],
    with_dispersion: bool,
) -> tuple[npt.NDArray[np.complex128], npt.NDArray[np.float64] | None]:
    chi = susceptibility_values(model, params, scaling, deltas)
    slope = None
    if with_dispersion:
        slope = dchi_ddelta_values(model, params, scaling, deltas).real
    return chi, slope


def spectrum(
    model: ReservoirModel,
    params: SystemParams,
    scaling: ScalingParams,
    grid: GridSpec,
    workers: int = 1,
    with_dispersion: bool = False,
    weak_probe_threshold: float = WEAK_PROBE_THRESHOLD,
) -> SpectrumTable:
    """Evaluate the susceptibility over ``grid``; params.delta is replaced by each point.

    Chunks are dispatched to a thread pool and reassembled in grid order, so the result
    does not depend on ``workers``.
    """
    if workers < 1:
        raise GridError(f"workers must be >= 1 (got {workers})")
    check_weak_probe(params, weak_probe_threshold)
    deltas = grid.points()
    chunks = [deltas[i : i + CHUNK_SIZE] for i in range(0, len(deltas), CHUNK_SIZE)]
    logger.debug(
        "Evaluating %s spectrum on %d points in %d chunks", model.name, len(deltas), len(chunks)
    )

    def run(chunk: npt.NDArray[np.float64]) -> tuple[
        npt.NDArray[np.complex128], npt.NDArray[np.float64] | None
    ]:
        return _evaluate_chunk(model, params, scaling, chunk, with_dispersion)

    if workers == 1:
        results = [run(chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            # map yields in submission order
            results = list(ex.map(run, chunks))

    chi = np.concatenate([r[0] for r in results])
    slope = None
    velocity = None
    if with_dispersion:
        slope = np.concatenate([r[1] for r in results if r[1] is not None])
        # NaN slope at the band edge carries through as NaN velocity
        velocity = np.array([group_velocity_from_slope(float(v), scaling) for v in slope])
    return SpectrumTable(
        grid=grid, deltas=deltas, chi=chi, dre_chi_ddelta=slope, group_velocity=velocity
    )
