"""Shape summaries of spectra: transparency point, edge minimum, side peaks."""

import logging
from dataclasses import dataclass

import numpy as np

from bandedge.model.params import SystemParams
from bandedge.model.reservoir import ReservoirKind, ReservoirModel
from bandedge.spectra.susceptibility import ScalingParams, susceptibility_values
from bandedge.spectra.table import SpectrumTable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Peak:
    delta: float
    height: float


@dataclass(frozen=True)
class SpectrumFeatures:
    """Absorption minimum nearest the band edge and the largest peak on each side of it."""

    minimum_delta: float
    minimum_absorption: float
    left_peak: Peak | None
    right_peak: Peak | None
    peak_delta: float

    def is_symmetric(self, rtol: float = 1e-3) -> bool:
        if self.left_peak is None or self.right_peak is None:
            return False
        scale = max(abs(self.left_peak.height), abs(self.right_peak.height))
        return abs(self.left_peak.height - self.right_peak.height) <= rtol * scale


def spectrum_features(table: SpectrumTable, delta_g: float) -> SpectrumFeatures:
    absorption = table.absorption
    deltas = table.deltas
    n = len(absorption)
    if n == 0:
        raise ValueError("spectrum table is empty")

    padded = np.concatenate(([np.inf], absorption, [np.inf]))
    minima = np.flatnonzero((padded[1:-1] <= padded[:-2]) & (padded[1:-1] <= padded[2:]))
    nearest = minima[np.argmin(np.abs(deltas[minima] - delta_g))]

    def side_peak(lo: int, hi: int) -> Peak | None:
        if hi <= lo:
            return None
        i = lo + int(np.argmax(absorption[lo:hi]))
        return Peak(delta=float(deltas[i]), height=float(absorption[i]))

    features = SpectrumFeatures(
        minimum_delta=float(deltas[nearest]),
        minimum_absorption=float(absorption[nearest]),
        left_peak=side_peak(0, int(nearest)),
        right_peak=side_peak(int(nearest) + 1, n),
        peak_delta=float(deltas[int(np.argmax(absorption))]),
    )
    logger.debug("Spectrum features: %s", features)
    return features


def symmetric_about(table: SpectrumTable, center: float, rtol: float = 1e-9) -> bool:
    """Whether absorption(center + x) matches absorption(center - x) on the grid."""
    mirrored = np.interp(2 * center - table.deltas, table.deltas, table.absorption)
    inside = (2 * center - table.deltas >= table.deltas[0]) & (
        2 * center - table.deltas <= table.deltas[-1]
    )
    scale = float(np.max(np.abs(table.absorption))) or 1.0
    return bool(np.all(np.abs(mirrored[inside] - table.absorption[inside]) <= rtol * scale))


def transparency_point(
    model: ReservoirModel, params: SystemParams, scaling: ScalingParams | None = None
) -> float | None:
    """Detuning where chi vanishes: delta_g for the isotropic model, otherwise None."""
    if model.kind is not ReservoirKind.ISOTROPIC:
        return None
    chi = susceptibility_values(model, params, scaling or ScalingParams(), params.delta_g)[0]
    if chi != 0:
        raise AssertionError(f"isotropic chi at delta_g should vanish (got {chi})")
    return params.delta_g
