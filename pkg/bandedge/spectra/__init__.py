"""Steady-state susceptibility, spectra, dispersion and density of modes."""

from bandedge.spectra.dispersion import (
    GroupVelocity,
    ThresholdDivergence,
    dchi_ddelta_values,
    dre_chi_ddelta,
    group_velocity,
)
from bandedge.spectra.features import (
    SpectrumFeatures,
    spectrum_features,
    symmetric_about,
    transparency_point,
)
from bandedge.spectra.modes import density_of_modes
from bandedge.spectra.susceptibility import (
    GammaZeroSteadyStateUndefined,
    ScalingParams,
    SusceptibilitySample,
    a1_steady,
    susceptibility,
    susceptibility_values,
)
from bandedge.spectra.table import FIGURE_GRID, GridError, GridSpec, SpectrumTable, spectrum

__all__ = [
    "FIGURE_GRID",
    "GammaZeroSteadyStateUndefined",
    "GridError",
    "GridSpec",
    "GroupVelocity",
    "ScalingParams",
    "SpectrumFeatures",
    "SpectrumTable",
    "SusceptibilitySample",
    "ThresholdDivergence",
    "a1_steady",
    "dchi_ddelta_values",
    "density_of_modes",
    "dre_chi_ddelta",
    "group_velocity",
    "spectrum",
    "spectrum_features",
    "susceptibility",
    "susceptibility_values",
    "symmetric_about",
    "transparency_point",
]
