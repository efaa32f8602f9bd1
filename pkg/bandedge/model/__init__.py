"""Parameters, reservoir models, memory kernels and their Laplace transforms."""

from bandedge.model.branch import principal_sqrt
from bandedge.model.errors import BandedgeError, ParameterError, UnsupportedModel
from bandedge.model.laplace_pair import (
    QuadratureNonConvergence,
    laplace_transform_quadrature,
    validate_laplace_pair,
)
from bandedge.model.params import WEAK_PROBE_THRESHOLD, SystemParams, check_weak_probe
from bandedge.model.reservoir import (
    BranchPointSingularity,
    MarkovianKernelNotPointwise,
    NonPositiveTau,
    ReservoirKind,
    ReservoirModel,
    anisotropic_constant,
    kernel,
    ktilde,
    ktilde_derivative,
)

__all__ = [
    "BandedgeError",
    "BranchPointSingularity",
    "MarkovianKernelNotPointwise",
    "NonPositiveTau",
    "ParameterError",
    "QuadratureNonConvergence",
    "ReservoirKind",
    "ReservoirModel",
    "SystemParams",
    "UnsupportedModel",
    "WEAK_PROBE_THRESHOLD",
    "anisotropic_constant",
    "check_weak_probe",
    "kernel",
    "ktilde",
    "ktilde_derivative",
    "laplace_transform_quadrature",
    "principal_sqrt",
    "validate_laplace_pair",
]
