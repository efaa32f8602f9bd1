"""Quadrature check that the isotropic kernel and its closed-form transform agree."""

import logging
import math
from collections.abc import Iterable

import numpy as np

from bandedge.model.errors import BandedgeError, ParameterError, UnsupportedModel
from bandedge.model.params import SystemParams
from bandedge.model.reservoir import EIGHTH_TURN, ReservoirKind, ReservoirModel, ktilde

logger = logging.getLogger(__name__)

# exp(-Re(s) U^2) below this is treated as the end of the integration range
TAIL_EXPONENT = 42.0
DEFAULT_PANELS = 64
DEFAULT_ORDER = 16


class QuadratureNonConvergence(BandedgeError):
    """Raised when successive quadrature refinements disagree beyond tolerance."""


def laplace_transform_quadrature(
    model: ReservoirModel,
    params: SystemParams,
    s: complex,
    panels: int = DEFAULT_PANELS,
    order: int = DEFAULT_ORDER,
) -> complex:
    """Integrate K(tau) e^(-s tau) over tau > 0 with the substitution tau = u^2.

    The Jacobian 2u cancels the tau^(-1/2) endpoint singularity, leaving the smooth
    integrand 2 beta^(3/2) e^(-i pi/4) e^(-(s + i(delta_g - delta)) u^2) / sqrt(pi),
    integrated by composite Gauss-Legendre on [0, U].
    """
    if model.kind is not ReservoirKind.ISOTROPIC:
        raise UnsupportedModel(f"quadrature pair check is defined for iso only (got {model.name})")
    s = complex(s)
    if s.real <= 0:
        raise ParameterError(f"Re s must be > 0 for the quadrature check (got {s})")
    if panels < 1 or order < 1:
        raise ParameterError(f"panels and order must be >= 1 (got {panels}, {order})")

    upper = math.sqrt(TAIL_EXPONENT / s.real)
    nodes, weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, upper, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    u = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()

    amplitude = 2.0 * params.beta**1.5 * np.conj(EIGHTH_TURN) / math.sqrt(math.pi)
    rate = s + 1j * params.edge_detuning
    return complex(amplitude * np.sum(w * np.exp(-rate * u * u)))


def validate_laplace_pair(
    model: ReservoirModel,
    params: SystemParams,
    s_grid: Iterable[complex],
    panels: int = DEFAULT_PANELS,
    order: int = DEFAULT_ORDER,
    tolerance: float = 1e-10,
) -> float:
    """Max |quadrature - ktilde| over ``s_grid``; 0 for the Markovian model."""
    if model.kind is ReservoirKind.MARKOVIAN:
        return 0.0
    if model.kind is ReservoirKind.ANISOTROPIC:
        raise UnsupportedModel("anisotropic kernel is not integrable at tau = 0")

    max_error = 0.0
    for s in s_grid:
        fine = laplace_transform_quadrature(model, params, s, panels, order)
        coarse = laplace_transform_quadrature(model, params, s, max(1, panels // 2), order)
        if abs(fine - coarse) > tolerance * max(1.0, abs(fine)):
            raise QuadratureNonConvergence(
                f"quadrature at s={s} did not converge: refinement changed the result "
                f"by {abs(fine - coarse):.3e}"
            )
        error = abs(fine - complex(ktilde(model, params, s)))
        logger.debug("Laplace pair at s=%s: error %.3e", s, error)
        max_error = max(max_error, error)
    return max_error
