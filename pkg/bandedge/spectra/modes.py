"""Photon density of modes near the band edge."""

import math

from bandedge.model.reservoir import ReservoirKind, ReservoirModel


def density_of_modes(model: ReservoirModel, omega_minus_omega_g: float) -> float:
    """Unnormalized rho(omega - omega_g).

    The isotropic model returns ``math.inf`` exactly at the edge.
    """
    x = omega_minus_omega_g
    match model.kind:
        case ReservoirKind.MARKOVIAN:
            return 1.0
        case ReservoirKind.ISOTROPIC:
            if x < 0:
                return 0.0
            if x == 0:
                return math.inf
            return 1.0 / math.sqrt(x)
        case ReservoirKind.ANISOTROPIC:
            return math.sqrt(x) if x > 0 else 0.0
    raise AssertionError(model.kind)
