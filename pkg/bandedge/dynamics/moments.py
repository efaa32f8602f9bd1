"""Exact moments of the weakly singular kernel for product integration.

The isotropic kernel is C tau^(-1/2) e^(-q tau) with C = beta^(3/2) e^(-i pi/4) / sqrt(pi)
and q = i(delta_g - delta). On each step interval the memory integral treats this factor
exactly and interpolates only the amplitude, which needs

    G0(x) = int_0^x tau^(-1/2) e^(-q tau) d tau = sqrt(pi) erf(sqrt(q x)) / sqrt(q)
    G1(x) = int_0^x tau^(1/2) e^(-q tau) d tau = -sqrt(x) e^(-q x) / q + G0(x) / (2 q)

Both closed forms lose digits for small |q x|; there the power series

    G0(x) = sum_n (-q)^n x^(n + 1/2) / (n! (n + 1/2))
    G1(x) = sum_n (-q)^n x^(n + 3/2) / (n! (n + 3/2))

is summed instead.
"""

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.special import erf

from bandedge.model.params import SystemParams
from bandedge.model.reservoir import EIGHTH_TURN, ReservoirKind, ReservoirModel

# |q x| below this uses the series
SERIES_CUTOFF = 1.0
SERIES_TERMS = 40


def _series(q: complex, x: npt.NDArray[np.float64], offset: float) -> npt.NDArray[np.complex128]:
    total = np.zeros(x.shape, dtype=np.complex128)
    power = x**offset + 0j
    for n in range(SERIES_TERMS):
        total += power / (math.factorial(n) * (n + offset))
        power = power * (-q * x)
    return total


def g0(q: complex, x: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """int_0^x tau^(-1/2) e^(-q tau) d tau, elementwise for x >= 0."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    far = np.abs(q * x) >= SERIES_CUTOFF
    out = np.empty(x.shape, dtype=np.complex128)
    out[~far] = _series(q, x[~far], 0.5)
    if np.any(far):
        root_q = np.sqrt(complex(q))
        out[far] = math.sqrt(math.pi) * erf(root_q * np.sqrt(x[far])) / root_q
    return out


def g1(q: complex, x: npt.ArrayLike) -> npt.NDArray[np.complex128]:
    """int_0^x tau^(1/2) e^(-q tau) d tau, elementwise for x >= 0."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    far = np.abs(q * x) >= SERIES_CUTOFF
    out = np.empty(x.shape, dtype=np.complex128)
    out[~far] = _series(q, x[~far], 1.5)
    if np.any(far):
        xf = x[far]
        out[far] = -np.sqrt(xf) * np.exp(-q * xf) / q + g0(q, xf) / (2 * q)
    return out


@dataclass(frozen=True, eq=False)
class MemoryWeights:
    """Per-interval weights, indexed by interval number m = 1..N (index 0 unused).

    ``constant[m]`` multiplies the amplitude at the later end of interval m when the
    amplitude is held piecewise constant. ``older[m]`` and ``newer[m]`` multiply the
    amplitudes at the earlier and later ends of interval m for piecewise-linear
    interpolation.
    """

    constant: npt.NDArray[np.complex128]
    older: npt.NDArray[np.complex128]
    newer: npt.NDArray[np.complex128]


def memory_weights(
    model: ReservoirModel, params: SystemParams, step: float, intervals: int
) -> MemoryWeights:
    """Weights for int_0^{t_n} K(tau) a(t_n - tau) d tau on a grid of spacing ``step``.

    Interval m covers tau in [(m-1)h, mh], where a(t_n - tau) runs from a_{n-m+1}
    down to a_{n-m}. The Markovian kernel puts its whole weight gamma1/2 on tau = 0.
    """
    size = intervals + 1
    constant = np.zeros(size, dtype=np.complex128)
    older = np.zeros(size, dtype=np.complex128)
    newer = np.zeros(size, dtype=np.complex128)

    match model.kind:
        case ReservoirKind.MARKOVIAN:
            if intervals >= 1:
                constant[1] = params.gamma1 / 2
                newer[1] = params.gamma1 / 2
            return MemoryWeights(constant, older, newer)
        case ReservoirKind.ISOTROPIC:
            pass
        case _:
            raise ValueError(f"no product-integration weights for the {model.name} kernel")

    q = 1j * params.edge_detuning
    scale = params.beta**1.5 * np.conj(EIGHTH_TURN) / math.sqrt(math.pi)
    nodes = step * np.arange(size, dtype=np.float64)
    m = np.arange(1, size, dtype=np.float64)
    p0 = scale * np.diff(g0(q, nodes))
    p1 = scale * np.diff(g1(q, nodes))

    constant[1:] = p0
    older[1:] = (p1 - (m - 1) * step * p0) / step
    newer[1:] = (m * step * p0 - p1) / step
    return MemoryWeights(constant, older, newer)
