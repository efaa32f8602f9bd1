"""Reservoir models, their memory kernels K(tau) and Laplace transforms K~(s)."""

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Self

import numpy as np
import numpy.typing as npt

from bandedge.model.branch import ComplexLike, principal_sqrt
from bandedge.model.errors import BandedgeError, ParameterError
from bandedge.model.params import SystemParams

EIGHTH_TURN = cmath.exp(1j * math.pi / 4)


class NonPositiveTau(BandedgeError):
    """Raised when a kernel is sampled at tau <= 0."""


class MarkovianKernelNotPointwise(BandedgeError):
    """Raised when the delta-function Markovian kernel is sampled pointwise."""


class BranchPointSingularity(BandedgeError):
    """Raised when the isotropic transform is evaluated at its branch point."""


class ReservoirKind(Enum):
    """Which reservoir the upper-level transition decays into."""

    MARKOVIAN = "markov"
    ISOTROPIC = "iso"
    ANISOTROPIC = "aniso"


@dataclass(frozen=True)
class ReservoirModel:
    """Tagged reservoir choice; coupling constants are read from SystemParams.

    ``ca_scale`` multiplies the anisotropic transform constant and is ignored by the
    other variants.
    """

    kind: ReservoirKind
    ca_scale: complex = 1.0

    @classmethod
    def markovian(cls) -> "Self":
        return cls(ReservoirKind.MARKOVIAN)

    @classmethod
    def isotropic(cls) -> "Self":
        return cls(ReservoirKind.ISOTROPIC)

    @classmethod
    def anisotropic(cls, ca_scale: complex = 1.0) -> "Self":
        return cls(ReservoirKind.ANISOTROPIC, ca_scale=ca_scale)

    @classmethod
    def from_name(cls, name: str, ca_scale: complex = 1.0) -> "Self":
        try:
            kind = ReservoirKind(name)
        except ValueError as e:
            choices = ", ".join(k.value for k in ReservoirKind)
            raise ParameterError(f"model must be one of {choices} (got {name!r})") from e
        return cls(kind, ca_scale=ca_scale)

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def has_branch_point(self) -> bool:
        return self.kind is not ReservoirKind.MARKOVIAN


def anisotropic_constant(model: ReservoirModel, params: SystemParams) -> complex:
    """c_a in K~_a(s) = c_a sqrt(s + i(delta_g - delta)).

    Modulus 2 beta_a^(1/2) from the finite-part transform of the tau^(-3/2) tail; the
    phase e^(i pi/4) keeps Re K~_a(i omega) >= 0 above the edge.
    """
    return 2.0 * math.sqrt(params.beta_a) * EIGHTH_TURN * complex(model.ca_scale)


def kernel(model: ReservoirModel, params: SystemParams, tau: float) -> complex:
    """Pointwise memory kernel K(tau) for tau > 0."""
    if tau <= 0:
        raise NonPositiveTau(f"tau must be > 0 (got {tau})")
    detuning = params.edge_detuning
    match model.kind:
        case ReservoirKind.MARKOVIAN:
            raise MarkovianKernelNotPointwise(
                "Markovian kernel is (gamma1/2) delta(tau); use ktilde instead"
            )
        case ReservoirKind.ISOTROPIC:
            phase = cmath.exp(-1j * (math.pi / 4 + detuning * tau))
            return params.beta**1.5 * phase / math.sqrt(math.pi * tau)
        case ReservoirKind.ANISOTROPIC:
            phase = cmath.exp(1j * (math.pi / 4 - detuning * tau))
            return math.sqrt(params.beta_a) * phase / (math.sqrt(math.pi) * tau**1.5)
    raise AssertionError(model.kind)


def _shifted(params: SystemParams, s: complex | npt.ArrayLike) -> ComplexLike:
    shifted = np.asarray(s, dtype=np.complex128) + 1j * params.edge_detuning
    return complex(shifted) if shifted.ndim == 0 else shifted


def ktilde(model: ReservoirModel, params: SystemParams, s: complex | npt.ArrayLike) -> ComplexLike:
    """Laplace transform K~(s); s = 0 is read as the limit from Re s > 0."""
    match model.kind:
        case ReservoirKind.MARKOVIAN:
            value = np.full(np.shape(s), params.gamma1 / 2, dtype=np.complex128)
            return complex(value) if value.ndim == 0 else value
        case ReservoirKind.ISOTROPIC:
            w = _shifted(params, s)
            if np.any(np.asarray(w) == 0):
                raise BranchPointSingularity(
                    "isotropic K~(s) diverges at s = -i(delta_g - delta)"
                )
            return params.beta**1.5 * np.conj(EIGHTH_TURN) / principal_sqrt(w)
        case ReservoirKind.ANISOTROPIC:
            w = _shifted(params, s)
            return anisotropic_constant(model, params) * principal_sqrt(w)
    raise AssertionError(model.kind)


def ktilde_derivative(
    model: ReservoirModel, params: SystemParams, s: complex | npt.ArrayLike
) -> ComplexLike:
    """dK~/ds; since K~ depends on s + i(delta_g - delta), dK~/d(delta) = -i dK~/ds."""
    match model.kind:
        case ReservoirKind.MARKOVIAN:
            value = np.zeros(np.shape(s), dtype=np.complex128)
            return complex(value) if value.ndim == 0 else value
        case ReservoirKind.ISOTROPIC:
            w = _shifted(params, s)
            if np.any(np.asarray(w) == 0):
                raise BranchPointSingularity(
                    "isotropic dK~/ds diverges at s = -i(delta_g - delta)"
                )
            root = principal_sqrt(w)
            return -0.5 * params.beta**1.5 * np.conj(EIGHTH_TURN) / (root * root * root)
        case ReservoirKind.ANISOTROPIC:
            w = _shifted(params, s)
            if np.any(np.asarray(w) == 0):
                raise BranchPointSingularity(
                    "anisotropic dK~/ds diverges at s = -i(delta_g - delta)"
                )
            return 0.5 * anisotropic_constant(model, params) / principal_sqrt(w)
    raise AssertionError(model.kind)
