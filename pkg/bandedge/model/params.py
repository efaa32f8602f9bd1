"""Physical parameter sets, in units of the band-edge coupling beta."""

import logging
import math
from dataclasses import dataclass, fields, replace
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from typing import Self

from bandedge.model.errors import ParameterError

logger = logging.getLogger(__name__)

WEAK_PROBE_THRESHOLD = 0.1


@dataclass(frozen=True)
class SystemParams:
    """Rabi frequency, decay rates, couplings and detunings of the three-level atom."""

    omega_rabi: float = 0.01
    gamma: float = 1.0
    beta: float = 1.0
    beta_a: float = 1.0
    delta_g: float = 0.0
    delta: float = 0.0
    gamma1: float = 1.0

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not math.isfinite(value):
                raise ParameterError(f"{f.name} must be finite (got {value})")
        for name in ("omega_rabi", "gamma", "gamma1"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0 (got {getattr(self, name)})")
        for name in ("beta", "beta_a"):
            if getattr(self, name) <= 0:
                raise ParameterError(f"{name} must be > 0 (got {getattr(self, name)})")

    @property
    def edge_detuning(self) -> float:
        """delta_g - delta, the probe's distance below the band edge."""
        return self.delta_g - self.delta

    def with_delta(self, delta: float) -> "Self":
        return replace(self, delta=delta)

    def weak_probe_ratio(self) -> float:
        """Omega / min(beta, gamma); infinite when gamma is zero and Omega is not."""
        scale = min(self.beta, self.gamma)
        if scale == 0:
            return 0.0 if self.omega_rabi == 0 else math.inf
        return self.omega_rabi / scale


def check_weak_probe(params: SystemParams, threshold: float = WEAK_PROBE_THRESHOLD) -> float:
    """Return the weak-probe ratio, warning when it exceeds ``threshold``."""
    ratio = params.weak_probe_ratio()
    if ratio > threshold:
        logger.warning(
            "Weak-probe condition violated: Omega/min(beta, gamma) = %.3g > %.3g",
            ratio,
            threshold,
        )
    return ratio
