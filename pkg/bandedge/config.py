"""Run configuration for the bandedge CLI.

Values are layered: dataclass defaults, then a YAML config file, then a figure preset,
then explicit command-line flags.
"""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from typing import Self

import yaml

from bandedge.dynamics.volterra import SolverConfig, TrajectoryMode
from bandedge.model.errors import BandedgeError
from bandedge.model.params import SystemParams
from bandedge.model.reservoir import ReservoirKind, ReservoirModel
from bandedge.spectra.susceptibility import ScalingParams
from bandedge.spectra.table import GridSpec

logger = logging.getLogger(__name__)

MODEL_CHOICES = tuple(k.value for k in ReservoirKind)
FORMAT_CHOICES = ("csv", "plot")
FIGURE_CHOICES = ("1b", "2a", "2b", "2c")
MODE_CHOICES = tuple(m.value for m in TrajectoryMode)

SPECTRUM_FIGURES: dict[str, dict[str, Any]] = {
    "2a": {"model": "iso", "gamma": 1.0, "beta": 1.0, "delta_g": 0.0},
    "2b": {"model": "iso", "gamma": 1.0, "beta": 1.0, "delta_g": 1.0},
    "2c": {"model": "iso", "gamma": 1.0, "beta": 1.0, "delta_g": -1.0},
}
DOS_FIGURES: dict[str, dict[str, Any]] = {
    "1b": {"model": "iso", "x_min": -2.0, "x_max": 4.0},
}
WINDOW_PRESET: dict[str, Any] = {
    "model": "iso",
    "gamma": 1.0,
    "delta_g": 0.0,
    "gamma1": 1.0,
    "bandwidth": 1e-7,
    "omega_over_c": 1.0,
    "length": 20.0,
}


class ConfigError(BandedgeError, ValueError):
    """Raised for unreadable config files, unknown keys and badly typed values."""


@dataclass(frozen=True)
class RunConfig:
    """Every setting a subcommand can take; field names double as config-file keys."""

    model: str = "iso"
    omega_rabi: float = 0.01
    gamma: float = 1.0
    beta: float = 1.0
    beta_a: float = 1.0
    gamma1: float = 1.0
    delta_g: float = 0.0
    delta: float = 0.0
    ca_scale: float = 1.0
    chi_prefactor: float = 1.0
    omega_over_c: float = 1.0
    weak_probe_threshold: float = 0.1

    delta_min: float = -10.0
    delta_max: float = 10.0
    delta_step: float = 0.005
    with_dispersion: bool = False
    workers: int = 1

    step: float = 0.01
    horizon: float = 50.0
    order: int = 2
    mode: str = "perturbative"
    contour_nodes: int = 64
    contour_scale: float = 1.0

    carrier: float | None = None
    bandwidth: float = 0.01
    length: float = 1.0
    samples: int = 4096

    x_min: float = -2.0
    x_max: float = 4.0
    x_step: float = 0.01

    out: Path | None = None
    format: str = "csv"
    figure: str | None = None

    def __post_init__(self) -> None:
        for name, choices in (
            ("model", MODEL_CHOICES),
            ("format", FORMAT_CHOICES),
            ("mode", MODE_CHOICES),
        ):
            if getattr(self, name) not in choices:
                raise ConfigError(
                    f"{name} must be one of {', '.join(choices)} (got {getattr(self, name)!r})"
                )
        if self.figure is not None and self.figure not in FIGURE_CHOICES:
            raise ConfigError(
                f"figure must be one of {', '.join(FIGURE_CHOICES)} (got {self.figure!r})"
            )

    def reservoir(self) -> ReservoirModel:
        return ReservoirModel.from_name(self.model, ca_scale=self.ca_scale)

    def system_params(self) -> SystemParams:
        return SystemParams(
            omega_rabi=self.omega_rabi,
            gamma=self.gamma,
            beta=self.beta,
            beta_a=self.beta_a,
            delta_g=self.delta_g,
            delta=self.delta,
            gamma1=self.gamma1,
        )

    def scaling(self) -> ScalingParams:
        return ScalingParams(chi_prefactor=self.chi_prefactor, omega_over_c=self.omega_over_c)

    def grid(self) -> GridSpec:
        return GridSpec(self.delta_min, self.delta_max, self.delta_step)

    def dos_grid(self) -> GridSpec:
        return GridSpec(self.x_min, self.x_max, self.x_step)

    def solver(self) -> SolverConfig:
        return SolverConfig(
            step=self.step,
            horizon=self.horizon,
            order=self.order,
            contour_nodes=self.contour_nodes,
            contour_scale=self.contour_scale,
            weak_probe_threshold=self.weak_probe_threshold,
        )

    def trajectory_mode(self) -> TrajectoryMode:
        return TrajectoryMode(self.mode)

    def merged(self, overrides: Mapping[str, Any]) -> "Self":
        """Copy with ``overrides`` applied; unknown keys are rejected, None values skipped."""
        known = {f.name: f for f in fields(self)}
        changes: dict[str, Any] = {}
        for raw_key, value in overrides.items():
            key = raw_key.replace("-", "_")
            if key not in known:
                raise ConfigError(f"unknown config key {raw_key!r}")
            if value is None:
                continue
            changes[key] = _coerce(key, value, getattr(self, key))
        return replace(self, **changes)


def _coerce(key: str, value: Any, current: Any) -> Any:
    if key == "out":
        return Path(value)
    if key in ("model", "format", "mode", "figure"):
        if not isinstance(value, str):
            raise ConfigError(f"{key} must be a string (got {value!r})")
        return value
    if key in ("with_dispersion",):
        if not isinstance(value, bool):
            raise ConfigError(f"{key} must be true or false (got {value!r})")
        return value
    if isinstance(value, bool) or not isinstance(value, int | float):
        raise ConfigError(f"{key} must be a number (got {value!r})")
    if isinstance(current, int) and not isinstance(current, bool):
        if int(value) != value:
            raise ConfigError(f"{key} must be an integer (got {value!r})")
        return int(value)
    return float(value)


def load_config_file(path: Path) -> dict[str, Any]:
    """Parse a YAML mapping of RunConfig keys."""
    with open(path, encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigError(f"cannot parse {path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must contain a mapping of settings")
    logger.debug("Loaded %d settings from %s", len(data), path)
    return data


def figure_preset(figure: str, subcommand: str) -> dict[str, Any]:
    presets = DOS_FIGURES if subcommand == "dos" else SPECTRUM_FIGURES
    if figure not in presets:
        raise ConfigError(f"figure {figure} is not available for the {subcommand} subcommand")
    return presets[figure]


def build_run_config(
    config_file: Path | None,
    flags: Mapping[str, Any],
    subcommand: str,
    presets: Mapping[str, Any] | None = None,
) -> RunConfig:
    """Defaults < config file < figure or window preset < explicit flags."""
    config = RunConfig()
    if config_file is not None:
        config = config.merged(load_config_file(config_file))
    figure = flags.get("figure") or config.figure
    if figure is not None:
        config = config.merged({**figure_preset(figure, subcommand), "figure": figure})
    if presets:
        config = config.merged(presets)
    return config.merged(flags)
