"""Individual invariant checks run by ``bandedge validate``."""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, replace

import numpy as np

from bandedge.dynamics.talbot import a1_inverse_laplace
from bandedge.dynamics.volterra import SolverConfig, TrajectoryMode, solve_volterra
from bandedge.model.laplace_pair import validate_laplace_pair
from bandedge.model.params import SystemParams
from bandedge.model.reservoir import ReservoirModel
from bandedge.propagation.medium import MediumSlab, energy_retention, group_delay, propagate
from bandedge.propagation.pulse import gaussian_pulse
from bandedge.spectra.dispersion import dre_chi_ddelta
from bandedge.spectra.susceptibility import ScalingParams, a1_steady, susceptibility_values
from bandedge.spectra.table import FIGURE_GRID, spectrum

logger = logging.getLogger(__name__)

FIGURE_EDGES = (-1.0, 0.0, 1.0)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check: the measured value and the bound it was held to."""

    name: str
    passed: bool
    value: float
    bound: str
    detail: str = ""


@dataclass(frozen=True)
class CheckContext:
    """Inputs shared by the checks; beta, beta_a and the c_a multiplier come from the run."""

    params: SystemParams
    scaling: ScalingParams
    ca_scale: complex = 1.0
    workers: int = 1

    def figure_params(self, **changes: float) -> SystemParams:
        base = replace(self.params, gamma=1.0, omega_rabi=0.01, delta=0.0, delta_g=0.0)
        return replace(base, **changes)


Check = Callable[[CheckContext], CheckResult]


def _result(
    name: str, value: float, limit: float, bound: str, ok: bool, detail: str = ""
) -> CheckResult:
    value, ok = float(value), bool(ok)
    logger.info(
        "Check %s: %s (value %.3e, %s %g)", name, "pass" if ok else "FAIL", value, bound, limit
    )
    return CheckResult(name=name, passed=ok, value=value, bound=f"{bound} {limit:g}", detail=detail)


def check_laplace_pair(ctx: CheckContext) -> CheckResult:
    params = ctx.figure_params(delta_g=1.0)
    s_grid = [complex(a, b) for a in (0.5, 1.0, 2.0) for b in (0.0, 1.0)]
    error = validate_laplace_pair(ReservoirModel.isotropic(), params, s_grid)
    return _result("laplace_pair", error, 1e-8, "<", error < 1e-8)


def check_volterra_vs_inversion(ctx: CheckContext) -> CheckResult:
    model = ReservoirModel.isotropic()
    params = ctx.figure_params(delta=1.0)
    config = SolverConfig(step=0.01, horizon=50.0)
    trajectory = solve_volterra(model, params, config)
    oracle = a1_inverse_laplace(model, params, config, trajectory.times[1:])
    error = float(np.max(np.abs(trajectory.a1[1:] - oracle)))
    return _result("volterra_vs_inversion", error, 1e-4, "<", error < 1e-4)


def check_final_value(ctx: CheckContext) -> CheckResult:
    model = ReservoirModel.isotropic()
    params = ctx.figure_params(delta=1.0)
    config = SolverConfig(step=0.01, horizon=100.0)
    steady = a1_steady(model, params)
    volterra_end = solve_volterra(model, params, config).a1[-1]
    oracle_end = a1_inverse_laplace(model, params, config, [config.horizon])[0]
    error = max(abs(volterra_end - steady), abs(oracle_end - steady))
    return _result("final_value", float(error), 1e-3, "<", error < 1e-3)


def check_markovian_equivalence(ctx: CheckContext) -> CheckResult:
    params = ctx.figure_params(gamma1=1.0)
    table = spectrum(ReservoirModel.markovian(), params, ctx.scaling, FIGURE_GRID, ctx.workers)
    lorentzian = -ctx.scaling.chi_prefactor / (
        table.deltas - 1j * (params.gamma + params.gamma1) / 2
    )
    error = float(np.max(np.abs(table.chi - lorentzian)))
    return _result("markovian_equivalence", error, 1e-12, "<", error < 1e-12)


def check_transparency_zero(ctx: CheckContext) -> CheckResult:
    model = ReservoirModel.isotropic()
    worst = 0.0
    misplaced = []
    for edge in FIGURE_EDGES:
        params = ctx.figure_params(delta_g=edge)
        chi = susceptibility_values(model, params, ctx.scaling, edge)[0]
        worst = max(worst, abs(chi))
        table = spectrum(model, params, ctx.scaling, FIGURE_GRID, ctx.workers)
        lowest = table.deltas[int(np.argmin(table.absorption))]
        if abs(lowest - edge) > FIGURE_GRID.delta_step:
            misplaced.append(edge)
    ok = worst < 1e-12 and not misplaced
    detail = f"absorption minimum off the edge for delta_g in {misplaced}" if misplaced else ""
    return _result("transparency_zero", worst, 1e-12, "<", ok, detail)


def check_threshold_scaling(ctx: CheckContext) -> CheckResult:
    model = ReservoirModel.isotropic()
    params = ctx.figure_params()
    gaps = np.logspace(-4, -2, 9)
    slopes = [
        dre_chi_ddelta(model, params.with_delta(params.delta_g - gap), ctx.scaling)
        for gap in gaps
    ]
    fit = float(np.polyfit(np.log(gaps), np.log(slopes), 1)[0])
    deviation = abs(fit + 0.5)
    return _result(
        "threshold_scaling", deviation, 0.05, "|slope+0.5| <", deviation < 0.05, f"slope {fit:.3f}"
    )


def check_anisotropic_non_transparency(ctx: CheckContext) -> CheckResult:
    params = ctx.figure_params()
    model = ReservoirModel.anisotropic(ctx.ca_scale)
    table = spectrum(model, params, ctx.scaling, FIGURE_GRID, ctx.workers)
    smallest = float(np.min(np.abs(table.chi)))

    expected = ctx.scaling.chi_prefactor / abs(params.delta_g - 1j * params.gamma / 2)
    spread = 0.0
    for factor in (0.5, 1.0, 2.0):
        rescaled = ReservoirModel.anisotropic(ctx.ca_scale * factor)
        at_edge = susceptibility_values(rescaled, params, ctx.scaling, params.delta_g)[0]
        spread = max(spread, abs(abs(at_edge) - expected))
    ok = smallest > 0.01 and spread < 1e-12
    detail = f"|chi(delta_g)| deviates from {expected:.6g} by {spread:.3e}"
    return _result("anisotropic_non_transparency", smallest, 0.01, ">", ok, detail)


def check_positivity(ctx: CheckContext) -> CheckResult:
    models = (
        ReservoirModel.isotropic(),
        ReservoirModel.anisotropic(),
        ReservoirModel.markovian(),
    )
    worst = math.inf
    for model in models:
        for edge in FIGURE_EDGES:
            params = ctx.figure_params(delta_g=edge, gamma1=1.0)
            table = spectrum(model, params, ctx.scaling, FIGURE_GRID, ctx.workers)
            worst = min(worst, float(np.min(table.absorption)))
    return _result("positivity", worst, -1e-12, ">=", worst >= -1e-12)


def check_branch_continuity(ctx: CheckContext) -> CheckResult:
    params = ctx.figure_params()
    eps = np.array([-1e-22, 1e-22])
    chi = susceptibility_values(ReservoirModel.isotropic(), params, ctx.scaling, eps)
    jump = float(max(abs(chi[1] - chi[0]), np.max(np.abs(chi))))
    return _result("branch_continuity", jump, 1e-10, "<", jump < 1e-10)


def check_transparency_window(ctx: CheckContext) -> CheckResult:
    params = ctx.figure_params(gamma1=1.0)
    pulse = gaussian_pulse(carrier_detuning=params.delta_g, bandwidth=1e-7)
    length = 20.0 / ctx.scaling.omega_over_c
    iso_slab = MediumSlab(length, ReservoirModel.isotropic(), params, ctx.scaling)
    markov_slab = MediumSlab(length, ReservoirModel.markovian(), params, ctx.scaling)
    iso = energy_retention(pulse, propagate(pulse, iso_slab))
    markov = energy_retention(pulse, propagate(pulse, markov_slab))
    ok = iso > 0.99 and markov < 0.01
    detail = f"markovian retention {markov:.3e}"
    return _result("transparency_window", iso, 0.99, ">", ok, detail)


def check_propagation_algebra(ctx: CheckContext) -> CheckResult:
    params = ctx.figure_params()
    model = ReservoirModel.isotropic()
    first = gaussian_pulse(carrier_detuning=-0.5, bandwidth=0.05)
    second = first.with_envelope(np.roll(first.envelope, 100) * np.exp(0.3j))
    a, b = 0.7 - 0.2j, -1.3 + 0.4j
    slab = MediumSlab(1.0, model, params, ctx.scaling)

    combined = propagate(first.with_envelope(a * first.envelope + b * second.envelope), slab)
    separate = a * propagate(first, slab).envelope + b * propagate(second, slab).envelope
    linearity = float(np.max(np.abs(combined.envelope - separate)) / np.max(np.abs(separate)))

    near = MediumSlab(0.4, model, params, ctx.scaling)
    far = MediumSlab(0.6, model, params, ctx.scaling)
    split = propagate(propagate(first, near), far)
    whole = propagate(first, slab)
    composition = float(
        np.max(np.abs(split.envelope - whole.envelope)) / np.max(np.abs(whole.envelope))
    )
    gain = energy_retention(first, whole)
    ok = linearity < 1e-12 and composition < 1e-10 and gain <= 1.0
    detail = f"linearity {linearity:.3e}, composition {composition:.3e}, retention {gain:.4f}"
    return _result("propagation_algebra", max(linearity, composition), 1e-10, "<", ok, detail)


def check_slow_light_delay(ctx: CheckContext) -> CheckResult:
    params = ctx.figure_params()
    model = ReservoirModel.isotropic()
    carrier = params.delta_g - 0.5
    pulse = gaussian_pulse(carrier_detuning=carrier, bandwidth=0.05)
    slab = MediumSlab(2.0 / ctx.scaling.omega_over_c, model, params, ctx.scaling)
    measured = group_delay(pulse, propagate(pulse, slab))
    predicted = slab.optical_depth_scale * dre_chi_ddelta(
        model, params.with_delta(carrier), ctx.scaling
    )
    error = abs(measured - predicted) / abs(predicted)
    detail = f"measured {measured:.4f}, predicted {predicted:.4f}"
    return _result("slow_light_delay", error, 0.05, "relative error <", error < 0.05, detail)


def _oracle_errors(order: int, steps: tuple[float, ...]) -> list[float]:
    model = ReservoirModel.isotropic()
    params = SystemParams(omega_rabi=1.0, gamma=1.0, delta_g=0.0, delta=1.0)
    errors = []
    for h in steps:
        config = SolverConfig(step=h, horizon=4.0, order=order, weak_probe_threshold=2.0)
        trajectory = solve_volterra(model, params, config)
        oracle = a1_inverse_laplace(model, params, config, trajectory.times[1:])
        errors.append(float(np.max(np.abs(trajectory.a1[1:] - oracle))))
    return errors


def check_convergence_order(ctx: CheckContext) -> CheckResult:
    steps = (0.04, 0.02, 0.01, 0.005)
    worst_margin = math.inf
    parts = []
    for order, nominal in ((1, 2.0), (2, 4.0)):
        errors = _oracle_errors(order, steps)
        ratios = [errors[i] / errors[i + 1] for i in range(len(errors) - 1)]
        parts.append(f"order {order}: " + ", ".join(f"{r:.2f}" for r in ratios))
        worst_margin = min(worst_margin, min(ratios) / nominal)
    return _result(
        "convergence_order",
        worst_margin,
        0.9,
        "ratio / nominal >=",
        worst_margin >= 0.9,
        "; ".join(parts),
    )


def check_norm_bound(ctx: CheckContext) -> CheckResult:
    params = ctx.figure_params(omega_rabi=0.1, delta=0.5)
    config = SolverConfig(step=0.01, horizon=20.0)
    trajectory = solve_volterra(ReservoirModel.isotropic(), params, config, TrajectoryMode.COUPLED)
    peak = float(np.max(trajectory.norm))
    return _result("norm_bound", peak, 1 + 1e-9, "<=", peak <= 1 + 1e-9)


ALL_CHECKS: tuple[Check, ...] = (
    check_laplace_pair,
    check_volterra_vs_inversion,
    check_final_value,
    check_markovian_equivalence,
    check_transparency_zero,
    check_threshold_scaling,
    check_anisotropic_non_transparency,
    check_positivity,
    check_branch_continuity,
    check_transparency_window,
    check_propagation_algebra,
    check_slow_light_delay,
    check_convergence_order,
    check_norm_bound,
)
