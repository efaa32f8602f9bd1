"""CLI interface for bandedge."""

import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, NoReturn, TypeVar

import click
import numpy as np
from rich.console import Console
from rich.logging import RichHandler

from bandedge.config import (
    FIGURE_CHOICES,
    FORMAT_CHOICES,
    MODE_CHOICES,
    MODEL_CHOICES,
    WINDOW_PRESET,
    ConfigError,
    RunConfig,
    build_run_config,
)
from bandedge.dynamics.crosscheck import cross_validate
from bandedge.dynamics.volterra import solve_volterra
from bandedge.export.plot import PlotKind, write_plot_script
from bandedge.export.tables import (
    read_pulse,
    write_density,
    write_pulse,
    write_spectrum,
    write_trajectory,
)
from bandedge.model.errors import BandedgeError, ParameterError
from bandedge.model.reservoir import ReservoirModel
from bandedge.propagation.medium import (
    MediumSlab,
    PulseAbsorbed,
    energy_retention,
    group_delay,
    propagate as propagate_pulse,
)
from bandedge.propagation.pulse import gaussian_pulse
from bandedge.spectra.features import spectrum_features, transparency_point
from bandedge.spectra.modes import density_of_modes
from bandedge.spectra.table import GridError, spectrum as compute_spectrum
from bandedge.validation.checks import CheckContext
from bandedge.validation.report import render_report, run_suite, write_report

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_IO = 3

F = TypeVar("F", bound=Callable[..., Any])


def _fail(message: str, code: int) -> NoReturn:
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _run(
    ctx: click.Context,
    subcommand: str,
    flags: dict[str, Any],
    presets: dict[str, Any] | None = None,
) -> RunConfig:
    try:
        return build_run_config(ctx.obj["config_file"], flags, subcommand, presets)
    except OSError as e:
        _fail(str(e), EXIT_IO)
    except (ConfigError, ParameterError, GridError) as e:
        _fail(str(e), EXIT_USAGE)


def _guarded(action: Callable[[], None]) -> None:
    """Run ``action`` and map library errors onto exit codes."""
    try:
        action()
    except OSError as e:
        _fail(str(e), EXIT_IO)
    except (ConfigError, ParameterError, GridError) as e:
        _fail(str(e), EXIT_USAGE)
    except BandedgeError as e:
        _fail(f"{type(e).__name__}: {e}", EXIT_FAILURE)


def model_options(func: F) -> F:
    options = [
        click.option("--model", type=click.Choice(MODEL_CHOICES), help="Reservoir model"),
        click.option("--omega-rabi", type=float, help="Rabi frequency Omega (units of beta)"),
        click.option("--gamma", type=float, help="Background decay rate of level 1"),
        click.option("--beta", type=float, help="Isotropic band-edge coupling"),
        click.option("--beta-a", type=float, help="Anisotropic band-edge coupling"),
        click.option("--gamma1", type=float, help="Markovian decay rate to level 2"),
        click.option("--delta-g", type=float, help="Band-edge detuning delta_g"),
        click.option("--delta", type=float, help="Probe detuning delta"),
        click.option("--ca-scale", type=float, help="Multiplier on the anisotropic constant"),
        click.option("--chi-prefactor", type=float, help="Susceptibility prefactor"),
        click.option("--omega-over-c", type=float, help="omega/c in the field equation"),
        click.option("--out", type=click.Path(path_type=Path), help="Output file"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _write_plot(config: RunConfig, path: Path, kind: PlotKind) -> None:
    if config.format == "plot":
        script = write_plot_script(path, kind)
        click.echo(f"Plot script: {script}")


@click.group()
@click.option(
    "--config",
    "config_file",
    type=click.Path(path_type=Path),
    help="YAML file of settings; command-line flags take precedence",
)
@click.option("-v", "--verbose", is_flag=True, help="Log debug output")
@click.pass_context
def cli(ctx: click.Context, config_file: Path | None, verbose: bool) -> None:
    """Band-edge transparency simulator."""
    ctx.ensure_object(dict)
    ctx.obj["config_file"] = config_file
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
    )


@cli.command("spectrum")
@model_options
@click.option("--delta-min", type=float, help="Lowest probe detuning")
@click.option("--delta-max", type=float, help="Highest probe detuning")
@click.option("--delta-step", type=float, help="Probe detuning step")
@click.option("--figure", type=click.Choice(FIGURE_CHOICES), help="Reproduce a figure preset")
@click.option("--format", "fmt", type=click.Choice(FORMAT_CHOICES), help="Output format")
@click.option("--with-dispersion", is_flag=True, help="Add dispersion columns")
@click.option("--workers", type=int, help="Threads for the detuning sweep")
@click.pass_context
def spectrum_cmd(
    ctx: click.Context, fmt: str | None, with_dispersion: bool, **flags: Any
) -> None:
    """Susceptibility spectrum over a detuning grid."""
    # an unset flag leaves the config file value in place
    flags["with_dispersion"] = True if with_dispersion else None
    config = _run(ctx, "spectrum", {**flags, "format": fmt})

    def action() -> None:
        model = config.reservoir()
        params = config.system_params()
        table = compute_spectrum(
            model,
            params,
            config.scaling(),
            config.grid(),
            workers=config.workers,
            with_dispersion=config.with_dispersion,
            weak_probe_threshold=config.weak_probe_threshold,
        )
        out = config.out or Path("spectrum.csv")
        write_spectrum(out, table)
        click.echo(f"Wrote {len(table):,} {model.name} spectrum points to {out}")
        edge = transparency_point(model, params, config.scaling())
        if edge is not None:
            click.echo(f"  Transparency point: delta = {edge:g}")
        features = spectrum_features(table, params.delta_g)
        click.echo(f"  Absorption maximum at delta = {features.peak_delta:g}")
        _write_plot(config, out, PlotKind.SPECTRUM)

    _guarded(action)


@cli.command("dynamics")
@model_options
@click.option("--step", type=float, help="Time step h (units of 1/beta)")
@click.option("--horizon", type=float, help="Final time T")
@click.option("--order", type=click.IntRange(1, 2), help="Product-integration order")
@click.option("--mode", type=click.Choice(MODE_CHOICES), help="Perturbative or coupled")
@click.option("--contour-nodes", type=int, help="Inverse-Laplace contour nodes")
@click.option("--cross-check", is_flag=True, help="Compare with the inverse-Laplace oracle")
@click.option("--format", "fmt", type=click.Choice(FORMAT_CHOICES), help="Output format")
@click.pass_context
def dynamics_cmd(ctx: click.Context, fmt: str | None, cross_check: bool, **flags: Any) -> None:
    """Time-domain amplitudes a0(t), a1(t)."""
    config = _run(ctx, "dynamics", {**flags, "format": fmt})

    def action() -> None:
        model = config.reservoir()
        params = config.system_params()
        trajectory = solve_volterra(model, params, config.solver(), config.trajectory_mode())
        out = config.out or Path("trajectory.csv")
        write_trajectory(out, trajectory)
        click.echo(f"Wrote {len(trajectory):,} trajectory samples to {out}")
        if cross_check:
            report = cross_validate(model, params, config.solver())
            click.echo(f"  Max pointwise error vs oracle: {report.max_pointwise_error:.3e}")
            if report.steady_state_error is None:
                click.echo("  Steady-state error: n/a (gamma = 0)")
            else:
                click.echo(f"  Steady-state error: {report.steady_state_error:.3e}")
            if report.long_time_oscillation:
                click.echo("  |a1| keeps oscillating over the last quarter of the horizon")
        _write_plot(config, out, PlotKind.TRAJECTORY)

    _guarded(action)


@cli.command("validate")
@model_options
@click.option("--workers", type=int, help="Threads for spectrum sweeps")
@click.pass_context
def validate_cmd(ctx: click.Context, **flags: Any) -> None:
    """Run the invariant suite; exit 0 only if every check passes."""
    config = _run(ctx, "validate", flags)
    if config.out is not None and not config.out.parent.is_dir():
        _fail(f"output directory {config.out.parent} does not exist", EXIT_IO)

    def action() -> None:
        check_context = CheckContext(
            params=config.system_params(),
            scaling=config.scaling(),
            ca_scale=config.ca_scale,
            workers=config.workers,
        )
        report = run_suite(check_context)
        render_report(report)
        if config.out is not None:
            write_report(report, config.out)
            click.echo(f"Report written to {config.out}")
        if not report.passed:
            _fail(f"failing checks: {', '.join(report.failures)}", EXIT_FAILURE)

    _guarded(action)


@cli.command("propagate")
@model_options
@click.option("--carrier", type=float, help="Carrier detuning (default: delta_g)")
@click.option("--bandwidth", type=float, help="Std of the pulse intensity spectrum")
@click.option("--length", type=float, help="Slab length L")
@click.option("--samples", type=int, help="Time samples (power of two)")
@click.option(
    "--input",
    "input_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Pulse CSV to propagate instead of a Gaussian",
)
@click.option("--figure-window", is_flag=True, help="Transparency-window preset")
@click.option("--format", "fmt", type=click.Choice(FORMAT_CHOICES), help="Output format")
@click.pass_context
def propagate_cmd(
    ctx: click.Context,
    fmt: str | None,
    input_path: Path | None,
    figure_window: bool,
    **flags: Any,
) -> None:
    """Propagate a probe pulse through a slab."""
    presets = WINDOW_PRESET if figure_window else None
    config = _run(ctx, "propagate", {**flags, "format": fmt}, presets)

    def action() -> None:
        params = config.system_params()
        carrier = params.delta_g if config.carrier is None else config.carrier
        if input_path is not None:
            pulse = read_pulse(input_path, carrier_detuning=carrier)
        else:
            pulse = gaussian_pulse(carrier, config.bandwidth, samples=config.samples)
        slab = MediumSlab(config.length, config.reservoir(), params, config.scaling())
        threshold = config.weak_probe_threshold
        output = propagate_pulse(pulse, slab, weak_probe_threshold=threshold)
        out = config.out or Path("pulse.csv")
        write_pulse(out, output)
        click.echo(f"Wrote propagated pulse ({len(output):,} samples) to {out}")
        click.echo(f"  Energy retention ({slab.model.name}): {energy_retention(pulse, output):.6f}")
        try:
            click.echo(f"  Group delay: {group_delay(pulse, output):.6g}")
        except PulseAbsorbed as e:
            click.echo(f"  Group delay: n/a ({e})")
        if figure_window:
            contrast = MediumSlab(config.length, ReservoirModel.markovian(), params, slab.scaling)
            contrast_out = propagate_pulse(pulse, contrast, weak_probe_threshold=threshold)
            retained = energy_retention(pulse, contrast_out)
            click.echo(f"  Energy retention (markov, gamma1={params.gamma1:g}): {retained:.3e}")
        _write_plot(config, out, PlotKind.PULSE)

    _guarded(action)


@cli.command("dos")
@click.option("--model", type=click.Choice(MODEL_CHOICES), help="Reservoir model")
@click.option("--x-min", type=float, help="Lowest omega - omega_g")
@click.option("--x-max", type=float, help="Highest omega - omega_g")
@click.option("--x-step", type=float, help="Grid step")
@click.option("--figure", type=click.Choice(FIGURE_CHOICES), help="Reproduce a figure preset")
@click.option("--out", type=click.Path(path_type=Path), help="Output file")
@click.option("--format", "fmt", type=click.Choice(FORMAT_CHOICES), help="Output format")
@click.pass_context
def dos_cmd(ctx: click.Context, fmt: str | None, **flags: Any) -> None:
    """Density of modes near the band edge."""
    config = _run(ctx, "dos", {**flags, "format": fmt})

    def action() -> None:
        model = config.reservoir()
        offsets = config.dos_grid().points()
        density = np.array([density_of_modes(model, float(x)) for x in offsets])
        out = config.out or Path("dos.csv")
        write_density(out, offsets, density)
        click.echo(f"Wrote {len(offsets):,} {model.name} density-of-modes samples to {out}")
        _write_plot(config, out, PlotKind.DENSITY)

    _guarded(action)


def main() -> None:
    cli()  # pylint: disable=no-value-for-parameter
