"""Tests for the bandedge command line."""

from pathlib import Path

import numpy as np
import pytest
import yaml
from click.testing import CliRunner

from bandedge.cli import EXIT_FAILURE, EXIT_IO, EXIT_USAGE, cli
from bandedge.export import read_columns


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


class TestSpectrumCommand:
    """Tests for `bandedge spectrum`."""

    def test_figure_preset(self, runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "fig2a.csv"
        result = runner.invoke(cli, ["spectrum", "--figure", "2a", "--out", str(out)])

        assert result.exit_code == 0, result.output
        assert "Transparency point: delta = 0" in result.output
        columns = read_columns(out)
        assert len(columns["delta"]) == 4001
        zero = int(np.flatnonzero(columns["delta"] == 0.0)[0])
        assert columns["re_chi"][zero] == 0.0
        assert columns["im_chi"][zero] == 0.0

    def test_shifted_edge(self, runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "fig2b.csv"
        result = runner.invoke(cli, ["spectrum", "--figure", "2b", "--out", str(out)])

        assert result.exit_code == 0, result.output
        columns = read_columns(out)
        index = int(np.flatnonzero(columns["delta"] == 1.0)[0])
        assert columns["absorption"][index] == 0.0

    def test_markovian_symmetric(self, runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "markov.csv"
        result = runner.invoke(
            cli, ["spectrum", "--model", "markov", "--gamma1", "1", "--out", str(out)]
        )

        assert result.exit_code == 0, result.output
        assert "Transparency point" not in result.output
        assert "Absorption maximum at delta = 0" in result.output
        absorption = read_columns(out)["absorption"]
        np.testing.assert_allclose(absorption, absorption[::-1], rtol=1e-12)

    def test_with_dispersion_and_plot(self, runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "spectrum.csv"
        args = [
            "spectrum",
            "--delta-min", "-1",
            "--delta-max", "1",
            "--delta-step", "0.5",
            "--with-dispersion",
            "--format", "plot",
            "--out", str(out),
        ]  # fmt: skip
        result = runner.invoke(cli, args)

        assert result.exit_code == 0, result.output
        assert "group_velocity" in read_columns(out)
        assert (tmp_path / "spectrum.py").exists()

    def test_dispersion_from_config_file(self, runner: CliRunner, tmp_path: Path) -> None:
        config = tmp_path / "run.yaml"
        config.write_text("with_dispersion: true\ndelta_min: -1\ndelta_max: 1\ndelta_step: 1\n")
        out = tmp_path / "spectrum.csv"
        result = runner.invoke(cli, ["--config", str(config), "spectrum", "--out", str(out)])

        assert result.exit_code == 0, result.output
        assert "dre_chi_ddelta" in read_columns(out)

    def test_deterministic_output(self, runner: CliRunner, tmp_path: Path) -> None:
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        runner.invoke(cli, ["spectrum", "--figure", "2c", "--out", str(first)])
        runner.invoke(
            cli, ["spectrum", "--figure", "2c", "--workers", "3", "--out", str(second)]
        )
        assert first.read_bytes() == second.read_bytes()

    def test_empty_grid(self, runner: CliRunner, tmp_path: Path) -> None:
        result = runner.invoke(
            cli,
            ["spectrum", "--delta-min", "1", "--delta-max", "-1", "--out", str(tmp_path / "x")],
        )
        assert result.exit_code == EXIT_USAGE
        assert "grid is empty" in result.output

    def test_invalid_parameter(self, runner: CliRunner, tmp_path: Path) -> None:
        result = runner.invoke(cli, ["spectrum", "--gamma", "-1", "--out", str(tmp_path / "x")])
        assert result.exit_code == EXIT_USAGE
        assert "gamma must be >= 0" in result.output

    def test_gamma_zero_has_no_steady_state(self, runner: CliRunner, tmp_path: Path) -> None:
        result = runner.invoke(cli, ["spectrum", "--gamma", "0", "--out", str(tmp_path / "x")])
        assert result.exit_code == EXIT_FAILURE
        assert "GammaZeroSteadyStateUndefined" in result.output

    def test_missing_output_directory(self, runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "absent" / "spectrum.csv"
        result = runner.invoke(cli, ["spectrum", "--out", str(out)])
        assert result.exit_code == EXIT_IO


class TestConfigOption:
    """Tests for `--config` handling."""

    def test_unknown_key(self, runner: CliRunner, tmp_path: Path) -> None:
        config = tmp_path / "run.yaml"
        config.write_text("temperature: 4\n")
        result = runner.invoke(cli, ["--config", str(config), "spectrum"])
        assert result.exit_code == EXIT_USAGE
        assert "unknown config key" in result.output

    def test_missing_file(self, runner: CliRunner, tmp_path: Path) -> None:
        result = runner.invoke(cli, ["--config", str(tmp_path / "absent.yaml"), "spectrum"])
        assert result.exit_code == EXIT_IO


class TestDynamicsCommand:
    """Tests for `bandedge dynamics`."""

    def test_no_drive(self, runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "trajectory.csv"
        args = ["dynamics", "--omega-rabi", "0", "--horizon", "1", "--out", str(out)]
        result = runner.invoke(cli, args)

        assert result.exit_code == 0, result.output
        columns = read_columns(out)
        assert np.all(columns["re_a1"] == 0)
        assert np.all(columns["im_a1"] == 0)

    def test_cross_check(self, runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "trajectory.csv"
        args = ["dynamics", "--delta", "1", "--horizon", "5", "--cross-check", "--out", str(out)]
        result = runner.invoke(cli, args)

        assert result.exit_code == 0, result.output
        assert "Max pointwise error vs oracle" in result.output

    def test_anisotropic_unsupported(self, runner: CliRunner, tmp_path: Path) -> None:
        args = ["dynamics", "--model", "aniso", "--out", str(tmp_path / "t.csv")]
        result = runner.invoke(cli, args)
        assert result.exit_code == EXIT_FAILURE
        assert "UnsupportedModel" in result.output

    def test_undamped_undetuned_markovian_cross_check(
        self, runner: CliRunner, tmp_path: Path
    ) -> None:
        out = tmp_path / "trajectory.csv"
        args = [
            "dynamics",
            "--model",
            "markov",
            "--gamma",
            "0",
            "--gamma1",
            "0",
            "--delta",
            "0",
            "--horizon",
            "2",
            "--cross-check",
            "--out",
            str(out),
        ]
        result = runner.invoke(cli, args)

        assert result.exit_code == 0, result.output
        assert "Steady-state error: n/a (gamma = 0)" in result.output
        assert "keeps oscillating" not in result.output
        columns = read_columns(out)
        np.testing.assert_allclose(columns["im_a1"], -0.01 * columns["t"], atol=1e-12)


class TestPropagateCommand:
    """Tests for `bandedge propagate`."""

    def test_figure_window(self, runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "pulse.csv"
        result = runner.invoke(cli, ["propagate", "--figure-window", "--out", str(out)])

        assert result.exit_code == 0, result.output
        assert "Energy retention (iso)" in result.output
        assert "Energy retention (markov" in result.output
        assert len(read_columns(out)["t"]) == 4096

    def test_input_pulse(self, runner: CliRunner, tmp_path: Path) -> None:
        first = tmp_path / "first.csv"
        second = tmp_path / "second.csv"
        base = ["propagate", "--carrier", "-0.5", "--bandwidth", "0.05", "--samples", "1024"]
        assert runner.invoke(cli, [*base, "--length", "0", "--out", str(first)]).exit_code == 0

        result = runner.invoke(
            cli, ["propagate", "--carrier", "-0.5", "--input", str(first), "--out", str(second)]
        )
        assert result.exit_code == 0, result.output
        assert "Group delay" in result.output

    def test_absorbed_pulse(self, runner: CliRunner, tmp_path: Path) -> None:
        args = [
            "propagate",
            "--model", "markov",
            "--length", "100",
            "--out", str(tmp_path / "pulse.csv"),
        ]  # fmt: skip
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        assert "Group delay: n/a" in result.output


class TestDosCommand:
    """Tests for `bandedge dos`."""

    def test_figure_preset(self, runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "dos.csv"
        result = runner.invoke(cli, ["dos", "--figure", "1b", "--out", str(out)])

        assert result.exit_code == 0, result.output
        columns = read_columns(out)
        assert columns["x"][0] == -2.0
        assert columns["x"][-1] == 4.0
        index = int(np.flatnonzero(columns["x"] == 0.0)[0])
        assert columns["density"][index] == np.inf

    def test_spectrum_figure_rejected(self, runner: CliRunner, tmp_path: Path) -> None:
        result = runner.invoke(cli, ["dos", "--figure", "2a", "--out", str(tmp_path / "d.csv")])
        assert result.exit_code == EXIT_USAGE


class TestValidateCommand:
    """Tests for `bandedge validate`."""

    def test_missing_output_directory(self, runner: CliRunner, tmp_path: Path) -> None:
        out = tmp_path / "absent" / "report.yaml"
        result = runner.invoke(cli, ["validate", "--out", str(out)])
        assert result.exit_code == EXIT_IO

    @pytest.mark.parametrize("ca_scale", ["1", "-1"])
    def test_full_suite_passes(self, runner: CliRunner, tmp_path: Path, ca_scale: str) -> None:
        out = tmp_path / "report.yaml"
        result = runner.invoke(cli, ["validate", "--ca-scale", ca_scale, "--out", str(out)])

        assert result.exit_code == 0, result.output
        report = yaml.safe_load(out.read_text())
        assert report["passed"] is True
        assert report["failures"] == []
