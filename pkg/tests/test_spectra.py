"""Tests for steady-state susceptibility, dispersion, spectrum tables and features."""

import logging
import math

import numpy as np
import pytest

from bandedge.model import ReservoirModel, SystemParams
from bandedge.spectra import (
    FIGURE_GRID,
    GammaZeroSteadyStateUndefined,
    GridError,
    GridSpec,
    GroupVelocity,
    ScalingParams,
    ThresholdDivergence,
    a1_steady,
    density_of_modes,
    dre_chi_ddelta,
    group_velocity,
    spectrum,
    spectrum_features,
    susceptibility,
    susceptibility_values,
    symmetric_about,
    transparency_point,
)

ISO = ReservoirModel.isotropic()
ANISO = ReservoirModel.anisotropic()
MARKOV = ReservoirModel.markovian()
UNIT = ScalingParams()


class TestSusceptibility:
    """Tests for single-point susceptibility values."""

    def test_below_edge_value(self) -> None:
        params = SystemParams(delta_g=1.0, delta=0.0)
        assert susceptibility(ISO, params).chi == pytest.approx(-0.8 - 0.4j, abs=1e-12)

    def test_above_edge_value(self) -> None:
        params = SystemParams(delta_g=0.0, delta=1.0)
        assert susceptibility(ISO, params).chi == pytest.approx(-1 / (1 - 1.5j), abs=1e-12)

    def test_markovian_resonance(self) -> None:
        assert susceptibility(MARKOV, SystemParams()).chi == pytest.approx(-1j, abs=1e-12)

    @pytest.mark.parametrize("edge", [-5.0, -1.0, 0.0, 0.3, 1.0, 5.0])
    def test_isotropic_transparency_is_exact(self, edge: float) -> None:
        params = SystemParams(delta_g=edge, delta=edge)
        assert susceptibility(ISO, params).chi == 0

    def test_sample_properties(self) -> None:
        sample = susceptibility(MARKOV, SystemParams())
        assert sample.absorption == pytest.approx(1.0)
        assert sample.dispersion == pytest.approx(0.0, abs=1e-15)

    def test_prefactor_scales_linearly(self) -> None:
        params = SystemParams(delta_g=1.0)
        scaled = susceptibility(ISO, params, ScalingParams(chi_prefactor=3.0)).chi
        assert scaled == pytest.approx(3 * susceptibility(ISO, params).chi)

    def test_markovian_matches_lorentzian(self) -> None:
        params = SystemParams(gamma1=1.0)
        deltas = np.linspace(-3, 3, 61)
        chi = susceptibility_values(MARKOV, params, UNIT, deltas)
        lorentzian = -1 / (deltas - 1j * (params.gamma + params.gamma1) / 2)
        np.testing.assert_allclose(chi, lorentzian, rtol=0, atol=1e-12)

    def test_branch_continuity(self) -> None:
        chi = susceptibility_values(ISO, SystemParams(), UNIT, [-1e-22, 0.0, 1e-22])
        assert np.max(np.abs(chi)) < 1e-10

    @pytest.mark.parametrize("ca_scale", [0.5, 1.0, 2.0, -1.0])
    def test_anisotropic_edge_independent_of_constant(self, ca_scale: float) -> None:
        params = SystemParams(delta_g=0.5, delta=0.5)
        chi = susceptibility(ReservoirModel.anisotropic(ca_scale), params).chi
        assert abs(chi) == pytest.approx(1 / abs(0.5 + 0.5j), rel=1e-12)

    def test_gamma_zero_has_no_steady_state(self) -> None:
        with pytest.raises(GammaZeroSteadyStateUndefined):
            susceptibility(ISO, SystemParams(gamma=0.0))

    def test_weak_probe_warning(self, caplog: pytest.LogCaptureFixture) -> None:
        with caplog.at_level(logging.WARNING):
            susceptibility(ISO, SystemParams(omega_rabi=0.5, delta_g=1.0))
        assert "Weak-probe" in caplog.text

    @pytest.mark.parametrize("name", ["chi_prefactor", "omega_over_c"])
    def test_scaling_must_be_positive(self, name: str) -> None:
        with pytest.raises(ValueError, match=name):
            ScalingParams(**{name: 0.0})


class TestSteadyAmplitude:
    """Tests for the steady upper-level amplitude."""

    def test_markovian_value(self) -> None:
        assert a1_steady(MARKOV, SystemParams()) == pytest.approx(-0.01j)

    def test_kernel_off_value(self) -> None:
        params = SystemParams(gamma1=0.0)
        assert a1_steady(MARKOV, params) == pytest.approx(-0.02j)

    def test_zero_at_transparency(self) -> None:
        assert a1_steady(ISO, SystemParams(delta_g=0.4, delta=0.4)) == 0

    def test_zero_without_drive(self) -> None:
        assert a1_steady(ISO, SystemParams(omega_rabi=0.0, delta=1.0)) == 0

    def test_chi_is_conjugate_of_amplitude(self) -> None:
        params = SystemParams(delta_g=0.7, delta=-0.2)
        chi = susceptibility(ISO, params).chi
        expected = -np.conj(a1_steady(ISO, params)) / params.omega_rabi
        assert chi == pytest.approx(expected)


class TestDispersion:
    """Tests for the dispersion slope and group velocity."""

    @pytest.mark.parametrize("model", [ISO, ANISO, MARKOV])
    def test_slope_matches_finite_difference(self, model: ReservoirModel) -> None:
        params = SystemParams(delta_g=0.0, delta=-0.5)
        h = 1e-5
        upper = susceptibility(model, params.with_delta(-0.5 + h)).chi.real
        lower = susceptibility(model, params.with_delta(-0.5 - h)).chi.real
        numeric = (upper - lower) / (2 * h)
        assert dre_chi_ddelta(model, params) == pytest.approx(numeric, rel=1e-6)

    def test_markovian_slope_at_resonance(self) -> None:
        params = SystemParams(gamma1=1.0)
        expected = -4 / (params.gamma + params.gamma1) ** 2
        assert dre_chi_ddelta(MARKOV, params) == pytest.approx(expected)

    @pytest.mark.parametrize("model", [ISO, ANISO])
    def test_slope_diverges_at_edge(self, model: ReservoirModel) -> None:
        with pytest.raises(ThresholdDivergence):
            dre_chi_ddelta(model, SystemParams(delta_g=1.0, delta=1.0))

    def test_slope_grows_as_inverse_square_root(self) -> None:
        gaps = np.logspace(-4, -2, 9)
        slopes = [dre_chi_ddelta(ISO, SystemParams(delta=-gap)) for gap in gaps]
        fit = np.polyfit(np.log(gaps), np.log(slopes), 1)[0]
        assert fit == pytest.approx(-0.5, abs=0.05)

    def test_group_velocity_at_edge(self) -> None:
        assert group_velocity(ISO, SystemParams(delta_g=0.2, delta=0.2)) == GroupVelocity(
            0.0, at_threshold=True
        )

    def test_group_velocity_dilute_medium(self) -> None:
        scaling = ScalingParams(chi_prefactor=1e-12)
        velocity = group_velocity(ISO, SystemParams(delta=-0.5), scaling)
        assert not velocity.at_threshold
        assert velocity.value == pytest.approx(1.0, abs=1e-9)

    def test_slow_light_below_edge(self) -> None:
        velocity = group_velocity(ISO, SystemParams(delta=-0.5))
        assert 0 < velocity.value < 1


class TestGridSpec:
    """Tests for detuning grids."""

    def test_figure_grid_size(self) -> None:
        assert FIGURE_GRID.size == 4001

    def test_figure_grid_contains_exact_integers(self) -> None:
        points = FIGURE_GRID.points()
        for value in (-10.0, -1.0, 0.0, 1.0, 10.0):
            assert value in points

    def test_single_point(self) -> None:
        np.testing.assert_array_equal(GridSpec(0.5, 0.5, 0.1).points(), [0.5])

    def test_empty_grid(self) -> None:
        with pytest.raises(GridError, match="grid is empty"):
            GridSpec(1.0, -1.0, 0.1)

    def test_non_positive_step(self) -> None:
        with pytest.raises(GridError, match="delta_step must be > 0"):
            GridSpec(-1.0, 1.0, 0.0)

    def test_uneven_span(self) -> None:
        with pytest.raises(GridError, match="whole number of steps"):
            GridSpec(0.0, 1.0, 0.3)

    def test_grid_error_is_value_error(self) -> None:
        with pytest.raises(ValueError):
            GridSpec(0.0, math.inf, 0.1)


class TestSpectrum:
    """Tests for spectrum tables."""

    def test_isotropic_zero_on_grid(self) -> None:
        table = spectrum(ISO, SystemParams(delta_g=1.0), UNIT, FIGURE_GRID)
        index = int(np.flatnonzero(table.deltas == 1.0)[0])
        assert table.chi[index] == 0
        assert len(table) == FIGURE_GRID.size

    def test_absorption_non_negative(self) -> None:
        for model in (ISO, ANISO, MARKOV):
            for edge in (-1.0, 0.0, 1.0):
                table = spectrum(model, SystemParams(delta_g=edge), UNIT, FIGURE_GRID)
                assert np.min(table.absorption) >= -1e-12

    def test_anisotropic_never_transparent(self) -> None:
        table = spectrum(ANISO, SystemParams(), UNIT, FIGURE_GRID)
        assert np.min(np.abs(table.chi)) > 0.01

    def test_workers_do_not_change_result(self) -> None:
        params = SystemParams(delta_g=-1.0)
        serial = spectrum(ISO, params, UNIT, FIGURE_GRID, workers=1, with_dispersion=True)
        threaded = spectrum(ISO, params, UNIT, FIGURE_GRID, workers=4, with_dispersion=True)
        assert serial.chi.tobytes() == threaded.chi.tobytes()
        assert serial.dre_chi_ddelta.tobytes() == threaded.dre_chi_ddelta.tobytes()

    def test_invalid_workers(self) -> None:
        with pytest.raises(GridError, match="workers"):
            spectrum(ISO, SystemParams(), UNIT, FIGURE_GRID, workers=0)

    def test_dispersion_columns(self) -> None:
        grid = GridSpec(-1.0, 1.0, 0.5)
        table = spectrum(ISO, SystemParams(), UNIT, grid, with_dispersion=True)
        assert table.has_dispersion
        assert np.isnan(table.dre_chi_ddelta[2])
        assert np.isnan(table.group_velocity[2])
        assert np.all(np.isfinite(np.delete(table.dre_chi_ddelta, 2)))

    def test_without_dispersion(self) -> None:
        table = spectrum(ISO, SystemParams(), UNIT, GridSpec(-1.0, 1.0, 0.5))
        assert not table.has_dispersion
        assert table.group_velocity is None

    def test_samples(self) -> None:
        table = spectrum(MARKOV, SystemParams(), UNIT, GridSpec(-1.0, 1.0, 1.0))
        samples = list(table.samples())
        assert [s.delta for s in samples] == [-1.0, 0.0, 1.0]
        assert samples[1].chi == pytest.approx(-1j)


class TestSpectrumFeatures:
    """Tests for spectral shape summaries."""

    def test_isotropic_minimum_at_edge(self) -> None:
        table = spectrum(ISO, SystemParams(), UNIT, FIGURE_GRID)
        features = spectrum_features(table, delta_g=0.0)
        assert features.minimum_delta == 0.0
        assert features.minimum_absorption == 0.0
        assert features.left_peak is not None
        assert features.right_peak is not None
        assert not features.is_symmetric()

    @pytest.mark.parametrize("edge", [-1.0, 1.0])
    def test_minimum_follows_edge(self, edge: float) -> None:
        table = spectrum(ISO, SystemParams(delta_g=edge), UNIT, FIGURE_GRID)
        assert spectrum_features(table, delta_g=edge).minimum_delta == edge

    def test_markovian_symmetric_peak(self) -> None:
        table = spectrum(MARKOV, SystemParams(), UNIT, FIGURE_GRID)
        assert symmetric_about(table, 0.0)
        assert spectrum_features(table, delta_g=0.0).peak_delta == 0.0

    def test_isotropic_asymmetric(self) -> None:
        table = spectrum(ISO, SystemParams(), UNIT, FIGURE_GRID)
        assert not symmetric_about(table, 0.0)

    def test_transparency_point(self) -> None:
        assert transparency_point(ISO, SystemParams(delta_g=0.25)) == 0.25
        assert transparency_point(ANISO, SystemParams()) is None
        assert transparency_point(MARKOV, SystemParams()) is None


class TestDensityOfModes:
    """Tests for the band-edge density of modes."""

    def test_isotropic(self) -> None:
        assert density_of_modes(ISO, 4.0) == 0.5
        assert density_of_modes(ISO, -1.0) == 0.0
        assert density_of_modes(ISO, 0.0) == math.inf

    def test_anisotropic(self) -> None:
        assert density_of_modes(ANISO, 4.0) == 2.0
        assert density_of_modes(ANISO, -4.0) == 0.0
        assert density_of_modes(ANISO, 0.0) == 0.0

    def test_markovian_flat(self) -> None:
        assert density_of_modes(MARKOV, -3.0) == density_of_modes(MARKOV, 3.0) == 1.0
