"""Sweep-engine tests: surface structure, cell consistency, spectrum wrapper."""

import math

import numpy as np
import pytest

from accelrad import (AtomParams, FreeSpace, Mirror, OracleMismatchError,
                      ShoMotion, SweepGrid, SweepResult, bessel_j,
                      fig2_surface, fig3_surface, free_space_rate,
                      mirror_rate, rate_surface, spectrum)
from accelrad.constants import SPEED_OF_LIGHT as C


class TestFig2Surface:
    def test_peak_cell_value(self):
        res = fig2_surface([1.8412], [1])
        assert res.values[0, 0] == pytest.approx(0.33856713916548536,
                                                 rel=1e-10)

    def test_zero_amplitude_column(self):
        res = fig2_surface([0.0], range(1, 31))
        assert np.all(res.values == 0.0)

    def test_below_threshold_suppression_cell(self):
        res = fig2_surface([5.0], [12])
        assert res.values[0, 0] < 1e-5

    def test_default_grid_maximum_location(self):
        res = fig2_surface()
        i, j = np.unravel_index(np.argmax(res.values), res.values.shape)
        assert res.grid.axis2_values[j] == 1.0
        assert 1.7 < res.grid.axis1_values[i] < 2.0

    def test_monotone_activation_threshold(self):
        # The smallest a_tilde where J_n^2 exceeds 1e-3 of its own peak
        # is nondecreasing in n.
        a = np.linspace(0.0, 30.0, 3001)
        res = fig2_surface(a, range(1, 31))
        thresholds = []
        for j in range(res.values.shape[1]):
            col = res.values[:, j]
            above = np.nonzero(col > 1e-3 * col.max())[0]
            thresholds.append(a[above[0]])
        assert all(b >= a_ for a_, b in zip(thresholds, thresholds[1:]))

    def test_cells_match_single_point_calls(self):
        res = fig2_surface()
        rng = np.random.default_rng(11)
        n_cells = res.values.size
        for flat in rng.choice(n_cells, size=max(1, n_cells // 100),
                               replace=False):
            i, j = np.unravel_index(flat, res.values.shape)
            a = res.grid.axis1_values[i]
            n = int(res.grid.axis2_values[j])
            direct = bessel_j(n, a) ** 2
            assert abs(res.values[i, j] - direct) \
                <= 1e-12 * max(res.values[i, j], direct) + 1e-14

    def test_absolute_mode_restores_prefactor(self):
        g, Omega = 0.3, 2.0
        rel = fig2_surface([1.8412], [1])
        absolute = fig2_surface([1.8412], [1], g=g, Omega=Omega)
        assert absolute.metadata["normalization"] == "hz"
        assert rel.metadata["normalization"] == "prefactor-omitted"
        assert absolute.values[0, 0] == pytest.approx(
            2.0 * math.pi * g**2 / Omega * rel.values[0, 0], rel=1e-14)

    def test_requires_both_prefactor_parameters(self):
        with pytest.raises(ValueError):
            fig2_surface([1.0], [1], g=0.3)


class TestFig3Surface:
    def test_zero_coupling_row(self):
        res = fig3_surface([1e-9], [0.0, 0.5])
        assert res.values[0, 0] == 0.0

    def test_cqed_example_cell(self):
        # A = 1 nm, alpha = 0.2, Omega/2pi = 10 GHz (frozen in test_rates).
        res = fig3_surface([1e-9], [0.2])
        assert res.values[0, 0] == pytest.approx(1.0838223059911484e-05,
                                                 rel=1e-12)

    def test_cells_match_single_point_calls(self):
        from accelrad import small_amplitude_rate

        res = fig3_surface()
        Omega = res.grid.fixed["Omega"]
        rng = np.random.default_rng(5)
        n_cells = res.values.size
        for flat in rng.choice(n_cells, size=n_cells // 100, replace=False):
            i, j = np.unravel_index(flat, res.values.shape)
            atom = AtomParams(omega0=0.5 * Omega,
                              alpha=res.grid.axis2_values[j])
            motion = ShoMotion(amplitude=res.grid.axis1_values[i],
                               Omega=Omega)
            direct = small_amplitude_rate(atom, motion)
            assert res.values[i, j] == pytest.approx(direct, rel=1e-12)

    def test_quadratic_amplitude_scaling(self):
        res = fig3_surface([1e-10, 1e-9], [0.2])
        assert res.values[1, 0] == pytest.approx(100.0 * res.values[0, 0],
                                                 rel=1e-12)

    def test_default_surface_reaches_the_reported_decade(self):
        res = fig3_surface()
        decade = (res.values >= 1e-4) & (res.values < 1e-3)
        assert np.any(decade)

    def test_exact_rate_tracks_approximation_where_valid(self):
        res = fig3_surface()
        exact = res.aux["exact_rate_hz"]
        valid = res.aux["approx_valid"]
        assert np.all(valid)  # nm amplitudes at GHz drives are deep in domain
        rel = np.abs(exact - res.values) / exact
        assert np.nanmax(rel) < 1e-2

    def test_out_of_domain_cells_are_flagged_not_fatal(self):
        # Omega = 2 rad/s makes the dimensionless amplitude order unity.
        res = fig3_surface([1e6, 5e7], [0.2], Omega=2.0)
        assert res.aux["approx_valid"][0, 0]
        assert not res.aux["approx_valid"][1, 0]


class TestGridTypes:
    def test_axes_must_be_monotone(self):
        with pytest.raises(ValueError):
            SweepGrid("a", (1.0, 1.0), "b", (1.0, 2.0))

    def test_axes_must_be_non_empty(self):
        with pytest.raises(ValueError):
            SweepGrid("a", (), "b", (1.0,))

    def test_values_shape_is_checked(self):
        grid = SweepGrid("a", (1.0, 2.0), "b", (1.0,))
        with pytest.raises(ValueError):
            SweepResult(grid=grid, values=np.zeros((3, 3)), metadata={})

    def test_values_must_be_finite_non_negative(self):
        grid = SweepGrid("a", (1.0,), "b", (1.0,))
        with pytest.raises(ValueError):
            SweepResult(grid=grid, values=np.array([[-1.0]]), metadata={})


class TestRateSurface:
    def test_cells_equal_direct_calls(self):
        atom = AtomParams(omega0=1.0, g=0.4)
        motion = ShoMotion(amplitude=1.0, Omega=2.0)
        amplitudes = [1e-3 * C, 2e-3 * C]
        res = rate_surface(atom, motion, FreeSpace(), amplitudes, [1, 2, 3])
        for i, amplitude in enumerate(amplitudes):
            cell_motion = ShoMotion(amplitude=amplitude, Omega=2.0)
            for j, n in enumerate((1, 2, 3)):
                assert res.values[i, j] == free_space_rate(
                    atom, cell_motion, n).rate

    def test_closed_channels_are_zero(self):
        atom = AtomParams(omega0=3.0, g=0.4)
        motion = ShoMotion(amplitude=1.0, Omega=1.0)
        res = rate_surface(atom, motion, FreeSpace(), [1.0], [1, 2, 3, 4])
        assert list(res.values[0, :2]) == [0.0, 0.0]
        assert res.values[0, 3] > 0.0


class TestSpectrum:
    def test_free_space_ladder(self):
        atom = AtomParams(omega0=1.0, g=1.0)
        motion = ShoMotion(amplitude=0.02, Omega=2.0)
        lines = spectrum(atom, motion, FreeSpace(), 5)
        assert [line.omega for line in lines] == pytest.approx(
            [1.0, 3.0, 5.0, 7.0, 9.0])

    @pytest.mark.parametrize("n", range(1, 7))
    def test_mirror_node_parity(self, n):
        # k z0 = pi/2 at this n: sin^2(pi/2 - pi n/2) = cos^2(pi n/2)
        # vanishes for odd n.
        atom = AtomParams(omega0=0.5, g=1.0)
        omega = n * 1.0 - 0.5
        k = omega / C
        geom = Mirror(z0=(math.pi / 2) / k)
        motion = ShoMotion(amplitude=1.0 / k, Omega=1.0)
        line = mirror_rate(atom, motion, geom, n)
        if n % 2 == 1:
            assert line.rate < 1e-30 * atom.g**2
        else:
            assert line.rate > 0.0

    def test_empty_below_threshold(self):
        atom = AtomParams(omega0=10.0, g=1.0)
        motion = ShoMotion(amplitude=0.02, Omega=1.0)
        assert spectrum(atom, motion, FreeSpace(), 5) == []

    def test_verified_spectrum_passes_on_consistent_physics(self):
        atom = AtomParams(omega0=1.0, g=0.5)
        motion = ShoMotion(amplitude=0.4 * C, Omega=2.0)
        lines = spectrum(atom, motion, FreeSpace(), 3, verify=True)
        assert len(lines) == 3

    def test_verification_flags_a_corrupted_closed_form(self, monkeypatch):
        import accelrad.oracle as oracle_module

        real = oracle_module.one_period_amplitude

        def skewed(*args, **kwargs):
            res = real(*args, **kwargs)
            return type(res)(amplitude=res.amplitude, rate=res.rate * 1.01,
                             error_estimate=res.error_estimate,
                             panels_used=res.panels_used)

        monkeypatch.setattr(oracle_module, "one_period_amplitude", skewed)
        atom = AtomParams(omega0=1.0, g=0.5)
        motion = ShoMotion(amplitude=0.4 * C, Omega=2.0)
        with pytest.raises(OracleMismatchError):
            spectrum(atom, motion, FreeSpace(), 2, verify=True)
