"""Number-basis oracle: wavefunctions, conditioning, moment extraction."""

import math

import numpy as np
import pytest

from twinbeam import (
    DegenerateOutcomeError,
    FockVector,
    HomodyneSetting,
    UnphysicalStateError,
    condition_fock,
    condition_homodyne,
    gauss_hermite_grid,
    homodyne_density,
    moments_fock,
    quadrature_wavefunction,
    remote_prep,
    twb,
    twb_fock,
)

LAM_N1 = 1.0 / math.sqrt(3.0)  # twin beam with N = 1
R_N1 = math.atanh(LAM_N1)


class TestTwbFock:
    def test_zero_is_double_vacuum(self):
        state = twb_fock(0.0, 4)
        expected = np.zeros((5, 5))
        expected[0, 0] = 1.0
        np.testing.assert_array_equal(state.amps.real, expected)
        assert state.leakage == 0.0

    def test_amplitudes_and_leakage(self):
        state = twb_fock(0.8, 40)
        diag = np.diagonal(state.amps).real
        np.testing.assert_allclose(
            diag, math.sqrt(1 - 0.64) * 0.8 ** np.arange(41), rtol=1e-14
        )
        assert state.amps[3, 2] == 0.0
        assert state.leakage == pytest.approx(1.130782121458171e-08, rel=1e-6)

    def test_validation(self):
        with pytest.raises(ValueError):
            twb_fock(1.0, 10)
        with pytest.raises(ValueError):
            twb_fock(-0.1, 10)
        with pytest.raises(ValueError):
            twb_fock(0.5, 200)  # dimension cap

    def test_fock_vector_shape_checks(self):
        with pytest.raises(ValueError):
            FockVector(cutoff=3, amps=np.zeros(3))
        with pytest.raises(ValueError):
            FockVector(cutoff=3, amps=np.zeros((4, 5)))


class TestWavefunction:
    def test_ground_state(self):
        psi = quadrature_wavefunction(0.0, 3)
        assert psi[0] == pytest.approx(0.8932438417380023, abs=1e-15)
        assert psi[1] == 0.0

    def test_explicit_low_orders(self):
        x = 0.37
        psi = quadrature_wavefunction(x, 2)
        psi0 = (2.0 / math.pi) ** 0.25 * math.exp(-x * x)
        assert psi[0] == pytest.approx(psi0, rel=1e-14)
        assert psi[1] == pytest.approx(2.0 * x * psi0, rel=1e-14)
        assert psi[2] == pytest.approx((2.0 * x * psi[1] - psi0) / math.sqrt(2.0), rel=1e-13)

    def test_orthonormality(self):
        # trapezoid on a wide grid resolves the p, q <= 20 Gram matrix
        xs = np.linspace(-9.0, 9.0, 6001)
        table = quadrature_wavefunction(xs, 20)
        gram = np.trapezoid(table[:, :, None] * table[:, None, :], xs, axis=0)
        np.testing.assert_allclose(gram, np.eye(21), atol=1e-8)

    def test_ground_state_variance(self):
        xs = np.linspace(-6.0, 6.0, 4001)
        density = quadrature_wavefunction(xs, 0)[:, 0] ** 2
        norm = np.trapezoid(density, xs)
        var = np.trapezoid(xs**2 * density, xs)
        assert norm == pytest.approx(1.0, abs=1e-12)
        assert var == pytest.approx(0.25, abs=1e-12)

    def test_vectorized_matches_scalar(self):
        xs = np.array([-1.4, 0.0, 2.2])
        table = quadrature_wavefunction(xs, 12)
        for i, x in enumerate(xs):
            np.testing.assert_allclose(
                table[i], quadrature_wavefunction(float(x), 12), rtol=1e-14
            )


class TestQuadratureGrid:
    def test_weights_normalized(self):
        grid = gauss_hermite_grid(40)
        assert float(np.sum(grid.weights)) == pytest.approx(1.0, rel=1e-13)

    def test_integrates_gaussian_moments(self):
        # E[(mu + sqrt(2) s u)^2] = mu^2 + s^2 under the weight
        grid = gauss_hermite_grid(20)
        mu, s = 0.7, 1.3
        nodes = mu + math.sqrt(2.0) * s * grid.points
        assert float(grid.weights @ nodes) == pytest.approx(mu, rel=1e-13)
        assert float(grid.weights @ nodes**2) == pytest.approx(
            mu * mu + s * s, rel=1e-13
        )

    def test_validation(self):
        with pytest.raises(ValueError):
            gauss_hermite_grid(0)


class TestConditionFock:
    def test_ideal_frozen_moments(self):
        # lam = 1/sqrt(3), x = 0.5: mean sqrt(3)/4, variances 1/8 and 1/2
        state = twb_fock(LAM_N1, 40)
        density, rho = condition_fock(state, 0.5, 1.0)
        m = moments_fock(rho)
        assert density == pytest.approx(0.43939128946772243, abs=1e-12)
        assert m.mean_x == pytest.approx(0.4330127018922193, abs=1e-12)
        assert m.mean_y == pytest.approx(0.0, abs=1e-13)
        assert m.var_x == pytest.approx(0.125, abs=1e-12)
        assert m.var_y == pytest.approx(0.5, abs=1e-12)
        assert m.cov_xy == pytest.approx(0.0, abs=1e-13)
        assert m.purity == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("lam", (0.3, LAM_N1, 0.8))
    @pytest.mark.parametrize("eta", (0.6, 0.8))
    @pytest.mark.parametrize("x", (0.0, 0.7))
    def test_noisy_record_matches_gaussian_engine(self, lam, eta, x):
        r = math.atanh(lam)
        density, rho = condition_fock(twb_fock(lam, 40), x, eta)
        m = moments_fock(rho)
        out = condition_homodyne(twb(r), HomodyneSetting(mode=0, efficiency=eta), x)
        assert density == pytest.approx(out.probability_density, abs=1e-6)
        assert m.mean_x == pytest.approx(out.state.mean[0], abs=1e-5)
        assert m.var_x == pytest.approx(out.state.cov[0, 0], abs=1e-5)
        assert m.var_y == pytest.approx(out.state.cov[1, 1], abs=1e-5)
        n_th = remote_prep(r, eta, x).n_th
        assert m.purity == pytest.approx(1.0 / (2.0 * n_th + 1.0), abs=1e-4)

    def test_density_matches_marginal_distribution(self):
        state = twb_fock(LAM_N1, 40)
        dens = homodyne_density(twb(R_N1), HomodyneSetting(mode=0))
        for x in (-1.0, 0.2, 1.5):
            density, _ = condition_fock(state, x, 1.0)
            assert density == pytest.approx(dens(x), abs=1e-9)

    def test_truncation_stability(self):
        # deepening the cutoff must not move the answer at tolerance
        coarse_density, coarse = condition_fock(twb_fock(0.8, 30), 0.7, 0.8)
        fine_density, fine = condition_fock(twb_fock(0.8, 60), 0.7, 0.8)
        mc, mf = moments_fock(coarse), moments_fock(fine)
        assert coarse_density == pytest.approx(fine_density, abs=1e-5)
        assert mc.var_x == pytest.approx(mf.var_x, abs=1e-5)
        assert mc.purity == pytest.approx(mf.purity, abs=1e-5)

    def test_node_count_stability(self):
        state = twb_fock(0.8, 40)
        d40, rho40 = condition_fock(state, 0.7, 0.6, gauss_hermite_grid(40))
        d80, rho80 = condition_fock(state, 0.7, 0.6, gauss_hermite_grid(80))
        assert d40 == pytest.approx(d80, abs=1e-10)
        np.testing.assert_allclose(rho40, rho80, atol=1e-9)

    def test_degenerate_record(self):
        with pytest.raises(DegenerateOutcomeError):
            condition_fock(twb_fock(0.3, 20), 40.0, 1.0)

    def test_validation(self):
        single = FockVector(cutoff=2, amps=np.array([1.0, 0.0, 0.0]))
        with pytest.raises(ValueError):
            condition_fock(single, 0.0, 1.0)
        with pytest.raises(ValueError):
            condition_fock(twb_fock(0.3, 10), 0.0, 0.0)


class TestMomentsFock:
    def test_vacuum(self):
        rho = np.zeros((5, 5))
        rho[0, 0] = 1.0
        m = moments_fock(rho)
        assert m.mean_x == 0.0 and m.mean_y == 0.0
        assert m.var_x == pytest.approx(0.25, abs=1e-15)
        assert m.var_y == pytest.approx(0.25, abs=1e-15)
        assert m.purity == pytest.approx(1.0, abs=1e-15)

    def test_thermal_mixture(self):
        # occupation 1: variances 3/4, purity 1/3
        n = np.arange(61)
        weights = 0.5 ** (n + 1)
        rho = np.diag(weights / weights.sum())
        m = moments_fock(rho)
        assert m.var_x == pytest.approx(0.75, abs=1e-12)
        assert m.var_y == pytest.approx(0.75, abs=1e-12)
        assert m.purity == pytest.approx(1.0 / 3.0, abs=1e-12)

    def test_coherent_like_displacement(self):
        # single-mode conditioning output carries the heralded mean
        _, rho = condition_fock(twb_fock(LAM_N1, 40), 1.3, 1.0)
        m = moments_fock(rho)
        assert m.mean_x == pytest.approx(math.sqrt(3.0) / 4.0 * 2.6, abs=1e-10)

    def test_validation(self):
        with pytest.raises(UnphysicalStateError):
            moments_fock(np.zeros((3, 4)))
        with pytest.raises(UnphysicalStateError):
            moments_fock(np.array([[0.5, 0.3], [0.1, 0.5]]))  # not hermitian
        with pytest.raises(UnphysicalStateError):
            moments_fock(0.5 * np.eye(4))  # trace 2
