"""Moment fitting, plug-in KL, and quadrature marginal densities."""

import math

import numpy as np
import pytest

from netgibbs import gaussian_oracle as go
from netgibbs import graph, harness, metrics
from netgibbs import potentials as pot


class TestFitGaussian:
    def test_identical_samples_give_ridge_covariance(self):
        samples = np.full((50, 2), 3.0)
        fit = metrics.fit_gaussian(samples, ridge=1e-6)
        np.testing.assert_allclose(fit.cov, 1e-6 * np.eye(2))
        np.testing.assert_allclose(fit.mean, [3.0, 3.0])

    def test_standard_normal_mean_within_clt_band(self):
        rng = np.random.default_rng(0)
        draws = rng.standard_normal(1_000_000)
        fit = metrics.fit_gaussian(draws)
        assert abs(fit.mean[0]) < 4.0 / math.sqrt(1_000_000)
        assert abs(fit.cov[0, 0] - 1.0) < 4.0 * math.sqrt(2.0 / 999_999)

    def test_joint_samples_recover_oracle_parameters(self):
        net = graph.make_network(
            1, 1, 1, 1.0, [(0, 0, 1.0)], [pot.quadratic([0.0], 2.0)], [pot.quadratic([1.0], 2.0)]
        )
        joint = go.exact_joint(net)
        rng = np.random.default_rng(5)
        fit = metrics.fit_gaussian(joint.sample(200_000, rng))
        se_mean = np.sqrt(np.diag(joint.cov) / 200_000)
        np.testing.assert_array_less(np.abs(fit.mean - joint.mean), 4 * se_mean)

    def test_too_few_samples_rejected(self):
        with pytest.raises(ValueError, match="samples"):
            metrics.fit_gaussian(np.zeros((3, 2)))


class TestMarginalDensity:
    def test_quadratic_matches_gaussian_closed_form(self):
        f = pot.quadratic([0.0], 2.0)
        g = pot.quadratic([1.0], 2.0)
        eta = 0.5
        grid = np.linspace(-6.0, 7.0, 2001)
        dens = metrics.marginal_density_1d(f, g, eta, grid)
        net = graph.make_network(1, 1, 1, eta, [(0, 0, 1.0)], [f], [g])
        pi_x = go.exact_joint(net).marginal([0])
        exact = np.exp(pi_x.logpdf(grid[:, None]))
        assert float(np.max(np.abs(dens.pdf() - exact))) < 1e-6
        closed_form = metrics.quadrature_density_1d(lambda x: float(pi_x.logpdf(np.array([[x]]))[0]), grid)
        assert metrics.tv_quadrature(dens, closed_form) < 1e-6

    def test_zero_g_marginal_is_composite_density(self):
        # with g identically zero the coupling integrates out exactly
        f = pot.quadratic([0.4], 3.0)
        grid = np.linspace(-6.0, 7.0, 1501)
        dens = metrics.marginal_density_1d(f, pot.zero(), 0.7, grid)
        ref = metrics.quadrature_density_1d(lambda x: -f.value(np.array([x])), grid)
        assert float(np.max(np.abs(dens.pdf() - ref.pdf()))) < 1e-9

    def test_small_eta_approaches_composite(self):
        f = pot.quadratic([0.0], 2.0)
        g = pot.quadratic([0.0], 2.0)
        grid = np.linspace(-4.0, 4.0, 2001)
        dens = metrics.marginal_density_1d(f, g, 1e-3, grid)
        nu = metrics.quadrature_density_1d(lambda x: -(f.value(np.array([x])) + g.value(np.array([x]))), grid)
        assert metrics.tv_quadrature(dens, nu) <= 0.02

    def test_mass_is_normalized(self):
        dens = metrics.marginal_density_1d(
            pot.quadratic([0.0], 1.0), pot.quadratic([0.5], 1.5), 0.3, np.linspace(-8, 8, 1201)
        )
        assert dens.mass() == pytest.approx(1.0, abs=1e-8)

    def test_narrow_grid_rejected(self):
        with pytest.raises(metrics.CoverageError):
            metrics.marginal_density_1d(
                pot.quadratic([0.0], 2.0), pot.quadratic([0.0], 2.0), 0.5, np.linspace(-1.5, 1.5, 301)
            )

    def test_cdf_monotone_and_normalized(self):
        dens = metrics.marginal_density_1d(
            pot.quadratic([0.0], 2.0), pot.quadratic([1.0], 2.0), 1.0, np.linspace(-6, 7, 1201)
        )
        cdf = dens.cdf()
        assert np.all(np.diff(cdf) >= 0)
        assert cdf[-1] == pytest.approx(1.0, abs=1e-8)


class TestEmpiricalKl:
    def test_samples_from_target_give_near_zero(self):
        rng = np.random.default_rng(3)
        target = go.GaussianDist([0.0], [[1.0]])
        kl = metrics.empirical_kl_vs_gaussian(target.sample(1_000_000, rng), target)
        assert 0.0 <= kl <= 1e-4

    def test_unit_mean_shift(self):
        rng = np.random.default_rng(4)
        target = go.GaussianDist([1.0], [[1.0]])
        draws = rng.standard_normal((400_000, 1))
        kl = metrics.empirical_kl_vs_gaussian(draws, target)
        assert kl == pytest.approx(0.5, abs=0.01)

    def test_decays_along_quadratic_chain(self):
        net = graph.make_network(
            1, 1, 1, 1.0, [(0, 0, 1.0)], [pot.quadratic([0.0], 2.0)], [pot.quadratic([1.0], 2.0)]
        )
        pi_x = go.exact_joint(net).marginal([0])
        spec = harness.InitSpec(kind="gaussian", mean=np.full((1, 1), 5.0), std=1.0)
        res = harness.run_chain_batch(net, n_chains=20000, sweeps=3, seed=17, init=spec)
        kls = [metrics.empirical_kl_vs_gaussian(res.X[:, k, 0], pi_x) for k in range(3)]
        assert kls[0] > kls[1] > kls[2] >= 0


class TestQuadratureHelpers:
    def test_tv_of_identical_densities_is_zero(self):
        grid = np.linspace(-6, 6, 801)
        d1 = metrics.quadrature_density_1d(lambda x: -x * x, grid)
        assert metrics.tv_quadrature(d1, d1) == 0.0

    def test_tv_matches_gaussian_closed_form(self):
        grid = np.linspace(-9, 9, 6001)
        p = metrics.quadrature_density_1d(lambda x: -0.5 * x * x, grid)
        q = metrics.quadrature_density_1d(lambda x: -0.5 * (x - 1.0) ** 2, grid)
        exact = go.tv_1d(go.GaussianDist([0.0], [[1.0]]), go.GaussianDist([1.0], [[1.0]]))
        assert metrics.tv_quadrature(p, q) == pytest.approx(exact, abs=1e-6)

    def test_mismatched_grids_rejected(self):
        d1 = metrics.quadrature_density_1d(lambda x: -x * x, np.linspace(-6, 6, 801))
        d2 = metrics.quadrature_density_1d(lambda x: -x * x, np.linspace(-6, 6, 901))
        with pytest.raises(ValueError, match="grid"):
            metrics.tv_quadrature(d1, d2)
