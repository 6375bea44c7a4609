import numpy as np
import pytest

from intstable.analytic import (
    HittingPlaceLaw,
    StableParams,
    hitting_place_mellin,
    sample_hitting_place_closed_form,
)
from intstable.errors import InvalidParameterError
from intstable.simulate import PathConfig, sample_hitting_batch
from intstable.stats import (
    SurvivalCurve,
    empirical_mellin,
    fit_tail_exponent,
    hill_estimator,
    ks_distance,
    mellin_sweep_report,
    survival_curve,
)


class TestSurvivalCurve:
    def test_all_censored(self):
        curve = survival_curve([np.inf] * 20, [1.0, 2.0, 5.0], censor_time=5.0)
        assert np.all(curve.survival == 1.0)

    def test_single_sample(self):
        curve = survival_curve([5.0], [4.0, 6.0], censor_time=10.0)
        assert curve.survival[0] == 1.0
        assert curve.survival[1] == 0.0

    def test_counting_oracle(self):
        rng = np.random.default_rng(60)
        t = rng.exponential(3.0, 100)
        grid = np.linspace(0.5, 8.0, 12)
        curve = survival_curve(t, grid)
        for g, s in zip(grid, curve.survival):
            assert s == (t > g).mean()

    def test_monotone(self):
        rng = np.random.default_rng(61)
        curve = survival_curve(rng.exponential(1.0, 500),
                               np.linspace(0.1, 5.0, 30))
        assert np.all(np.diff(curve.survival) <= 0.0)

    def test_empty_rejected(self):
        with pytest.raises(InvalidParameterError):
            survival_curve([], [1.0])

    def test_grid_domain(self):
        with pytest.raises(InvalidParameterError):
            survival_curve([1.0], [0.0, 1.0], censor_time=2.0)
        with pytest.raises(InvalidParameterError):
            survival_curve([1.0], [1.0, 3.0], censor_time=2.0)

    def test_batch_input(self):
        cfg = PathConfig(StableParams(2.0, 0.5), 0.0, -1.0, 1e-2, 20.0, 62)
        batch = sample_hitting_batch(cfg, 100)
        curve = survival_curve(batch, np.geomspace(0.1, 20.0, 20))
        assert curve.hit_times.size == 100


class TestFitTailExponent:
    def test_pareto_recovery(self):
        rng = np.random.default_rng(102)
        for theta in (0.2, 0.5, 0.8):
            t = rng.pareto(theta, 100000) + 1.0
            grid = np.geomspace(1.5, 200.0, 40)
            curve = survival_curve(t, grid)
            fit = fit_tail_exponent(curve, (1.5, 200.0), n_boot=300)
            assert abs(fit.exponent_hat - theta) < 2.0 * fit.stderr, theta

    def test_exact_power_curve(self):
        grid = np.geomspace(1.0, 100.0, 20)
        curve = SurvivalCurve(times=grid, survival=grid ** -0.37,
                              at_risk=(grid ** -0.37 * 1e6).astype(int),
                              censor_time=100.0)
        fit = fit_tail_exponent(curve, (1.0, 100.0))
        assert abs(fit.exponent_hat - 0.37) < 1e-12
        assert fit.stderr > 0.0

    def test_too_few_points(self):
        grid = np.geomspace(1.0, 100.0, 5)
        curve = SurvivalCurve(times=grid, survival=grid ** -0.5,
                              at_risk=(grid ** -0.5 * 1e4).astype(int),
                              censor_time=100.0)
        with pytest.raises(InvalidParameterError):
            fit_tail_exponent(curve, (1.0, 100.0))

    def test_window_validation(self):
        grid = np.geomspace(1.0, 50.0, 20)
        curve = SurvivalCurve(times=grid, survival=grid ** -0.5,
                              at_risk=(grid ** -0.5 * 1e4).astype(int),
                              censor_time=50.0)
        with pytest.raises(InvalidParameterError):
            fit_tail_exponent(curve, (10.0, 100.0))


class TestHill:
    def test_pareto_recovery(self):
        rng = np.random.default_rng(64)
        for chi in (0.2, 0.5, 0.8):
            x = (rng.pareto(chi, 100000) + 1.0)
            fit = hill_estimator(x, 3000)
            assert abs(fit.exponent_hat - chi) < 2.0 * fit.stderr, chi

    def test_scale_invariance(self):
        rng = np.random.default_rng(65)
        x = rng.pareto(0.5, 10000) + 1.0
        a = hill_estimator(x, 500).exponent_hat
        b = hill_estimator(7.0 * x, 500).exponent_hat
        assert a == pytest.approx(b, rel=1e-12)

    def test_k_validation(self):
        rng = np.random.default_rng(66)
        x = rng.pareto(0.5, 1000) + 1.0
        with pytest.raises(InvalidParameterError):
            hill_estimator(x, 5)
        with pytest.raises(InvalidParameterError):
            hill_estimator(x, 1000)

    def test_nonpositive_rejected(self):
        x = np.concatenate([np.full(50, -1.0), np.full(10, 2.0)])
        with pytest.raises(InvalidParameterError):
            hill_estimator(x, 30)


class TestEmpiricalMellin:
    def test_s_one_exact(self):
        rng = np.random.default_rng(67)
        ev = empirical_mellin(rng.pareto(2.0, 50) + 1.0, 1.0)
        assert ev.value == 1.0 and ev.se == 0.0

    def test_constant_samples(self):
        ev = empirical_mellin(np.full(100, 3.0), 0.5)
        assert ev.value == pytest.approx(3.0 ** -0.5, rel=1e-12)

    def test_bootstrap_se_scales(self):
        rng = np.random.default_rng(68)
        x1 = rng.pareto(3.0, 20000) + 1.0
        x4 = rng.pareto(3.0, 80000) + 1.0
        se1 = empirical_mellin(x1, 0.5, n_boot=400).se
        se4 = empirical_mellin(x4, 0.5, n_boot=400).se
        assert abs(se1 / se4 - 2.0) < 0.4  # n^{-1/2} within 20%

    def test_heavy_tail_guard(self):
        rng = np.random.default_rng(69)
        x = rng.pareto(0.5, 5000) + 1.0  # survival index 0.5
        ev = empirical_mellin(x, 1.4, tail_index=0.5)
        assert ev.heavy_tail_warning
        ev2 = empirical_mellin(x, 0.5, tail_index=0.5)
        assert not ev2.heavy_tail_warning

    def test_nonexistent_mean_rejected(self):
        rng = np.random.default_rng(70)
        x = rng.pareto(0.5, 100) + 1.0
        with pytest.raises(InvalidParameterError):
            empirical_mellin(x, 1.6, tail_index=0.5)

    def test_empty(self):
        with pytest.raises(InvalidParameterError):
            empirical_mellin([], 0.5)


class TestKS:
    def test_inverse_cdf_draws(self):
        rng = np.random.default_rng(71)
        n = 10000
        x = np.tan(np.pi * (rng.uniform(0, 1, n) - 0.5))  # exact Cauchy
        d = ks_distance(x, lambda v: 0.5 + np.arctan(v) / np.pi)
        assert d < 1.63 / np.sqrt(n)  # 1% Kolmogorov level

    def test_point_mass_at_median(self):
        x = np.zeros(1000)
        d = ks_distance(x, lambda v: 0.5 + np.arctan(v) / np.pi)
        assert d == pytest.approx(0.5, abs=1e-3)

    def test_shifted_samples(self):
        rng = np.random.default_rng(72)
        x = rng.normal(1.0, 1.0, 5000)
        from scipy.stats import norm
        d = ks_distance(x, norm.cdf)
        assert d > 0.3


class TestMellinSweep:
    def test_closed_form_sampler_agrees(self):
        rng = np.random.default_rng(73)
        p = StableParams(2.0, 0.5)
        law = HittingPlaceLaw(p, "horizontal", -1.0)
        x = sample_hitting_place_closed_form(p, "horizontal", -1.0, rng,
                                             size=200000)
        rows, max_z = mellin_sweep_report(x, law, (0.25, 0.5, 0.75),
                                          n_boot=300)
        assert max_z < 3.0

    def test_s_one_row(self):
        rng = np.random.default_rng(74)
        p = StableParams(2.0, 0.5)
        law = HittingPlaceLaw(p, "vertical", -1.0)
        x = sample_hitting_place_closed_form(p, "vertical", -1.0, rng,
                                             size=1000)
        rows, _ = mellin_sweep_report(x, law, (1.0,))
        assert rows[0]["empirical"] == 1.0
        assert rows[0]["analytic"] == pytest.approx(1.0, abs=1e-12)
        assert rows[0]["z"] == 0.0

    def test_power_against_perturbed_law(self):
        # a 10% gamma perturbation must be detected loudly
        rng = np.random.default_rng(75)
        p = StableParams(2.0, 0.5)
        law = HittingPlaceLaw(p, "vertical", -1.0)
        x = sample_hitting_place_closed_form(p, "vertical", -1.0, rng,
                                             size=1000000)
        rows, max_z = mellin_sweep_report(x, law, (0.25, 0.5, 0.75),
                                          n_boot=100)
        assert max_z < 4.0  # correct law fits

        import intstable.analytic as analytic
        g = 1.0 / 3.0 * 1.1
        bad = []
        for s in (0.25, 0.5, 0.75):
            bad.append(np.sin(np.pi * g * s) / np.sin(np.pi * (1 - g) * s))
        zs = []
        for s, target in zip((0.25, 0.5, 0.75), bad):
            ev = empirical_mellin(x, s, n_boot=100)
            zs.append(abs(ev.value - target) / ev.se)
        assert max(zs) > 5.0
