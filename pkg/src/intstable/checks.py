"""Validation checks shared by the CLI `validate-all` experiment and the
acceptance test suite.

Each check returns a CheckResult with a pass flag and the numbers behind
it.  Checks that need Monte Carlo data take the simulated arrays as
arguments; producing them (and choosing their scale) is the caller's job.
"""

from dataclasses import dataclass
from typing import Dict

import numpy as np
from scipy.integrate import quad

from .analytic import (
    HittingPlaceLaw,
    StableParams,
    derived_exponents,
    mellin_product_identity,
)
from . import quadrature, stats

CORE_PARAM_SETS = ((2.0, 0.5), (1.5, 1.0 / 3.0), (1.0, 0.5), (0.8, 0.6))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    stats: Dict


def _random_admissible(rng):
    a = rng.uniform(0.05, 2.0)
    if a > 1.0:
        lo, hi = 1.0 - 1.0 / a, 1.0 / a
    else:
        lo, hi = 0.0, 1.0
    # stay off the boundary so kappa > 0 holds strictly
    r = rng.uniform(lo + 1e-3 * (hi - lo), hi - 1e-3 * (hi - lo))
    return a, r


def check_exponents(n_random=1000, seed=1234, tol=1e-12) -> CheckResult:
    """theta at the two reference points plus the exponent identities
    chi = alpha*theta and delta = 1/(2(1-gamma)) on random admissible pairs."""
    worst = 0.0
    d = derived_exponents(StableParams(2.0, 0.5))
    worst = max(worst, abs(d.theta - 0.25))
    d = derived_exponents(StableParams(1.5, 1.0 / 3.0))
    worst = max(worst, abs(d.theta - 1.0 / 6.0))
    rng = np.random.default_rng(seed)
    for _ in range(n_random):
        a, r = _random_admissible(rng)
        d = derived_exponents(StableParams(a, r))
        worst = max(worst, abs(d.chi - a * d.theta))
        worst = max(worst, abs(d.delta - 1.0 / (2.0 * (1.0 - d.gamma))))
    return CheckResult("exponent-algebra", worst <= tol,
                       {"worst_abs_err": worst, "tol": tol})


def check_fresnel(tol=1e-8) -> CheckResult:
    """Numeric oscillatory power integrals against their closed forms."""
    worst = 0.0
    for nu in (0.1, 0.3, 0.5, 0.7, 0.9):
        for u in (-5.0, -1.0, -0.25, 0.25, 1.0, 5.0):
            for kind in ("cos", "sin"):
                closed = quadrature.fresnel_closed_form(nu, u, kind)
                numeric = quadrature.fresnel_power_integral(nu, u, kind)
                denom = max(abs(closed), 1e-300)
                worst = max(worst, abs(numeric - closed) / denom)
    return CheckResult("fresnel-oracles", worst <= tol,
                       {"worst_rel_err": worst, "tol": tol})


def check_time_integrals(tol=1e-6) -> CheckResult:
    """Closed-form axis starting-point time integrals vs the numeric
    double integral, over the core parameter sets and nu in {0.8, 0.9}."""
    worst = 0.0
    for a, r in CORE_PARAM_SETS:
        p = StableParams(a, r)
        for nu in (0.8, 0.9):
            for case, coord in (("y_pos", 1.0), ("y_neg", -1.0), ("x_neg", -1.0)):
                closed, numeric = quadrature.integrated_mellin_axis(
                    case, coord, nu, p)
                worst = max(worst, abs(numeric - closed) / abs(closed))
    return CheckResult("time-integral-cross-check", worst <= tol,
                       {"worst_rel_err": worst, "tol": tol})


def check_product_identities(tol=1e-10) -> CheckResult:
    """Mellin product identities for the four closed-form families."""
    cases = [
        StableParams(1.0, 0.5),
        StableParams(2.0, 0.5),
        StableParams(0.7, 0.55),
        StableParams(1.8, 0.5),  # gamma <= 1/3 branch
    ]
    worst = 0.0
    for p in cases:
        for s in (-0.5, 0.25, 0.5, 0.75):
            lhs, rhs = mellin_product_identity(p, s)
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return CheckResult("product-identities", worst <= tol,
                       {"worst_rel_err": worst, "tol": tol})


def mckean_cdf(z, y=-1.0):
    """CDF of the Brownian-case vertical hitting-place density, by numeric
    integration (tail integrated in the 1/z variable to keep quad honest)."""
    ay = abs(y)
    c = 3.0 / (2.0 * np.pi)
    f = lambda u: c * np.sqrt(ay) * u ** 1.5 / (ay ** 3 + u ** 3)
    if z <= 0.0:
        return 0.0
    if z <= ay:
        return quad(f, 0.0, z)[0]
    return 1.0 - quad(lambda s: f(1.0 / s) / s ** 2, 0.0, 1.0 / z)[0]


def check_mckean_ks(places_main, places_half, tol=0.02) -> CheckResult:
    """KS distance of simulated Brownian-case hitting places to the McKean
    law, plus the requirement that halving the step does not increase it."""
    ks_main = stats.ks_distance(places_main, mckean_cdf)
    ks_half = stats.ks_distance(places_half, mckean_cdf)
    n_cmp = len(places_half)
    ks_main_cmp = stats.ks_distance(places_main[:n_cmp], mckean_cdf)
    passed = ks_main <= tol and ks_half <= ks_main_cmp
    return CheckResult("mckean-ks", passed, {
        "ks": ks_main, "tol": tol,
        "ks_half_step": ks_half,
        "ks_same_paths_full_step": ks_main_cmp,
        "n": len(places_main),
    })


def check_hitting_mellin(places, p: StableParams, y0=-1.0,
                         s_grid=(0.25, 0.5, 0.75)) -> CheckResult:
    """Empirical Mellin transform of simulated hitting places against the
    vertical-axis law, within max(3 bootstrap SE, 5% relative)."""
    law = HittingPlaceLaw(p, "vertical", y0)
    rows, _ = stats.mellin_sweep_report(places, law, s_grid)
    ok = all(
        abs(r["empirical"] - r["analytic"]) <= max(3.0 * r["se"],
                                                   0.05 * abs(r["analytic"]))
        for r in rows
    )
    return CheckResult(f"hitting-mellin-a{p.alpha:g}", ok,
                       {"rows": rows, "n": len(places)})


def check_theta_fit(curve, p: StableParams, window=(10.0, 1e3),
                    rel_tol=0.15) -> CheckResult:
    """Tail-fit persistence exponent within a relative band of theta."""
    theta = derived_exponents(p).theta
    fit = stats.fit_tail_exponent(curve, window)
    ok = abs(fit.exponent_hat - theta) <= rel_tol * theta
    return CheckResult(f"theta-fit-a{p.alpha:g}", ok, {
        "theta_hat": fit.exponent_hat, "stderr": fit.stderr,
        "theta": theta, "rel_tol": rel_tol, "window": fit.window,
    })


def check_hill(places, p: StableParams, k=2000) -> CheckResult:
    """Hill tail index of the hitting place within 2 stderr of chi."""
    chi = derived_exponents(p).chi
    fit = stats.hill_estimator(places, k)
    ok = abs(fit.exponent_hat - chi) <= 2.0 * fit.stderr
    return CheckResult("hill-tail", ok, {
        "hill": fit.exponent_hat, "stderr": fit.stderr, "chi": chi, "k": k,
    })
