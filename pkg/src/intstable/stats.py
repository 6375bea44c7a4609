"""Estimators connecting Monte Carlo output to the limit theory.

Survival curves with first-class censoring, log-log tail fits with
path-level bootstrap errors, a Hill estimator for the hitting-place tail,
and empirical Mellin transforms with heavy-tail-aware error bars.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .analytic import HittingPlaceLaw, derived_exponents, hitting_place_mellin
from .errors import InvalidParameterError

_N_BOOT = 500


def _hit_times(samples):
    """Hitting times as an array, censored paths mapped to +inf."""
    if hasattr(samples, "hitting_times"):
        return samples.hitting_times()
    out = []
    for s in samples:
        if hasattr(s, "censored"):
            out.append(np.inf if s.censored else s.t0)
        else:
            out.append(s)
    return np.asarray(out, dtype=float)


@dataclass(frozen=True)
class SurvivalCurve:
    times: np.ndarray
    survival: np.ndarray
    at_risk: np.ndarray
    censor_time: float
    # raw per-path hitting times (inf = censored); carried so that tail
    # fits can bootstrap at path level rather than grid level
    hit_times: Optional[np.ndarray] = field(default=None, repr=False)


@dataclass(frozen=True)
class TailFit:
    exponent_hat: float
    stderr: float
    window: Tuple[float, float]
    method: str
    n_effective: int

    def __post_init__(self):
        if not self.stderr > 0.0:
            raise InvalidParameterError("stderr must be > 0")
        if not self.window[0] < self.window[1]:
            raise InvalidParameterError("window must be increasing")


@dataclass(frozen=True)
class MellinEval:
    s: float
    value: float
    se: float
    n: int
    provenance: str = "empirical"
    heavy_tail_warning: bool = False


def survival_curve(samples, grid, censor_time=None) -> SurvivalCurve:
    """Empirical survival of the hitting time on a grid.

    survival(t) is the fraction of paths with t0 > t; censored paths count
    as surviving through the horizon.
    """
    times = _hit_times(samples)
    if times.size == 0:
        raise InvalidParameterError("empty sample set")
    grid = np.asarray(grid, dtype=float)
    if censor_time is None:
        censor_time = float(grid.max())
    if np.any(grid <= 0.0) or np.any(grid > censor_time):
        raise InvalidParameterError("grid must lie in (0, censor_time]")
    n = times.size
    sorted_t = np.sort(times)
    survivors = n - np.searchsorted(sorted_t, grid, side="right")
    return SurvivalCurve(
        times=grid,
        survival=survivors / n,
        at_risk=survivors,
        censor_time=censor_time,
        hit_times=times,
    )


def _ols_slope(logt, logs):
    x = logt - logt.mean()
    return float((x @ logs) / (x @ x))


def fit_tail_exponent(curve: SurvivalCurve, window, n_boot=_N_BOOT,
                      seed=0) -> TailFit:
    """Power-law exponent of the survival tail over a log-log window.

    OLS slope of log survival against log t, negated.  Points with survival
    below 5/n are dropped (log of near-zero counts would dominate the fit).
    The stderr comes from a path-level bootstrap when the curve carries its
    raw hitting times, and from OLS residuals otherwise.
    """
    t_lo, t_hi = window
    if not (t_lo < t_hi <= curve.censor_time):
        raise InvalidParameterError("window must satisfy t_lo < t_hi <= censor_time")
    n = curve.at_risk.max() if curve.hit_times is None else curve.hit_times.size
    floor = 5.0 / n
    mask = (curve.times >= t_lo) & (curve.times <= t_hi) & (curve.survival >= floor)
    if mask.sum() < 8:
        raise InvalidParameterError("need >= 8 usable grid points in the window")
    logt = np.log(curve.times[mask])
    logs = np.log(curve.survival[mask])
    exponent = -_ols_slope(logt, logs)

    if curve.hit_times is not None:
        times = curve.hit_times
        grid = curve.times[mask]
        sorted_grid = grid
        rng = np.random.default_rng(seed)
        est = []
        m = times.size
        for _ in range(n_boot):
            res = times[rng.integers(0, m, m)]
            surv = (m - np.searchsorted(np.sort(res), sorted_grid, side="right")) / m
            ok = surv >= floor
            if ok.sum() < 8:
                continue
            est.append(-_ols_slope(np.log(sorted_grid[ok]), np.log(surv[ok])))
        stderr = float(np.std(est, ddof=1)) if len(est) > 1 else 0.0
    else:
        resid = logs - logs.mean() + exponent * (logt - logt.mean())
        dof = max(mask.sum() - 2, 1)
        xvar = np.sum((logt - logt.mean()) ** 2)
        stderr = float(np.sqrt(resid @ resid / dof / xvar))
    stderr = max(stderr, 1e-15)
    return TailFit(
        exponent_hat=exponent,
        stderr=stderr,
        window=(float(t_lo), float(t_hi)),
        method="log-log OLS",
        n_effective=int(mask.sum()),
    )


def hill_estimator(samples, k) -> TailFit:
    """Hill estimate of the survival tail index from the k largest values."""
    x = np.asarray(samples, dtype=float)
    if k < 10:
        raise InvalidParameterError("k must be >= 10")
    if k >= x.size:
        raise InvalidParameterError("k must be < sample count")
    top = np.sort(x)[-(k + 1):]
    if top[0] <= 0.0:
        raise InvalidParameterError("top-k order statistics must be positive")
    gamma_hat = np.mean(np.log(top[1:]) - np.log(top[0]))
    index = 1.0 / gamma_hat
    return TailFit(
        exponent_hat=float(index),
        stderr=float(index / np.sqrt(k)),
        window=(float(top[0]), float(top[-1])),
        method="Hill",
        n_effective=int(k),
    )


def empirical_mellin(samples, s, n_boot=_N_BOOT, seed=0,
                     tail_index=None) -> MellinEval:
    """Sample Mellin transform E[x^{s-1}] with a bootstrap standard error.

    When tail_index (the survival index of the data, chi for hitting
    places) is supplied and 2(s-1) >= tail_index, the summand has infinite
    variance and the naive bootstrap understates the error; the SE then
    switches to a subsampling estimate with the heavy-tail rate
    n^{1/a - 1}, a = tail_index/(s-1).
    """
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise InvalidParameterError("empty sample set")
    if s == 1.0:
        return MellinEval(s=1.0, value=1.0, se=0.0, n=x.size)
    if tail_index is not None and s - 1.0 >= tail_index:
        raise InvalidParameterError("mean does not exist: need s < 1 + tail_index")
    w = x ** (s - 1.0)
    value = float(w.mean())
    n = x.size
    rng = np.random.default_rng(seed)
    heavy = tail_index is not None and 2.0 * (s - 1.0) >= tail_index
    if not heavy:
        boot = np.empty(n_boot)
        for i in range(n_boot):
            boot[i] = w[rng.integers(0, n, n)].mean()
        se = float(np.std(boot, ddof=1))
    else:
        a = tail_index / (s - 1.0)  # tail index of the summand, > 1 here
        m = max(int(n ** 0.6), 10)
        sub = np.empty(n_boot)
        for i in range(n_boot):
            sub[i] = w[rng.integers(0, n, m)].mean()
        spread = float(np.std(sub, ddof=1))
        se = spread * (m / n) ** (1.0 - 1.0 / a)
    return MellinEval(s=float(s), value=value, se=se, n=n,
                      heavy_tail_warning=heavy)


def ks_distance(samples, cdf) -> float:
    """Sup distance between the empirical CDF and a target CDF callable."""
    x = np.sort(np.asarray(samples, dtype=float))
    n = x.size
    if n == 0:
        raise InvalidParameterError("empty sample set")
    f = np.asarray([cdf(v) for v in x], dtype=float)
    upper = np.max(np.arange(1, n + 1) / n - f)
    lower = np.max(f - np.arange(0, n) / n)
    return float(max(upper, lower))


def mellin_sweep_report(samples, law: HittingPlaceLaw, s_grid, n_boot=_N_BOOT,
                        seed=0):
    """Empirical vs analytic Mellin values of a hitting-place law.

    Returns (rows, max_abs_z); each row has the empirical estimate, its SE,
    the analytic value, the z-score and the relative deviation.
    """
    chi = derived_exponents(law.params).chi
    rows = []
    max_z = 0.0
    for s in np.asarray(s_grid, dtype=float):
        emp = empirical_mellin(samples, s, n_boot=n_boot, seed=seed,
                               tail_index=chi)
        ana = float(hitting_place_mellin(law, s))
        z = 0.0 if emp.se == 0.0 else (emp.value - ana) / emp.se
        rows.append({
            "s": float(s),
            "empirical": emp.value,
            "se": emp.se,
            "analytic": ana,
            "z": z,
            "rel_dev": abs(emp.value - ana) / abs(ana),
        })
        max_z = max(max_z, abs(z))
    return rows, max_z
