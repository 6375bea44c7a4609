"""Monte Carlo simulation of the Kolmogorov pair (X, L).

X is the running integral of a strictly stable process L, discretized by a
left-point Euler scheme.  X is then piecewise linear in each step, so the
first-passage time below/above zero can be located exactly inside the
crossing step.  The hitting place is the value of L at the start of that
step.  Paths that do not cross before the horizon are reported censored.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .analytic import StableParams
from .errors import InvalidParameterError

_BLOCK = 16384  # steps per numpy block in the path loop


# ---------------------------------------------------------------------------
# Stable variates
# ---------------------------------------------------------------------------

def sample_standard_stable(alpha, beta, rng, size=None):
    """Chambers-Mallows-Stuck stable variates.

    Characteristic function exp(-|lam|^alpha (1 - i beta tan(pi alpha/2)
    sgn lam)) for alpha != 1, and exp(-|lam| (1 + i beta (2/pi) sgn(lam)
    ln|lam|)) for alpha = 1.  Returns a scalar when size is None.
    """
    if not (0.0 < alpha <= 2.0):
        raise InvalidParameterError("alpha must be in (0, 2]")
    if not (-1.0 <= beta <= 1.0):
        raise InvalidParameterError("beta must be in [-1, 1]")
    scalar = size is None
    n = 1 if scalar else size
    u = rng.uniform(-np.pi / 2.0, np.pi / 2.0, n)
    w = rng.standard_exponential(n)
    if alpha == 2.0:
        out = 2.0 * np.sqrt(w) * np.sin(u)
    elif alpha == 1.0:
        if beta == 0.0:
            out = np.tan(u)
        else:
            pb = np.pi / 2.0 + beta * u
            out = (2.0 / np.pi) * (
                pb * np.tan(u)
                - beta * np.log((np.pi / 2.0) * w * np.cos(u) / pb)
            )
    else:
        tb = beta * np.tan(np.pi * alpha / 2.0)
        b0 = np.arctan(tb) / alpha
        s0 = (1.0 + tb * tb) ** (1.0 / (2.0 * alpha))
        out = (
            s0
            * np.sin(alpha * (u + b0))
            / np.cos(u) ** (1.0 / alpha)
            * (np.cos(u - alpha * (u + b0)) / w) ** ((1.0 - alpha) / alpha)
        )
    return out[0] if scalar else out


def sample_L_increment(h, p: StableParams, rng, size=None):
    """Increment of L over a window of length h.

    Characteristic function exp(h * Psi(lam)) in the (alpha, rho)
    normalization.  For alpha != 1 this is (kappa*h)^{1/alpha} times a
    standard CMS variate with the Zolotarev skewness of p; alpha = 1 is a
    Cauchy with explicit scale and drift.
    """
    if not h > 0.0:
        raise InvalidParameterError("h must be > 0")
    a = p.alpha
    if a == 2.0:
        sd = np.sqrt(2.0 * h)
        if size is None:
            return rng.normal(0.0, sd)
        return rng.normal(0.0, sd, size)
    if a == 1.0:
        scalar = size is None
        n = 1 if scalar else size
        c = rng.standard_cauchy(n)
        out = np.sin(np.pi * p.rho) * h * c - h * np.cos(np.pi * p.rho)
        return out[0] if scalar else out
    scale = (p.kappa * h) ** (1.0 / a)
    return scale * sample_standard_stable(a, p.beta, rng, size=size)


def sample_X_exact(p: StableParams, x0, y0, t, rng, size=None):
    """Exact draw of X_t started at (x0, y0): the marginal is stable with
    effective window t^{alpha+1}/(alpha+1) shifted by x0 + y0*t."""
    if not t > 0.0:
        raise InvalidParameterError("t must be > 0")
    h_eff = t ** (p.alpha + 1.0) / (p.alpha + 1.0)
    return x0 + y0 * t + sample_L_increment(h_eff, p, rng, size=size)


# ---------------------------------------------------------------------------
# Path simulation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathConfig:
    params: StableParams
    x0: float
    y0: float
    h: float
    t_max: float
    seed: int

    def __post_init__(self):
        ok = self.x0 < 0.0 or (self.x0 == 0.0 and self.y0 < 0.0)
        if not ok:
            raise InvalidParameterError(
                "start must have x0 < 0 or (x0 = 0, y0 < 0); other starts "
                "reduce to these by the sign flip L -> -L"
            )
        if not self.h > 0.0:
            raise InvalidParameterError("h must be > 0")
        if not self.t_max >= self.h:
            raise InvalidParameterError("t_max must be >= h")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise InvalidParameterError("seed must fit in 64 bits")


@dataclass(frozen=True)
class PathSample:
    t0: Optional[float]
    hitting_place: Optional[float]
    censored: bool
    seed_used: int
    steps_taken: int

    def __post_init__(self):
        if self.censored != (self.t0 is None):
            raise InvalidParameterError("censored iff t0 absent")
        if (self.t0 is None) != (self.hitting_place is None):
            raise InvalidParameterError("t0 and hitting_place come together")


@dataclass(frozen=True)
class BatchResult:
    samples: List[PathSample]
    censor_count: int

    def hitting_times(self):
        """Array of t0 with censored paths as +inf."""
        return np.array(
            [s.t0 if not s.censored else np.inf for s in self.samples]
        )

    def hitting_places(self):
        """Hitting places of the uncensored paths, in path order."""
        return np.array(
            [s.hitting_place for s in self.samples if not s.censored]
        )


def _path_rng(seed, index):
    return np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(index,))
    )


def _run_block(x, l, t, h, k, draw, rng):
    """Advance k Euler steps of size h from state (x, l) at time t.
    Returns (hit_info or None, new state)."""
    xi = draw(h, k, rng)
    # left-point values of L over the block; X_{j+1} = x + h*cumsum
    l_starts = l + np.concatenate(([0.0], np.cumsum(xi[:-1])))
    x_ends = x + h * np.cumsum(l_starts)
    hit = np.nonzero(x_ends >= 0.0)[0]
    if hit.size:
        j = int(hit[0])
        x_prev = x if j == 0 else x_ends[j - 1]
        slope = l_starts[j]
        t0 = t + j * h - x_prev / slope
        return (float(t0), float(slope), j + 1), (None, None, None)
    return None, (x_ends[-1], l_starts[-1] + xi[-1], t + k * h)


def _run_one(cfg: PathConfig, index: int, extend=False, rel_step=1e-4,
             coarsen=False) -> PathSample:
    """One path.  With coarsen=True each step-h increment is the sum of two
    step-h/2 draws and all block lengths are halved, so the path is driven
    by the exact same fine increment stream as a coarsen=False run at
    (h/2, rel_step/2) with the same seed and index; that pair shares one
    underlying L path at two resolutions, which makes h vs h/2 comparisons
    free of independent-sample noise."""
    rng = _path_rng(cfg.seed, index)
    if coarsen:
        def draw(h, k, r):
            fine = sample_L_increment(0.5 * h, cfg.params, r, size=2 * k)
            return fine[0::2] + fine[1::2]
        block = _BLOCK // 2
        ext_block = 2048
    else:
        def draw(h, k, r):
            return sample_L_increment(h, cfg.params, r, size=k)
        block = _BLOCK
        ext_block = 4096
    n_steps = int(np.floor(cfg.t_max / cfg.h + 1e-9))
    h = cfg.h
    x = cfg.x0
    l = cfg.y0
    t = 0.0
    done = 0
    while done < n_steps:
        k = min(block, n_steps - done)
        hit, (x, l, t) = _run_block(x, l, t, h, k, draw, rng)
        if hit is not None:
            t0, place, used = hit
            return PathSample(
                t0=t0,
                hitting_place=place,
                censored=False,
                seed_used=cfg.seed,
                steps_taken=done + used,
            )
        done += k
    if extend:
        # continue past the horizon with a step proportional to elapsed time
        # (the h vs h/2 study controls the bias of this coarsening too, via
        # rel_step scaled alongside h); block length keeps the step within
        # a factor ~1.4 of its start-of-block value
        while t < 1e30:
            h_e = max(h, t * rel_step)
            hit, (x, l, t) = _run_block(x, l, t, h_e, ext_block, draw, rng)
            if hit is not None:
                t0, place, used = hit
                return PathSample(
                    t0=t0,
                    hitting_place=place,
                    censored=False,
                    seed_used=cfg.seed,
                    steps_taken=done + used,
                )
            done += ext_block
    return PathSample(
        t0=None,
        hitting_place=None,
        censored=True,
        seed_used=cfg.seed,
        steps_taken=done,
    )


def simulate_path(cfg: PathConfig, index: int = 0, extend: bool = False,
                  rel_step: float = 1e-4, coarsen: bool = False) -> PathSample:
    """One Euler path; index selects the per-path substream.

    With extend=True a path that survives past t_max is continued until it
    hits, switching to a step of rel_step times the elapsed time.  The
    hitting time is a.s. finite, so this terminates; it removes the
    censoring bias from the hitting-place sample at the cost of a coarser
    grid deep in the time tail (where the path's own scale has grown by
    self-similarity).
    """
    return _run_one(cfg, index, extend=extend, rel_step=rel_step, coarsen=coarsen)


def sample_hitting_batch(cfg: PathConfig, n: int, start_index: int = 0,
                         extend: bool = False, rel_step: float = 1e-4,
                         coarsen: bool = False) -> BatchResult:
    """n independent paths with per-path seeding.

    Path i uses the substream derived from (cfg.seed, start_index + i), so
    results do not depend on how a range of indices is split into batches.
    """
    if n < 1:
        raise InvalidParameterError("n must be >= 1")
    samples = [_run_one(cfg, start_index + i, extend=extend, rel_step=rel_step,
                        coarsen=coarsen)
               for i in range(n)]
    censored = sum(1 for s in samples if s.censored)
    return BatchResult(samples=samples, censor_count=censored)


def euler_endpoints(p: StableParams, x0, y0, t, h, n, seed):
    """X at time t for n Euler paths, without storing the paths.

    With m = t/h steps the endpoint is x0 + h*m*y0 + h * sum_j (m-1-j) xi_j,
    which only needs the increments and a fixed weight vector.  Paths use
    the same per-index substreams as sample_hitting_batch.
    """
    m = int(round(t / h))
    if m < 1:
        raise InvalidParameterError("t must cover at least one step")
    weights = h * np.arange(m - 1, -1, -1, dtype=float)
    out = np.empty(n)
    for i in range(n):
        rng = _path_rng(seed, i)
        xi = sample_L_increment(h, p, rng, size=m)
        out[i] = x0 + h * m * y0 + weights @ xi
    return out
