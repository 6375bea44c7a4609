"""Exact parameter algebra and closed-form laws for the integrated stable
process.

Everything here is deterministic given its inputs: parameter validation for
the stable pair (alpha, rho), the exponents derived from it, characteristic
exponents, the power-Cauchy family, Mellin transforms of the hitting place,
and samplers for the cases where the hitting-place law reduces to classical
random variables.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import PchipInterpolator
from scipy.special import gamma as _gamma

from .errors import InvalidParameterError, UnsupportedCaseError

__all__ = [
    "StableParams",
    "DerivedExponents",
    "HittingPlaceLaw",
    "validate_params",
    "derived_exponents",
    "char_exponent_L",
    "char_exponent_X",
    "cauchy_mu_density",
    "mellin_cauchy_mu",
    "mellin_positive_stable",
    "hitting_place_mellin",
    "hitting_place_density_vertical",
    "mellin_product_identity",
    "sample_hitting_place_closed_form",
    "SizeBiasedPowerCauchy",
]


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StableParams:
    """Admissible pair (alpha, rho) plus derived normalization constants.

    beta is the asymmetry parameter of the usual (1-)parametrization,
    kappa = cos(pi*alpha*(rho - 1/2)) is the scale constant that makes the
    characteristic exponent -(i*lambda)^alpha * exp(-i*pi*alpha*rho*sgn).
    For alpha = 1 the skewness enters through a location/scale pair
    (cauchy_scale, cauchy_drift) instead of beta.
    """

    alpha: float
    rho: float
    beta: float = field(init=False)
    kappa: float = field(init=False)

    def __post_init__(self):
        a, r = float(self.alpha), float(self.rho)
        if not (0.0 < a <= 2.0):
            raise InvalidParameterError(f"alpha={a} outside (0, 2]")
        if not (0.0 <= r <= 1.0):
            raise InvalidParameterError(f"rho={r} outside [0, 1]")
        if a == 2.0:
            if r != 0.5:
                raise InvalidParameterError("alpha=2 requires rho=1/2")
            beta = 0.0
        elif a > 1.0:
            lo, hi = 1.0 - 1.0 / a, 1.0 / a
            if not (lo - 1e-12 <= r <= hi + 1e-12):
                raise InvalidParameterError(
                    f"alpha={a} requires rho in [1-1/alpha, 1/alpha] = [{lo:.6f}, {hi:.6f}]"
                )
            beta = np.tan(np.pi * a * (r - 0.5)) / np.tan(np.pi * a / 2.0)
        else:
            # subordinator endpoints excluded: |L| would be monotone
            if r <= 0.0 or r >= 1.0:
                raise InvalidParameterError(
                    f"alpha={a} <= 1 with rho={r} is the subordinator case (excluded)"
                )
            if a == 1.0:
                beta = 0.0
            else:
                beta = np.tan(np.pi * a * (r - 0.5)) / np.tan(np.pi * a / 2.0)
        kappa = np.cos(np.pi * a * (r - 0.5))
        if not kappa > 0.0:
            raise InvalidParameterError(f"(alpha, rho)=({a}, {r}) gives kappa <= 0")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "rho", r)
        object.__setattr__(self, "beta", float(np.clip(beta, -1.0, 1.0)))
        object.__setattr__(self, "kappa", float(kappa))

    @property
    def cauchy_scale(self):
        """Scale of the per-unit-time Cauchy increment when alpha = 1."""
        return float(np.sin(np.pi * self.rho))

    @property
    def cauchy_drift(self):
        """Drift of the per-unit-time Cauchy increment when alpha = 1."""
        return float(-np.cos(np.pi * self.rho))


def validate_params(alpha, rho):
    """Return a populated StableParams or raise InvalidParameterError."""
    return StableParams(alpha, rho)


@dataclass(frozen=True)
class DerivedExponents:
    gamma: float
    chi: float
    theta: float
    delta: float
    eta: float
    sigma: float
    s_ar: float
    c_ar: float
    lower_tail: float


def derived_exponents(p: StableParams) -> DerivedExponents:
    """All exponents attached to (alpha, rho), computed once."""
    a, r = p.alpha, p.rho
    gam = r * a / (1.0 + a)
    theta = r / (1.0 + a * (1.0 - r))
    chi = a * theta
    ang = np.pi * a * (r - 0.5)
    return DerivedExponents(
        gamma=gam,
        chi=chi,
        theta=theta,
        delta=(1.0 + chi) / 2.0,
        eta=1.0 / (1.0 + a * (1.0 - r)),
        sigma=(a + 1.0) / 2.0,
        s_ar=float(np.sin(ang) / (a + 1.0)),
        c_ar=float(np.cos(ang) / (a + 1.0)),
        lower_tail=theta * a / (a + 1.0),
    )


# ---------------------------------------------------------------------------
# Characteristic exponents
# ---------------------------------------------------------------------------

def char_exponent_L(lam, p: StableParams):
    """log E[exp(i*lam*L_1)] = -(i*lam)^alpha * exp(-i*pi*alpha*rho*sgn(lam))."""
    lam = np.asarray(lam, dtype=float)
    a, r = p.alpha, p.rho
    sgn = np.sign(lam)
    # (i*lam)^alpha = |lam|^alpha * exp(i*pi*alpha/2 * sgn(lam)), principal branch
    phase = np.pi * a * sgn * (0.5 - r)
    out = -np.abs(lam) ** a * np.exp(1j * phase)
    out = np.where(lam == 0.0, 0.0 + 0.0j, out)
    return complex(out) if out.ndim == 0 else out


def char_exponent_X(lam, t, x, y, p: StableParams):
    """log E_{(x,y)}[exp(i*lam*X_t)] for the integrated process."""
    if t < 0:
        raise InvalidParameterError("t must be >= 0")
    lam = np.asarray(lam, dtype=float)
    a = p.alpha
    out = 1j * lam * (x + y * t) + (t ** (a + 1.0) / (a + 1.0)) * char_exponent_L(lam, p)
    return complex(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# The power-Cauchy family
# ---------------------------------------------------------------------------

def cauchy_mu_density(mu, x):
    """Density sin(pi*mu) / (pi*mu*(x^2 + 2*cos(pi*mu)*x + 1)) on x >= 0."""
    if not (0.0 < mu < 1.0):
        raise InvalidParameterError(f"mu={mu} outside (0, 1)")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise InvalidParameterError("x must be >= 0")
    s, c = np.sin(np.pi * mu), np.cos(np.pi * mu)
    out = s / (np.pi * mu * (x * x + 2.0 * c * x + 1.0))
    return float(out) if out.ndim == 0 else out


def mellin_cauchy_mu(mu, s):
    """E[C_mu^s] = sin(pi*mu*s) / (mu*sin(pi*s)) for |s| < 1, with the s=0 limit.

    Evaluated through sinc ratios, which handle the removable singularity at
    s = 0 exactly.
    """
    if not (0.0 < mu < 1.0):
        raise InvalidParameterError(f"mu={mu} outside (0, 1)")
    s = np.asarray(s, dtype=float)
    if np.any(np.abs(s) >= 1.0):
        raise InvalidParameterError("moment E[C_mu^s] requires |s| < 1")
    out = np.sinc(mu * s) / np.sinc(s)
    return float(out) if out.ndim == 0 else out


def mellin_positive_stable(mu, s):
    """E[Z_mu^s] = Gamma(1 - s/mu) / Gamma(1 - s) for s < mu.

    mu = 1 is allowed as the degenerate constant variable.
    """
    if not (0.0 < mu <= 1.0):
        raise InvalidParameterError(f"mu={mu} outside (0, 1]")
    s = np.asarray(s, dtype=float)
    if np.any(s >= mu):
        raise InvalidParameterError(f"moment of order s={s} requires s < mu={mu}")
    out = _gamma(1.0 - s / mu) / _gamma(1.0 - s)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Hitting-place law
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HittingPlaceLaw:
    """Law of the stable process at the first zero of its integral, for a
    start on a coordinate axis: 'vertical' = start (0, y) with y < 0,
    'horizontal' = start (x, 0) with x < 0."""

    params: StableParams
    axis: str
    origin_coordinate: float

    def __post_init__(self):
        if self.axis not in ("vertical", "horizontal"):
            raise InvalidParameterError(f"unknown axis {self.axis!r}")
        if not self.origin_coordinate < 0.0:
            raise InvalidParameterError(
                "origin coordinate must be negative (start below the target axis)"
            )


def hitting_place_mellin(law: HittingPlaceLaw, s):
    """E[L^{s-1}] of the hitting place, valid for |s| < 1/(1-gamma).

    Removable singularities (s = 0, s = 1) are absorbed by rewriting the sine
    and Gamma factors through sinc ratios and recurrence, so the expression
    is smooth on the whole strip.
    """
    d = derived_exponents(law.params)
    gam = d.gamma
    s = float(s)
    if not abs(s) < 1.0 / (1.0 - gam):
        raise InvalidParameterError(
            f"|s|={abs(s)} at or beyond the pole 1/(1-gamma)={1.0/(1.0-gam):.6f}"
        )
    coord = abs(law.origin_coordinate)
    if law.axis == "vertical":
        ratio = (gam * np.sinc(gam * s)) / ((1.0 - gam) * np.sinc((1.0 - gam) * s))
        return float(coord ** (s - 1.0) * ratio)
    a = law.params.alpha
    ap1 = a + 1.0
    num = (
        ap1 ** ((1.0 - s) / ap1)
        * _gamma((a + 2.0) / ap1)
        * np.sin(np.pi * gam)
        * _gamma(1.0 + (1.0 - s) / ap1)
    )
    den = (
        _gamma(2.0 - s)
        * _gamma(1.0 + s / ap1)
        * np.pi
        * (1.0 - gam)
        * np.sinc(s * (1.0 - gam))
    )
    return float(num / den * coord ** ((s - 1.0) / ap1))


def hitting_place_density_vertical(law: HittingPlaceLaw, z):
    """Density of the hitting place for a vertical start (0, y), y < 0.

    This is the density of |y| * (C_chi^{1-gamma})^{(1)}; E[C_chi^{1-gamma}]
    equals 1/chi, so the normalizing factor is exact.
    """
    if law.axis != "vertical":
        raise InvalidParameterError("density formula applies to the vertical axis only")
    z = np.asarray(z, dtype=float)
    if np.any(z < 0.0):
        raise InvalidParameterError("z must be >= 0")
    d = derived_exponents(law.params)
    chi = d.chi
    w = z / abs(law.origin_coordinate)
    out = (
        (1.0 + chi)
        * w ** (1.0 + chi)
        * cauchy_mu_density(chi, w ** (1.0 + chi))
        * chi
        / abs(law.origin_coordinate)
    )
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# Product representations of the horizontal-axis Mellin transform
# ---------------------------------------------------------------------------

def _beta_mellin(a, b, p):
    """E[B_{a,b}^p] = Gamma(a+p)Gamma(a+b) / (Gamma(a)Gamma(a+b+p))."""
    return _gamma(a + p) * _gamma(a + b) / (_gamma(a) * _gamma(a + b + p))


def mellin_product_identity(p: StableParams, s):
    """Both sides of the product-form identity for the horizontal-axis law
    at x = -1: lhs is the closed Mellin transform, rhs is assembled from
    Gamma/Beta/positive-stable Mellin factors of the case-appropriate
    identity in law.

    Cases: alpha = 1 (power-Cauchy), alpha = 2 (Gamma/Beta quotient),
    alpha < 1 (positive-stable product), alpha in (1,2) with gamma <= 1/3
    (stable/Beta product). For alpha in (1,2) with gamma > 1/3 the paper
    leaves the inversion open and UnsupportedCaseError is raised.
    """
    s = float(s)
    a = p.alpha
    d = derived_exponents(p)
    gam, chi = d.gamma, d.chi
    law = HittingPlaceLaw(p, "horizontal", -1.0)
    lhs = hitting_place_mellin(law, s)

    if a == 1.0:
        scale = np.sqrt(2.0)
        rhs = (
            scale ** (s - 1.0)
            * mellin_cauchy_mu(d.delta, (1.0 - gam) * s)
            / mellin_cauchy_mu(d.delta, 1.0 - gam)
        )
    elif a == 2.0:
        rhs = (
            9.0 ** ((s - 1.0) / 3.0)
            * _gamma(0.5 + s / 3.0)
            / _gamma(5.0 / 6.0)
            * _gamma(0.5 - s / 3.0)
            * _gamma(1.0 / 3.0)
            / (_gamma(2.0 / 3.0 - s / 3.0) * _gamma(1.0 / 6.0))
        )
    elif a < 1.0:
        scale = 2.0 / (a + 1.0) ** (1.0 / (a + 1.0))
        quotient = lambda q: (
            mellin_positive_stable(d.delta, q / 2.0)
            * mellin_positive_stable(d.eta, -q / (a + 1.0))
        )
        rhs = (
            scale ** (s - 1.0)
            * mellin_positive_stable(d.sigma, (s - 1.0) / 2.0)
            * quotient(s)
            / quotient(1.0)
        )
    else:
        if gam > 1.0 / 3.0:
            raise UnsupportedCaseError(
                "no product form for alpha in (1,2) with gamma > 1/3; "
                "unresolved in the source analysis"
            )
        scale = 3.0 * 2.0 ** (-2.0 / 3.0) / (a + 1.0) ** (1.0 / (a + 1.0))
        mu2 = 2.0 / (3.0 * (1.0 - gam))
        quotient = lambda q: (
            mellin_positive_stable(mu2, 2.0 * q / 3.0)
            * mellin_positive_stable(d.eta, -q / (a + 1.0))
        )
        rhs = (
            scale ** (s - 1.0)
            * mellin_positive_stable((a + 1.0) / 3.0, (s - 1.0) / 3.0)
            * _beta_mellin(1.0 / 6.0, 1.0 / 6.0, (1.0 - s) / 3.0)
            * quotient(s)
            / quotient(1.0)
        )
    return lhs, float(rhs)


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

class SizeBiasedPowerCauchy:
    """Sampler for V = (C_mu^power)^{(1)}: the order-1 size bias of a power of
    a mu-Cauchy variable.

    Uses a numeric inverse CDF: Simpson cumulative integration of
    x^power * density(x) on a log grid of the underlying Cauchy variable,
    monotone (PCHIP) interpolation in between, and power-law completion in
    both tails where the density has known exponents.
    """

    def __init__(self, mu, power, x_lo=1e-8, x_hi=1e8, n_grid=6001):
        if not (0.0 < mu < 1.0):
            raise InvalidParameterError(f"mu={mu} outside (0, 1)")
        if not (0.0 < power < 1.0):
            raise InvalidParameterError(f"power={power} outside (0, 1)")
        self.mu = float(mu)
        self.power = float(power)
        s, c = np.sin(np.pi * mu), np.cos(np.pi * mu)
        x = np.geomspace(x_lo, x_hi, n_grid)
        g = x ** power * s / (np.pi * mu * (x * x + 2.0 * c * x + 1.0))
        # mass below x_lo: integrand ~ x^power * density(0)
        head = s / (np.pi * mu) * x_lo ** (power + 1.0) / (power + 1.0)
        cum = head + np.concatenate([[0.0], cumulative_simpson(g, x=x)])
        # mass above x_hi: integrand ~ x^{power-2} * sin(pi*mu)/(pi*mu)
        tail = s / (np.pi * mu) * x_hi ** (power - 1.0) / (1.0 - power)
        total = cum[-1] + tail
        self.mean = total  # = E[C_mu^power]
        F = cum / total
        v = x ** power
        keep = np.concatenate([[True], np.diff(F) > 0])
        self._F_lo = float(F[keep][0])
        self._F_hi = float(F[keep][-1])
        self._v_lo = float(v[keep][0])
        self._v_hi = float(v[keep][-1])
        self._ppf = PchipInterpolator(F[keep], np.log(v[keep]))

    def pdf(self, v):
        v = np.asarray(v, dtype=float)
        x = v ** (1.0 / self.power)
        return v * cauchy_mu_density(self.mu, x) * x / (self.power * v) / self.mean

    def ppf(self, u):
        """Quantile function, with power-law tail completion.

        Near zero the CDF behaves like v^{1 + 1/power}; at infinity the
        survival function behaves like v^{-(1-power)/power}.
        """
        u = np.asarray(u, dtype=float)
        out = np.empty_like(u)
        lo = u <= self._F_lo
        hi = u >= self._F_hi
        mid = ~(lo | hi)
        out[mid] = np.exp(self._ppf(u[mid]))
        if np.any(lo):
            expo = self.power / (self.power + 1.0)
            out[lo] = self._v_lo * (u[lo] / self._F_lo) ** expo
        if np.any(hi):
            expo = self.power / (1.0 - self.power)
            out[hi] = self._v_hi * ((1.0 - self._F_hi) / (1.0 - u[hi])) ** expo
        return out

    def rvs(self, rng, size=None):
        return self.ppf(rng.random(size))


def sample_hitting_place_closed_form(p: StableParams, axis, coord, rng, size=None):
    """Draw from the hitting-place law in the cases with a tractable form.

    vertical: any admissible (alpha, rho), via the numeric inverse CDF of the
    size-biased power-Cauchy law. horizontal: alpha = 2 (Gamma/Beta quotient)
    and alpha = 1 (size-biased power-Cauchy). Other horizontal cases raise
    UnsupportedCaseError.
    """
    law = HittingPlaceLaw(p, axis, coord)  # validates axis and sign
    d = derived_exponents(p)
    c = abs(coord)
    if axis == "vertical":
        sampler = SizeBiasedPowerCauchy(d.chi, 1.0 - d.gamma)
        return c * sampler.rvs(rng, size)
    if p.alpha == 2.0:
        g = rng.gamma(5.0 / 6.0, size=size)
        b = rng.beta(1.0 / 6.0, 1.0 / 6.0, size=size)
        return (9.0 * c) ** (1.0 / 3.0) * (g / b) ** (1.0 / 3.0)
    if p.alpha == 1.0:
        sampler = SizeBiasedPowerCauchy(d.delta, 1.0 - d.gamma)
        return np.sqrt(2.0 * c) * sampler.rvs(rng, size)
    raise UnsupportedCaseError(
        "horizontal-axis sampling is available for alpha in {1, 2} only; "
        "other cases are validated at the Mellin-transform level"
    )
