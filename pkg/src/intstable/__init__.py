"""Persistence and first-passage toolkit for integrated strictly stable
processes: exact exponents and hitting-place laws, oscillatory-integral
quadrature, Monte Carlo path simulation, and estimators tying them together.
"""

from .analytic import (
    DerivedExponents,
    HittingPlaceLaw,
    SizeBiasedPowerCauchy,
    StableParams,
    cauchy_mu_density,
    char_exponent_L,
    char_exponent_X,
    derived_exponents,
    hitting_place_density_vertical,
    hitting_place_mellin,
    mellin_cauchy_mu,
    mellin_positive_stable,
    mellin_product_identity,
    sample_hitting_place_closed_form,
    validate_params,
)
from .errors import AccuracyError, InvalidParameterError, UnsupportedCaseError
from .quadrature import (
    fresnel_closed_form,
    fresnel_power_integral,
    integrated_mellin_axis,
    mellin_xplus,
)
from .simulate import (
    BatchResult,
    PathConfig,
    PathSample,
    euler_endpoints,
    sample_hitting_batch,
    sample_L_increment,
    sample_standard_stable,
    sample_X_exact,
    simulate_path,
)
from .stats import (
    MellinEval,
    SurvivalCurve,
    TailFit,
    empirical_mellin,
    fit_tail_exponent,
    hill_estimator,
    ks_distance,
    mellin_sweep_report,
    survival_curve,
)

__version__ = "0.1.0"
