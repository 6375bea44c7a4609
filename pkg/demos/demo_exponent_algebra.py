"""Walk through the exponent algebra for the integrated stable process.

Prints the derived exponents for a few named parameter sets and checks the
identities that tie them together.
"""

import numpy as np

from intstable.analytic import StableParams, derived_exponents

CASES = [
    ("integrated Brownian motion", 2.0, 0.5),
    ("spectrally positive, alpha=1.5", 1.5, 1.0 / 3.0),
    ("symmetric Cauchy", 1.0, 0.5),
    ("alpha=0.8, rho=0.6", 0.8, 0.6),
]

print("name                              alpha   rho     theta    chi      gamma    delta")
for name, alpha, rho in CASES:
    e = derived_exponents(StableParams(alpha, rho))
    print(f"{name:33s} {alpha:<7g} {rho:<7.4g} {e.theta:<8.5f} {e.chi:<8.5f}"
          f" {e.gamma:<8.5f} {e.delta:<8.5f}")

# the identities that should hold everywhere on the admissible set
rng = np.random.default_rng(0)
worst = 0.0
for _ in range(2000):
    alpha = rng.uniform(0.1, 2.0)
    if alpha > 1.0:
        rho = rng.uniform(1.0 - 1.0 / alpha, 1.0 / alpha)
    elif alpha == 2.0:
        rho = 0.5
    else:
        rho = rng.uniform(0.05, 0.95)
    e = derived_exponents(StableParams(alpha, rho))
    worst = max(
        worst,
        abs(e.chi - alpha * e.theta),
        abs(e.gamma - rho * alpha / (1.0 + alpha)),
        abs(e.delta - 1.0 / (2.0 * (1.0 - e.gamma))),
        abs(e.chi - e.gamma / (1.0 - e.gamma)),
    )
print(f"\nworst identity residual over 2000 random pairs: {worst:.3e}")

# along the spectrally negative edge rho = 1/alpha the formula collapses
# to theta = 1/alpha^2
print("\ntheta along rho = 1/alpha (spectrally negative edge):")
for alpha in (1.1, 1.3, 1.5, 1.8, 2.0):
    rho = 1.0 / alpha if alpha < 2.0 else 0.5
    e = derived_exponents(StableParams(alpha, rho))
    print(f"  alpha={alpha:<4g} theta={e.theta:.6f}  1/alpha^2="
          f"{1.0 / alpha ** 2:.6f}")
