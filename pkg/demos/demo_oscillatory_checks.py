"""Exercise the quadrature layer against its closed forms.

The fractional moments of the integrated process involve oscillatory
improper integrals.  On the coordinate axes the time-integrated moments
collapse to gamma-function expressions, which gives a sharp end-to-end
check of the numerics.
"""

import time

import numpy as np

from intstable.analytic import StableParams
from intstable.quadrature import fresnel_power_integral, \
    integrated_mellin_axis, mellin_xplus

# generalized Fresnel integrals int_0^inf x^{nu-1} trig(ux) dx
v = fresnel_power_integral(0.5, 1.0, "cos")
print(f"int_0^inf cos(x)/sqrt(x) dx = {v:.12f}  (sqrt(pi/2) ="
      f" {np.sqrt(np.pi / 2.0):.12f})")
v = fresnel_power_integral(0.5, 1.0, "sin")
print(f"int_0^inf sin(x)/sqrt(x) dx = {v:.12f}")

# the negative moment E[(X_t^+)^{-nu}] from a few starting points
p = StableParams(1.5, 1.0 / 3.0)
print("\nE[(X_1^+)^(-3/4)] from (x, y) = (-1, y0), alpha=1.5:")
for y0 in (-2.0, 0.0, 2.0):
    m = mellin_xplus(-1.0, y0, 1.0, 0.75, p)
    print(f"   y0={y0:+.1f}:  {m:.8f}")

# integrated moments on the axes vs their closed forms
print("\ntime-integrated moments vs closed forms:")
t0 = time.time()
for alpha, rho in ((2.0, 0.5), (1.5, 1.0 / 3.0), (1.0, 0.5), (0.8, 0.6)):
    p = StableParams(alpha, rho)
    nu = (p.alpha + 0.7) / (p.alpha + 1.0)  # inside the convergence window
    for case, coord in (("y_pos", 1.3), ("y_neg", -0.7), ("x_neg", -1.1)):
        closed, num = integrated_mellin_axis(case, coord, nu, p)
        rel = abs(num - closed) / abs(closed)
        print(f"   a={alpha:<4g} {case:5s}: numeric {num:.8e}"
              f"  closed {closed:.8e}  rel err {rel:.1e}")
print(f"({time.time() - t0:.1f}s)")
