"""Walk through the three behaviours of a rotational profile leaving the axis.

Run with ``python3 demos/profile_regimes.py``.
"""
import math

import numpy as np

from translator_lab import profile_ode as po
from translator_lab import singular_start as ss

# The profile cannot start at x = 0 with the plain ODE, so we build a short
# graph piece z = u(r) by Picard iteration first.
sol = ss.solve_picard(ss.PicardConfig(lam=1.0))
print(f"Picard piece on [0, {sol.r[-1]:.4f}], {sol.iterations_used} iterations")
print(f"  u''(0) = {sol.second_derivative_at_axis():.10f}  (expect sqrt(2) = {math.sqrt(2):.10f})")

# Positive lambda: the curve bends over and comes back to the axis.
tr = po.integrate_from_axis(1.0, 100.0)
print(f"\nlam = 1: hits the axis again at s = {tr.omega:.8f}, theta = {tr.theta[-1]:.6f}")
print(f"  largest radius {tr.x.max():.6f} stays below sqrt(2)")

# Zero: the radius creeps up to sqrt(2) and the profile turns vertical.
red = po.zero_lambda_reduced_profile(50.0)
for s in (5, 10, 20, 40):
    i = np.searchsorted(red.s, s)
    print(f"lam = 0, s = {red.s[i]:5.1f}: sqrt(2) - x = {red.gap[i]:.3e}")

# Negative lambda in (-1, 0): the angle locks on to acos(-lam), an entire graph.
for lam in (-0.9, -0.5, -0.1):
    rep = po.classify(lam)
    print(f"lam = {lam:5}: {rep.regime}, limit angle {rep.witnesses['limit_angle']:.10f}"
          f" vs acos(-lam) = {math.acos(-lam):.10f}")

try:
    po.classify(-2.0)
except Exception as exc:
    print(f"\nlam = -2 from the axis: {type(exc).__name__}: {exc}")
