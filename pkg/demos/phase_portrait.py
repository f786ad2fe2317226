"""Linearisation at (0, pi/2) and a few orbits in the (x, theta) plane."""
import math

from translator_lab import phaseplane as pp

for lam in (2.0, 0.5, 0.0, -1.0, -3.0):
    rep = pp.linearize(lam)
    e1, e2 = rep.eigenvalues
    print(f"lam={lam:5}: eigenvalues {e1:.4f}, {e2:.4f} -> {rep.kind}"
          f"  (fd Jacobian off by {rep.jacobian_mismatch:.1e})")

grid = pp.sample_portrait(1.0, budget=15.0, field_n=9, seeds=[(0.3, 1.2)])
print()
for tr in grid.trajectories:
    print(f"seed {tr.seed}: {len(tr.s)} samples, forward {tr.forward_status}, "
          f"backward {tr.backward_status}, axis crossings {len(tr.axis_crossings)}")

# Reflecting theta -> pi - theta swaps lam for -lam and reverses the flow.
x, th, lam = 0.7, 1.1, 0.4
a = pp.vector_field(lam, x, math.pi - th)
b = pp.vector_field(-lam, x, th)
print(f"\nreflection check: {a[0]:+.6f} {a[1]:+.6f} vs {-b[0]:+.6f} {-b[1]:+.6f}")
