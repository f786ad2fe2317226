"""Gauss-Bonnet by quadrature, and why a closed translator must be a sphere-like object."""
from translator_lab import global_checks as gcheck

patches = {"sphere": gcheck.sphere_patch(), "ellipsoid": gcheck.ellipsoid_patch(1, 1, 2),
           "torus": gcheck.torus_patch()}
for name, patch in patches.items():
    for n in (32, 64, 128, 256):
        rep = gcheck.gauss_bonnet_probe(patch, resolution=n)
        print(f"{name:9} n={n:3}: total K - 4pi(1-g) = {rep.gauss_bonnet_defect:+.3e}, flux = {rep.flux:+.1e}")
    if rep.implied_lambda is not None:
        print(f"{'':9} lambda forced by integrating K = lam + <N, v>: {rep.implied_lambda:.6f}")
    print()
