import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from translator_lab import families as fam
from translator_lab import geomcore as gc
from translator_lab import global_checks as gcheck
from translator_lab.errors import DegenerateG, OpenSurface, TangentSurfaceCase


def test_sphere():
    rep = gcheck.gauss_bonnet_probe(gcheck.sphere_patch(1.5), resolution=128)
    assert rep.genus == 0
    assert rep.area == pytest.approx(4 * math.pi * 1.5**2, rel=1e-3)
    assert rep.total_curvature == pytest.approx(4 * math.pi, rel=1e-3)
    assert abs(rep.flux) < 1e-10
    assert rep.implied_lambda == pytest.approx(1 / 1.5**2, rel=1e-3)


def test_torus():
    rep = gcheck.gauss_bonnet_probe(gcheck.torus_patch(), resolution=64)
    assert rep.genus == 1 and rep.implied_lambda is None
    assert abs(rep.total_curvature) < 1e-10
    assert rep.area == pytest.approx(8 * math.pi**2, rel=1e-12)


@pytest.mark.parametrize("patch", [gcheck.sphere_patch(), gcheck.ellipsoid_patch()])
def test_defect_converges(patch):
    coarse = abs(gcheck.gauss_bonnet_probe(patch, resolution=64).gauss_bonnet_defect)
    fine = abs(gcheck.gauss_bonnet_probe(patch, resolution=128).gauss_bonnet_defect)
    assert fine * 3.9 <= coarse


def test_open_surface():
    with pytest.raises(OpenSurface):
        gcheck.gauss_bonnet_probe(fam.make_cylinder(1.0).patch)


def test_cells_csv():
    rep = gcheck.gauss_bonnet_probe(gcheck.sphere_patch(), resolution=(4, 6), keep_cells=True)
    lines = rep.cells_csv().splitlines()
    assert lines[0] == "i,j,s,t,dA,K_dA,flux_dA" and len(lines) == 25
    assert sum(float(ln.split(",")[4]) for ln in lines[1:]) == pytest.approx(rep.area, rel=1e-12)
    with pytest.raises(ValueError):
        gcheck.gauss_bonnet_probe(gcheck.sphere_patch(), resolution=4).cells_csv()


def test_summary_lines():
    text = gcheck.gauss_bonnet_probe(gcheck.sphere_patch(), resolution=16).summary()
    assert [ln.split("=")[0] for ln in text.splitlines()] == [
        "genus", "area", "total_curvature", "flux", "implied_lambda"]


def test_extraction_recovers_monomials():
    c = np.arange(1.0, 10.0)
    nodes = gcheck.chebyshev_nodes()
    vals = np.polynomial.polynomial.polyval(nodes, c)
    assert np.allclose(gcheck.extract_coefficients(vals, nodes), c, rtol=1e-10)


small = st.floats(-2, 2).filter(lambda a: abs(a) > 1e-3)


@given(small, st.floats(0.2, 2), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-2, 2))
def test_corrected_top_coefficients(g1, g2, g3, v1, v2, lam):
    v3 = 1.0
    cs = gcheck.translation_coefficients((g1, g2, g3), (v1, v2, v3), lam)
    for name in ("C8", "C7", "C6"):
        assert cs.mismatch(name, "corrected") <= 1e-6


@given(small, st.floats(-1, 1), st.floats(-2, 2))
def test_flat_low_coefficients(g1, v1, lam):
    cs = gcheck.translation_coefficients((g1, 1.0, 0.0), (v1, 0.0, 1.0), lam)
    for name in ("C8", "C4", "C3", "C0"):
        assert cs.mismatch(name, "corrected") <= 1e-6
    assert cs.mismatch("C8") <= 1e-6 and cs.mismatch("C4") <= 1e-6


def test_degenerate_g():
    with pytest.raises(DegenerateG):
        gcheck.translation_coefficients((1.0, 0.0, 0.0), (0, 0, 1), 0.0)


def test_helicoid_coefficients():
    h = fam.helicoid()
    s = 0.7
    _, w, w1 = h.frame(s)
    v = np.array([0.0, 0.0, 1.0])
    q = float(gc.det3(w1, w, v))
    lam = q / float(np.linalg.norm(w1))
    cs = gcheck.ruled_coefficients(h, v, lam, s)
    assert abs(cs.printed["A8"]) < 1e-15
    assert abs(cs.coefficient("A8")) <= 1e-6 * cs.scale
    # <w', v> = 0 for the helicoid so A7 vanishes too
    assert abs(cs.coefficient("A7")) <= 1e-6 * cs.scale


def test_striction_surface_coefficients():
    r = fam.striction_ruled(0.4, 1.3)
    cs = gcheck.ruled_coefficients(r, (0.3, -0.2, 0.9), 0.5, 0.2)
    assert cs.factor == pytest.approx(1.0, abs=1e-6)
    assert cs.mismatch("A8") <= 1e-6 and cs.mismatch("A7") <= 1e-6


def test_tangent_surface_rejected():
    with pytest.raises(TangentSurfaceCase):
        gcheck.ruled_coefficients(fam.striction_ruled(math.pi / 2, 1.0), (0, 0, 1), 0.0, 0.1)


def test_cylindrical_witness():
    circle = gc.Curve(lambda s: fam.vec3(np.cos(s), np.sin(s), 0 * s),
                      lambda s: fam.vec3(-np.sin(s), np.cos(s), 0 * s),
                      lambda s: fam.vec3(-np.cos(s), -np.sin(s), 0 * s))
    s = np.linspace(0, 2 * np.pi, 50)
    # normal of a circle ruled along z is radial; <n, v> + lam cannot vanish everywhere
    assert gcheck.cylindrical_witness(circle, (0, 0, 1), (1, 0, 0), 0.0, s) > 0.5
    line = gc.Curve(lambda s: fam.vec3(s, 0 * s, 0 * s), lambda s: fam.vec3(1 + 0 * s, 0 * s, 0 * s),
                    lambda s: fam.vec3(0 * s, 0 * s, 0 * s))
    n_dot_v = float(np.cross([1, 0, 0], [0, 0, 1]) @ np.array([0.0, 1.0, 0.0]))
    assert gcheck.cylindrical_witness(line, (0, 0, 1), (0, 1, 0), -n_dot_v, s) < 1e-15
