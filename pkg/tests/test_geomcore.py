import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from translator_lab import geomcore as gc
from translator_lab import global_checks as gch
from translator_lab.errors import DegeneratePoint, VanishingCurvature
from translator_lab.families import circular_helix

unit_vectors = st.tuples(*[st.floats(-1, 1)] * 3).filter(lambda v: 0.1 < np.linalg.norm(v)).map(
    lambda v: np.asarray(v) / np.linalg.norm(v))


def random_rotation(seed):
    q, r = np.linalg.qr(np.random.default_rng(seed).normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    return q if np.linalg.det(q) > 0 else -q


def test_vec3_broadcasts():
    out = gc.vec3(np.zeros((2, 3)), 1.0, 2.0)
    assert out.shape == (2, 3, 3)
    assert np.all(out[..., 2] == 2.0)


@given(unit_vectors)
def test_orthonormal_complement_is_positive_frame(n):
    e1, e2 = gc.orthonormal_complement(n)
    assert np.allclose([gc.dot(e1, e1), gc.dot(e2, e2), gc.dot(e1, e2), gc.dot(e1, n)], [1, 1, 0, 0], atol=1e-12)
    assert np.allclose(np.cross(e1, e2), n, atol=1e-12)


def test_helix_frenet_frame():
    a, b = 3.0, 4.0
    fr = gc.frenet_frame(circular_helix(a, b), 0.7)
    assert fr.kappa == pytest.approx(a / (a * a + b * b), abs=1e-12)
    assert fr.tau == pytest.approx(b / (a * a + b * b), abs=1e-12)
    assert fr.b[2] == pytest.approx(a / math.hypot(a, b), abs=1e-12)
    assert np.allclose(np.cross(fr.t, fr.n), fr.b)


def test_frenet_frame_by_differences_matches_analytic():
    helix = circular_helix(1.0, 1.0)
    ref = gc.frenet_frame(helix, 0.3)
    fd = gc.frenet_frame(helix.position, 0.3)
    assert fd.kappa == pytest.approx(ref.kappa, abs=1e-7)
    assert fd.tau == pytest.approx(ref.tau, abs=1e-4)


def test_straight_line_has_no_frenet_frame():
    with pytest.raises(VanishingCurvature):
        gc.frenet_frame(lambda s: gc.vec3(s, 2 * s, 0 * s), 0.0)


def test_sphere_forms():
    sph = gch.sphere_patch(2.0)
    S, T = sph.grid(9, 9, margin=0.1)
    ff = gc.fundamental_forms(sph, S, T)
    assert np.allclose(ff.gauss_curvature, 0.25, atol=1e-12)
    # ds x dt points outward for this parametrization
    assert np.allclose(ff.normal, sph(S, T) / 2.0, atol=1e-12)


def test_fd_path_matches_analytic_path():
    tor = gch.torus_patch()
    S, T = tor.grid(7, 7, margin=0.05)
    a = gc.fundamental_forms(tor, S, T)
    b = gc.fundamental_forms(tor, S, T, method="fd")
    assert np.max(np.abs(a.gauss_curvature - b.gauss_curvature)) < 1e-6
    assert np.max(np.abs(a.normal - b.normal)) < 1e-8


@given(st.integers(0, 10_000), st.floats(0.2, 2.9), st.floats(0.1, 6.0))
def test_curvature_is_rotation_invariant(seed, s, t):
    tor = gch.torus_patch()
    Q = random_rotation(seed)
    rotated = gc.SurfacePatch(lambda u, w: tor(u, w) @ Q.T, tor.s_range, tor.t_range)
    assert gc.gauss_curvature(rotated, s, t) == pytest.approx(gc.gauss_curvature(tor, s, t), abs=1e-6)


def test_reversed_patch_flips_normal_and_keeps_K():
    sph = gch.sphere_patch()
    rev = sph.reversed()
    s, t = 1.1, 0.4
    n = gc.unit_normal(sph, s, t)
    t_rev = sph.t_range[0] + sph.t_range[1] - t
    assert np.allclose(gc.unit_normal(rev, s, t_rev), -n, atol=1e-12)
    assert gc.gauss_curvature(rev, s, t_rev) == pytest.approx(1.0, abs=1e-12)


def test_degenerate_point_detected():
    sph = gch.sphere_patch()
    with pytest.raises(DegeneratePoint):
        gc.fundamental_forms(sph, 0.0, 1.0)


def test_residual_needs_unit_speed():
    sph = gch.sphere_patch()
    with pytest.raises(ValueError):
        gc.translator_residual(sph, (0, 0, 2.0), 0.0, 1.0, 1.0)


def test_sphere_residual_against_hand_value():
    sph = gch.sphere_patch()
    s, t = 0.9, 2.0
    res = gc.translator_residual(sph, (0, 0, 1.0), 0.5, s, t)
    assert res == pytest.approx(1.0 - math.cos(s) - 0.5, abs=1e-12)
