import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from translator_lab import profile_ode as po
from translator_lab.errors import Inconclusive, NoSolution, SingularAngle, WrongInitialConditions

SQRT2 = math.sqrt(2.0)


def test_rhs_examples():
    assert po.rhs(0.0, po.ProfileState(0, 1.0, 0, math.pi / 2)) == pytest.approx((0, 1, 0), abs=1e-15)
    for lam in (-3.0, 0.0, 2.5):
        assert po.rhs(lam, po.ProfileState(0, 0.0, 0, math.pi / 2)) == pytest.approx((0, 1, 0), abs=1e-15)
    with pytest.raises(SingularAngle):
        po.rhs(0.5, po.ProfileState(0, 1.0, 0, 0.0))
    # removable endpoint: lam = -1 at theta = 0
    assert po.rhs(-1.0, po.ProfileState(0, 1.0, 0, 0.0))[2] == 0.0


@given(st.floats(-3, 3), st.floats(0.01, 5), st.floats(0.01, math.pi - 0.01))
def test_angle_rate_matches_naive_formula(lam, x, theta):
    naive = x * (math.cos(theta) + lam) / math.sin(theta)
    assert float(po.theta_rate(lam, x, theta)) == pytest.approx(naive, rel=1e-9, abs=1e-9)


def test_angle_rate_blows_up_near_zero():
    assert po.theta_rate(0.5, 1.0, 1e-9) > 1e8


@pytest.mark.parametrize("lam", [-0.9, -0.5, 0.0, 0.5, 1.0, 2.0])
def test_first_integral_drift(lam):
    tr = po.integrate_from_axis(lam, 20.0)
    fi = po.first_integral_residual(tr)
    assert fi[0] == 0.0
    assert np.all(np.abs(fi) <= 1e-8 * (1 + np.abs(tr.s)))
    assert np.all(np.diff(tr.s) > 0)


@pytest.mark.parametrize("lam", [0.3, 1.0, 4.0])
def test_positive_lambda_stays_inside_sqrt2(lam):
    tr = po.integrate_from_axis(lam, 100.0)
    assert tr.status == "axis"
    eq = tr.events_of("theta_half_pi")[0]
    before = tr.s <= eq.s
    assert np.all(tr.x[before] < SQRT2) and eq.state.x < SQRT2
    assert math.pi / 2 < tr.theta[-1] < math.pi


@pytest.mark.parametrize("lam", [-0.9, -0.5, -0.1])
def test_negative_lambda_barrier(lam):
    tr = po.integrate_from_axis(lam, 60.0)
    late = tr.s > 1.0
    margin = np.minimum(np.abs(tr.theta[late] - math.pi / 2), np.abs(tr.theta[late]))
    assert margin.min() > 1e-3
    assert tr.theta[-1] == pytest.approx(math.acos(-lam), abs=1e-9)


def test_event_location_converges():
    a = po.integrate_from_axis(1.0, 10.0, rtol=1e-10, atol=1e-10)
    b = po.integrate_from_axis(1.0, 10.0, rtol=5e-11, atol=5e-11)
    assert abs(a.omega - b.omega) < 10 * 1e-10


def test_unit_speed_by_construction():
    tr = po.integrate_from_axis(0.5, 5.0)
    assert np.allclose(np.cos(tr.theta) ** 2 + np.sin(tr.theta) ** 2, 1.0)


def test_deviation_coordinates_agree_with_plain_run():
    plain = po.integrate_from_axis(-0.5, 8.0)
    init = plain.state(len(plain) // 4)
    a = po.integrate(-0.5, init, 8.0, tail_switch=0.0)
    b = po.integrate(-0.5, init, 8.0)
    grid = np.linspace(init.s, init.s + 8.0, 50)
    assert np.max(np.abs(a.dense(grid) - b.dense(grid))) < 1e-8


def test_zero_lambda_reduced_profile():
    red = po.zero_lambda_reduced_profile(50.0)
    assert np.all(red.gap > 0) and np.all(red.dx > 0)
    assert np.allclose(SQRT2 - red.x, red.gap, atol=1e-15)
    tr = po.integrate_from_axis(0.0, 50.0)
    assert np.max(np.abs(red.x_at(tr.s) - tr.x)) < 1e-9


def test_mirror():
    tr = po.integrate_from_axis(0.0, 5.0)
    m = po.mirror(tr)
    assert np.array_equal(po.mirror(m).z, tr.z) and np.array_equal(po.mirror(m).theta, tr.theta)
    ok = tr.x > 1e-3
    assert np.allclose(po.rotational_residual(m)[ok], po.rotational_residual(tr)[ok], atol=1e-12)
    # the mirrored profile solves the same system with the same lam
    lhs = m.dtheta[ok]
    assert np.allclose(lhs, -po.theta_rate(0.0, tr.x[ok], tr.theta[ok]), atol=1e-12)
    assert np.allclose(po.theta_rate(0.0, m.x[ok], m.theta[ok]), lhs, atol=1e-12)


def test_first_integral_needs_axis_start():
    tr = po.integrate(0.0, po.equator_state(), 2.0)
    with pytest.raises(WrongInitialConditions):
        po.first_integral_residual(tr)


def test_csv_format():
    tr = po.integrate_from_axis(1.0, 10.0)
    lines = tr.to_csv().splitlines()
    assert lines[0] == "s,x,z,theta,dtheta_ds,first_integral_residual"
    events = [ln for ln in lines if ln.startswith("#event")]
    assert events[-1].startswith("#event axis s=")
    assert len(lines) - 1 - len(events) == len(tr)


@pytest.mark.parametrize("lam,regime", [
    (1.0, "reintersects_axis_nonorthogonal"), (0.0, "asymptotic_to_cylinder"),
    (-0.5, "entire_convex_graph"), (-1.0, "horizontal_plane")])
def test_classify_axis(lam, regime):
    rep = po.classify(lam)
    assert rep.regime == regime
    if lam == 0.0:
        assert rep.witnesses["limit_radius"] == pytest.approx(SQRT2, abs=1e-9)
    if lam == -0.5:
        assert rep.witnesses["limit_angle"] == pytest.approx(math.pi / 3, abs=1e-9)


def test_classify_equator():
    assert po.classify(-1.0, "equator").regime == "lambda_minus_one_graph"
    rep = po.classify(-2.0, "equator")
    assert rep.regime == "saddle_bounded" and rep.witnesses["x_max"] < 2.0
    with pytest.raises(Inconclusive):
        po.classify(0.5, "equator")
    with pytest.raises(NoSolution):
        po.classify(-2.0)


def test_short_budget_is_inconclusive():
    with pytest.raises(Inconclusive):
        po.classify(0.0, budget=3.0)
