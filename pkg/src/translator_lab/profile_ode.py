"""Arc-length profile system of rotational lambda-translators with speed (0, 0, 1).

The generating curve ``(x(s), 0, z(s))`` with tangent angle ``theta`` obeys

    x' = cos(theta),  z' = sin(theta),  theta' = x (cos(theta) + lam) / sin(theta).

A fourth component ``I = int x ds`` is carried along so that the first
integral ``1 - cos(theta) = x^2/2 + lam I`` of axis-started profiles can be
monitored at integrator order.
"""
from __future__ import annotations

import io
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import Inconclusive, NoSolution, SingularAngle, StepFailure, WrongInitialConditions

log = logging.getLogger(__name__)

SIN_TOL = 1e-12
EDGE_MARGIN = 1e-6
BLOWUP = 1e6
DEFAULT_TOL = 1e-10
DEFAULT_MAX_STEP = 0.5
SQRT2 = math.sqrt(2.0)

REGIMES = (
    "reintersects_axis_nonorthogonal",
    "asymptotic_to_cylinder",
    "entire_convex_graph",
    "lambda_minus_one_graph",
    "saddle_bounded",
    "horizontal_plane",
)


@dataclass(frozen=True)
class ProfileState:
    s: float
    x: float
    z: float
    theta: float
    x_integral: Optional[float] = None

    def as_vector(self) -> np.ndarray:
        return np.array([self.x, self.z, self.theta, self.x_integral or 0.0])


@dataclass(frozen=True)
class Event:
    kind: str
    s: float
    state: ProfileState


def _genuine_edges(lam: float) -> tuple[bool, bool]:
    """Whether theta -> 0 and theta -> pi are true singularities of the angle equation.

    ``(cos + lam) / sin`` stays bounded at theta = 0 when lam = -1 and at
    theta = pi when lam = 1.
    """
    return (1.0 + lam != 0.0, lam - 1.0 != 0.0)


def _angle_factor(lam: float, theta):
    """``(cos(theta) + lam) / sin(theta)`` written to cancel the removable endpoint."""
    theta = np.asarray(theta, dtype=float)
    sin = np.sin(theta)
    near_zero = np.cos(theta) >= 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        a = 0.0 if 1.0 + lam == 0.0 else (1.0 + lam) / sin
        b = 0.0 if lam - 1.0 == 0.0 else (lam - 1.0) / sin
        lo = -np.tan(0.5 * theta) + a
        hi = 1.0 / np.tan(0.5 * theta) + b
    return np.where(near_zero, lo, hi)


def theta_rate(lam: float, x, theta):
    return np.asarray(x, dtype=float) * _angle_factor(lam, theta)


def rhs(lam: float, state: ProfileState) -> tuple[float, float, float]:
    """Right-hand side ``(x', z', theta')`` at a profile state.

    Raises :class:`SingularAngle` when ``|sin(theta)| <= 1e-12`` at an endpoint
    where the angle equation genuinely blows up.
    """
    th = state.theta
    if abs(math.sin(th)) <= SIN_TOL:
        zero_edge, pi_edge = _genuine_edges(lam)
        if (math.cos(th) > 0 and zero_edge) or (math.cos(th) < 0 and pi_edge):
            raise SingularAngle(f"sin(theta) = {math.sin(th):.3e} with lam={lam}")
    return math.cos(th), math.sin(th), float(theta_rate(lam, state.x, th))


@dataclass
class Trajectory:
    """Samples of an integrated profile, ordered by increasing ``s``.

    ``start`` is ``"axis"`` for profiles issued orthogonally from the axis at
    ``s = 0`` (these carry ``x_integral``), ``"equator"`` or ``"custom"``
    otherwise.  ``omega`` is the arc length of a terminal event, or ``inf``
    if the run stopped on its budget.
    """

    s: np.ndarray
    x: np.ndarray
    z: np.ndarray
    theta: np.ndarray
    dtheta: np.ndarray
    lam: float
    x_integral: Optional[np.ndarray] = None
    events: list = field(default_factory=list)
    omega: float = math.inf
    status: str = "budget"
    start: str = "custom"
    direction: int = 1
    dense: Optional[Callable] = field(default=None, repr=False)
    picard: object = field(default=None, repr=False)
    dtheta_log: Optional[np.ndarray] = None
    dtheta_sign: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.dtheta_log is None:
            with np.errstate(divide="ignore"):
                self.dtheta_log = np.log(np.abs(self.dtheta))
        if self.dtheta_sign is None:
            self.dtheta_sign = np.sign(self.dtheta).astype(np.int8)

    def __len__(self):
        return len(self.s)

    def state(self, i: int) -> ProfileState:
        xi = None if self.x_integral is None else float(self.x_integral[i])
        return ProfileState(float(self.s[i]), float(self.x[i]), float(self.z[i]), float(self.theta[i]), xi)

    def events_of(self, kind: str) -> list:
        return [e for e in self.events if e.kind == kind]

    def to_csv(self, path=None) -> str:
        """CSV ``s,x,z,theta,dtheta_ds,first_integral_residual`` plus ``#event`` lines."""
        try:
            fi = first_integral_residual(self)
        except WrongInitialConditions:
            fi = np.full_like(self.s, np.nan)
        buf = io.StringIO(newline="")
        buf.write("s,x,z,theta,dtheta_ds,first_integral_residual\n")
        for row in zip(self.s, self.x, self.z, self.theta, self.dtheta, fi):
            buf.write(",".join(f"{v:.17g}" for v in row) + "\n")
        for e in self.events:
            st = e.state
            buf.write(f"#event {e.kind} s={e.s:.17g} x={st.x:.17g} z={st.z:.17g} theta={st.theta:.17g}\n")
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="\n") as fh:
                fh.write(text)
        return text


def _make_events(lam: float, extra: Sequence[Callable] = ()):
    zero_edge, pi_edge = _genuine_edges(lam)

    def axis(s, y):
        return y[0]
    axis.terminal, axis.direction = True, -1

    def theta_edge(s, y):
        th = y[2]
        genuine = zero_edge if math.cos(th) >= 0 else pi_edge
        return math.sin(th) - EDGE_MARGIN if genuine else 1.0
    theta_edge.terminal, theta_edge.direction = True, -1

    def blowup(s, y):
        return BLOWUP - max(abs(y[0]), abs(y[1]))
    blowup.terminal, blowup.direction = True, -1

    def equator(s, y):
        return y[2] - 0.5 * math.pi
    equator.terminal = False

    named = [("axis", axis), ("theta_edge", theta_edge), ("blowup", blowup), ("theta_half_pi", equator)]
    for k, fn in enumerate(extra):
        named.append((getattr(fn, "kind", f"user{k}"), fn))
    return named


def limit_angle(lam: float) -> Optional[float]:
    """Angle of the invariant line ``cos(theta) = -lam`` when ``-1 <= lam <= 0``, else None.

    These are the lines that forward orbits settle onto: ``acos(-lam)`` for
    the axis start with ``-1 < lam <= 0`` and ``theta = 0`` for ``lam = -1``.
    """
    if -1.0 <= lam <= 0.0:
        return math.acos(-lam)
    return None


def _tail_rates(lam: float, sigma: int, x, ell):
    """Rates in coordinates ``theta = theta_inf + sigma * exp(ell)``.

    Returns ``(x', z', ell', log|theta'|)``.  Everything stays finite when
    ``exp(ell)`` underflows, which is what makes the slow approach to the
    invariant line resolvable.
    """
    th_inf = math.acos(-lam)
    s_inf = math.sin(th_inf)
    d = np.exp(ell)
    half_sinc = 0.5 * np.sinc(d / (2.0 * math.pi))  # sin(d/2)/d
    dx = -lam * np.cos(d) - sigma * s_inf * np.sin(d)
    dz = s_inf * np.cos(d) - sigma * lam * np.sin(d)
    if th_inf == 0.0:
        # sin(d/2) / sin(d) = 1 / (2 cos(d/2)), finite after d underflows
        dell = -x * half_sinc / np.cos(0.5 * d)
    else:
        dell = -x * 2.0 * np.sin(th_inf + 0.5 * sigma * d) * half_sinc / np.sin(th_inf + sigma * d)
    with np.errstate(divide="ignore"):
        log_rate = ell + np.log(np.abs(dell))
    return dx, dz, dell, log_rate


class _PiecewiseDense:
    """Dense output over consecutive pieces, each mapping ``s`` to ``(x, z, theta, I)``."""

    def __init__(self, pieces):
        self.pieces = pieces  # (lo, hi, callable)

    def __call__(self, s):
        s_arr = np.atleast_1d(np.asarray(s, dtype=float))
        out = np.empty((4, s_arr.size))
        for k, sv in enumerate(s_arr):
            for lo, hi, fn in self.pieces:
                if lo <= sv <= hi:
                    break
            out[:, k] = fn(sv)
        return out[:, 0] if np.ndim(s) == 0 else out


def _collect_events(named, res, direction, convert=None):
    ev, status, omega = [], "budget", math.inf
    for (kind, fn), ts, ys in zip(named, res.t_events, res.y_events):
        for t_e, y_e in zip(ts, ys):
            y_e = convert(y_e) if convert is not None else y_e
            ev.append(Event(kind, float(t_e), ProfileState(float(t_e), *map(float, y_e))))
            if getattr(fn, "terminal", False):
                status, omega = kind, float(t_e)
    return ev, status, omega


def integrate(lam: float, initial: ProfileState, s_max: float, rtol: float = DEFAULT_TOL,
              atol: float = DEFAULT_TOL, events: Sequence[Callable] = (), direction: int = 1,
              max_step: float = DEFAULT_MAX_STEP, start: str = "custom", tail_switch: float = 1e-3) -> Trajectory:
    """Integrate the profile system from ``initial`` over an arc length ``s_max``.

    DOP853 with dense output; events are located by root finding on the dense
    output.  Terminal events: the axis ``x = 0``, ``theta`` within ``1e-6`` of a
    genuinely singular edge, and ``|x|`` or ``|z|`` above ``1e6``.  The
    crossing ``theta = pi/2`` is recorded without stopping.  With
    ``direction=-1`` the branch ``s < initial.s`` is integrated; samples are
    still returned in increasing ``s``.

    For ``-1 <= lam <= 0`` a forward run that comes within ``tail_switch`` of
    the invariant angle ``acos(-lam)`` continues in logarithmic deviation
    coordinates.  The deviation decays like ``exp(-int x ds)``, far below the
    spacing of doubles near ``theta``; in the new coordinates it stays
    resolved and the rate ``theta'`` is kept as ``dtheta_log``/``dtheta_sign``.
    Set ``tail_switch=0`` to disable.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    if abs(math.sin(initial.theta)) <= SIN_TOL:
        rhs(lam, initial)

    def f(s, y):
        x, _, th, _ = y
        return [math.cos(th), math.sin(th), float(theta_rate(lam, x, th)), x]

    named = _make_events(lam, events)
    th_inf = limit_angle(lam) if direction == 1 and tail_switch > 0 else None
    if th_inf is not None:
        def approach(s, y):
            return abs(y[2] - th_inf) - tail_switch
        approach.terminal, approach.direction = True, -1
        named.append(("tail_switch", approach))

    y0 = initial.as_vector()
    s_end = initial.s + direction * s_max
    switch_now = th_inf is not None and 0.0 < abs(initial.theta - th_inf) <= tail_switch
    if switch_now:
        res = None
        s, Y = np.array([initial.s]), y0[:, None]
        ev, status, omega = [], "tail_switch", initial.s
    else:
        res = solve_ivp(f, (initial.s, s_end), y0, method="DOP853", rtol=rtol, atol=atol,
                        dense_output=True, events=[fn for _, fn in named], max_step=max_step)
        if res.status == -1:
            raise StepFailure(res.message)
        s, Y = res.t, res.y
        ev, status, omega = _collect_events(named, res, direction)
    dth = theta_rate(lam, Y[0], Y[2])
    with np.errstate(divide="ignore"):
        dlog = np.log(np.abs(dth))
    dsign = np.sign(dth).astype(np.int8)
    pieces = [] if res is None else [(min(s[0], s[-1]), max(s[0], s[-1]), res.sol)]

    if status == "tail_switch":
        ev = [e for e in ev if e.kind != "tail_switch"]
        s0, yb = float(s[-1]), Y[:, -1]
        sigma = 1 if yb[2] > th_inf else -1
        ell0 = math.log(abs(yb[2] - th_inf))
        tail_named = [(k, fn) for k, fn in _make_events(lam, events) if k in ("axis", "blowup")]
        tail_fns = []
        for _, fn in tail_named:
            g = (lambda fn: lambda ss, y: fn(ss, [y[0], y[1], th_inf + sigma * math.exp(y[2]), y[3]]))(fn)
            g.terminal, g.direction = fn.terminal, fn.direction
            tail_fns.append(g)

        def ft(ss, y):
            dx, dz, dell, _ = _tail_rates(lam, sigma, y[0], y[2])
            return [float(dx), float(dz), float(dell), y[0]]

        res2 = solve_ivp(ft, (s0, s_end), [yb[0], yb[1], ell0, yb[3]], method="DOP853", rtol=rtol,
                         atol=atol, dense_output=True, events=tail_fns, max_step=max_step)
        if res2.status == -1:
            raise StepFailure(res2.message)
        to_theta = lambda y: np.array([y[0], y[1], th_inf + sigma * math.exp(y[2]), y[3]])
        ev2, status, omega = _collect_events(tail_named, res2, direction, convert=to_theta)
        ev += ev2
        _, _, dell2, log2 = _tail_rates(lam, sigma, res2.y[0][1:], res2.y[2][1:])
        sign2 = (sigma * np.sign(dell2)).astype(np.int8)
        s = np.concatenate([s, res2.t[1:]])
        Y2 = np.vstack([res2.y[0], res2.y[1], th_inf + sigma * np.exp(res2.y[2]), res2.y[3]])
        Y = np.concatenate([Y, Y2[:, 1:]], axis=1)
        dth = np.concatenate([dth, sign2 * np.exp(log2)])
        dlog = np.concatenate([dlog, log2])
        dsign = np.concatenate([dsign, sign2])
        sol2 = res2.sol
        pieces.append((s0, float(res2.t[-1]), lambda ss, sol2=sol2: to_theta(sol2(ss))))
        log.debug("switched to deviation coordinates at s=%g", s0)

    ev.sort(key=lambda e: direction * e.s)
    order = slice(None) if direction == 1 else slice(None, None, -1)
    traj = Trajectory(
        s=s[order], x=Y[0][order], z=Y[1][order], theta=Y[2][order], dtheta=dth[order], lam=lam,
        x_integral=Y[3][order] if initial.x_integral is not None else None,
        events=ev, omega=omega, status=status, start=start, direction=direction,
        dense=_PiecewiseDense(pieces) if len(pieces) > 1 else (pieces[0][2] if pieces else None),
        dtheta_log=dlog[order], dtheta_sign=dsign[order],
    )
    log.debug("integrated lam=%g to s=%g (%s, %d samples)", lam, s[-1], status, len(s))
    return traj


def integrate_from_axis(lam: float, s_max: float, rtol: float = DEFAULT_TOL, atol: float = DEFAULT_TOL,
                        picard=None, sign: int = 1, max_step: float = DEFAULT_MAX_STEP) -> Trajectory:
    """Profile meeting the axis orthogonally at ``s = 0`` (``x = z = theta = 0``).

    The radial-graph fixed point covers ``[0, R]``; its samples form the head
    of the returned trajectory and its end state seeds the arc-length
    integration.
    """
    from .singular_start import PicardConfig, handoff, solve_picard

    if lam < -1.0:
        raise NoSolution(f"no profile meets the axis orthogonally for lam={lam} < -1")
    cfg = picard if picard is not None else PicardConfig(lam=lam, sign=sign)
    sol = solve_picard(cfg)
    head = sol.profile_samples()
    h0 = handoff(sol)
    tail = integrate(lam, h0, s_max - h0.s, rtol=rtol, atol=atol, max_step=max_step, start="axis")
    cat = lambda key, tail_arr: np.concatenate([head[key][:-1], tail_arr])
    traj = Trajectory(
        s=cat("s", tail.s), x=cat("x", tail.x), z=cat("z", tail.z), theta=cat("theta", tail.theta),
        dtheta=cat("dtheta", tail.dtheta), lam=lam, x_integral=cat("x_integral", tail.x_integral),
        events=tail.events, omega=tail.omega, status=tail.status, start="axis", dense=tail.dense,
        picard=sol,
    )
    with np.errstate(divide="ignore"):
        head_log = np.log(np.abs(head["dtheta"][:-1]))
    traj.dtheta_log = np.concatenate([head_log, tail.dtheta_log])
    traj.dtheta_sign = np.concatenate([np.sign(head["dtheta"][:-1]).astype(np.int8), tail.dtheta_sign])
    return traj


def equator_state(x0: float = 1.0) -> ProfileState:
    """Profile crossing the plane z = 0 vertically at distance ``x0`` from the axis."""
    return ProfileState(0.0, float(x0), 0.0, 0.5 * math.pi)


def first_integral_residual(traj: Trajectory) -> np.ndarray:
    """``(1 - cos(theta)) - x^2/2 - lam int_0^s x`` along an axis-started profile."""
    if traj.start != "axis" or traj.x_integral is None:
        raise WrongInitialConditions("the first integral holds for profiles starting on the axis")
    one_minus_cos = 2.0 * np.sin(0.5 * traj.theta) ** 2
    return one_minus_cos - 0.5 * traj.x**2 - traj.lam * traj.x_integral


def convexity_check(traj: Trajectory) -> bool:
    """Whether ``theta' > 0`` at every sample before a terminal event.

    The terminal sample itself is excluded: on the axis ``theta' = x (...)``
    is exactly zero.  Rates that underflow in double precision are judged by
    their sign and finite logarithm.
    """
    if math.isinf(traj.omega):
        keep = np.ones(traj.s.shape, dtype=bool)
    else:
        keep = traj.s < traj.omega if traj.direction == 1 else traj.s > traj.omega
    sign_ok = traj.dtheta_sign[keep] > 0
    resolved = np.isfinite(traj.dtheta_log[keep])
    return bool(np.all(sign_ok & resolved))


def mirror(traj: Trajectory) -> Trajectory:
    """Reflect the profile in the plane z = 0 (``z -> -z``, ``theta -> -theta``)."""
    mirrored_events = [
        Event(e.kind, e.s, replace(e.state, z=-e.state.z, theta=-e.state.theta)) for e in traj.events
    ]
    out = replace(traj, z=-traj.z, theta=-traj.theta, dtheta=-traj.dtheta, events=mirrored_events, dense=None,
                  dtheta_sign=-traj.dtheta_sign)
    return out


def rotational_residual(traj: Trajectory) -> np.ndarray:
    """``K - <N, e3> - lam`` of the surface of revolution at the profile samples."""
    with np.errstate(divide="ignore", invalid="ignore"):
        K = np.sin(traj.theta) * traj.dtheta / traj.x
    return K - np.cos(traj.theta) - traj.lam


# ---------------------------------------------------------------------------
# classification


@dataclass
class ClassificationReport:
    regime: str
    lam: float
    start_mode: str
    witnesses: dict = field(default_factory=dict)
    trajectories: list = field(default_factory=list, repr=False)

    def summary(self) -> str:
        lines = [f"regime={self.regime}", f"lambda={self.lam:.17g}", f"start={self.start_mode}"]
        for key in sorted(self.witnesses):
            val = self.witnesses[key]
            lines.append(f"{key}={val:.17g}" if isinstance(val, float) else f"{key}={val}")
        return "\n".join(lines) + "\n"


def _trailing_variation(s, q, fraction=0.2):
    mask = s >= s[0] + (1.0 - fraction) * (s[-1] - s[0])
    return float(np.ptp(q[mask]))


def classify(lam: float, start_mode: str = "axis_orthogonal", budget: Optional[float] = None,
             tol: float = DEFAULT_TOL, settle: float = 1e-4) -> ClassificationReport:
    """Decide the global shape of the profile from its event pattern.

    ``start_mode="axis_orthogonal"`` starts on the axis and needs
    ``lam >= -1``; ``"equator"`` starts at ``(x, z, theta) = (1, 0, pi/2)``
    and is classified for ``lam <= -1``.  Asymptotic regimes are accepted
    when the monitored quantity varies by less than ``settle`` over the last
    20% of the budget; otherwise :class:`Inconclusive` is raised.
    """
    if start_mode in ("axis", "axis_orthogonal"):
        return _classify_axis(lam, budget if budget is not None else (50.0 if lam == 0 else 100.0), tol, settle)
    if start_mode == "equator":
        return _classify_equator(lam, budget if budget is not None else 100.0, tol)
    raise ValueError(f"unknown start mode {start_mode!r}")


def _classify_axis(lam, budget, tol, settle):
    if lam < -1.0:
        raise NoSolution(f"no profile meets the axis orthogonally for lam={lam}")
    traj = integrate_from_axis(lam, budget, rtol=tol, atol=tol)
    w = {"s_end": float(traj.s[-1]), "x_max": float(traj.x.max()), "theta_end": float(traj.theta[-1]),
         "x_end": float(traj.x[-1]), "z_end": float(traj.z[-1]), "convex": convexity_check(traj)}
    if lam == -1.0:
        if np.all(traj.z == 0.0) and np.all(traj.theta == 0.0):
            return ClassificationReport("horizontal_plane", lam, "axis_orthogonal", w, [traj])
        raise Inconclusive("lam = -1 axis start did not stay flat")
    if lam > 0.0:
        if traj.status != "axis":
            raise Inconclusive(f"no return to the axis within s={budget} (stopped: {traj.status})")
        crossings = traj.events_of("theta_half_pi")
        w["omega"] = traj.omega
        if crossings:
            w["s_equator"] = crossings[0].s
            w["x_equator"] = crossings[0].state.x
        return ClassificationReport("reintersects_axis_nonorthogonal", lam, "axis_orthogonal", w, [traj])
    if traj.status != "budget":
        raise Inconclusive(f"run stopped early on {traj.status}")
    if lam == 0.0:
        var = _trailing_variation(traj.s, traj.x)
        w["trailing_variation"] = var
        if var < settle:
            w["limit_radius"] = float(traj.x[-1])
            return ClassificationReport("asymptotic_to_cylinder", lam, "axis_orthogonal", w, [traj])
        raise Inconclusive(f"x still varies by {var:.3e} over the trailing window")
    var = _trailing_variation(traj.s, traj.theta)
    w["trailing_variation"] = var
    if var < settle:
        w["limit_angle"] = float(traj.theta[-1])
        return ClassificationReport("entire_convex_graph", lam, "axis_orthogonal", w, [traj])
    raise Inconclusive(f"theta still varies by {var:.3e} over the trailing window")


def _classify_equator(lam, budget, tol):
    if lam > -1.0:
        raise Inconclusive("equator starts are classified for lam <= -1 only")
    init = equator_state()
    fwd = integrate(lam, init, budget, rtol=tol, atol=tol, start="equator")
    bwd = integrate(lam, init, budget, rtol=tol, atol=tol, direction=-1, start="equator")
    w = {"forward_status": fwd.status, "backward_status": bwd.status,
         "forward_s_end": float(fwd.s[-1]), "backward_s_end": float(bwd.s[0]),
         "x_max": float(max(fwd.x.max(), bwd.x.max())), "x_min": float(min(fwd.x.min(), bwd.x.min()))}
    if lam == -1.0:
        if bwd.status != "theta_edge" or fwd.status == "theta_edge":
            raise Inconclusive(f"unexpected branch ends ({fwd.status}, {bwd.status})")
        w["z_variation_last_decade"] = last_decade_z_variation(fwd)
        w["theta_end"] = float(fwd.theta[-1])
        return ClassificationReport("lambda_minus_one_graph", lam, "equator", w, [bwd, fwd])
    if fwd.status == "theta_edge" and bwd.status == "theta_edge":
        return ClassificationReport("saddle_bounded", lam, "equator", w, [bwd, fwd])
    raise Inconclusive(f"unexpected branch ends ({fwd.status}, {bwd.status})")


def last_decade_z_variation(traj: Trajectory) -> float:
    """Spread of ``z`` while ``x`` grows through its last factor of ten."""
    x_end = traj.x[-1]
    mask = traj.x >= x_end / 10.0
    return float(np.ptp(traj.z[mask]))


# ---------------------------------------------------------------------------
# lam = 0 on its first integral


@dataclass
class ReducedProfile:
    """Axis-started ``lam = 0`` profile with the first integral imposed exactly.

    ``gap`` is ``sqrt(2) - x`` and ``dx`` is ``x'``, both evaluated from the
    angular deviation so they keep full relative precision after ``x``
    itself has rounded to ``sqrt(2)``.
    """

    s: np.ndarray
    x: np.ndarray
    z: np.ndarray
    theta: np.ndarray
    dtheta: np.ndarray
    gap: np.ndarray
    dx: np.ndarray
    log_deviation: np.ndarray
    dense: Optional[Callable] = field(default=None, repr=False)

    def x_at(self, s):
        """``x`` at arbitrary arc lengths from the dense output."""
        d = np.exp(self.dense(s)[0])
        return 2.0 * np.sin(0.25 * math.pi - 0.5 * d)


def zero_lambda_reduced_profile(s_max: float = 50.0, rtol: float = DEFAULT_TOL, atol: float = DEFAULT_TOL,
                                max_step: float = DEFAULT_MAX_STEP) -> ReducedProfile:
    """Solve the ``lam = 0`` axis profile on the curve ``x = 2 sin(theta/2)``.

    With ``lam = 0`` the first integral reads ``x^2 = 2 (1 - cos(theta))``,
    so ``theta`` alone obeys ``theta' = cos(theta) / cos(theta/2)``, which is
    regular at ``theta = 0``.  The state is ``ell = log(pi/2 - theta)``.
    This route is independent of the fixed-point start and of the
    four-component integrator.
    """
    q = 0.25 * math.pi

    def f(s, y):
        d = math.exp(y[0])
        return [-np.sinc(d / math.pi) / math.cos(q - 0.5 * d), math.cos(d)]

    res = solve_ivp(f, (0.0, s_max), [math.log(0.5 * math.pi), 0.0], method="DOP853",
                    rtol=rtol, atol=atol, max_step=max_step, dense_output=True)
    if res.status == -1:
        raise StepFailure(res.message)
    ell, z = res.y
    d = np.exp(ell)
    return ReducedProfile(
        s=res.t,
        x=2.0 * np.sin(q - 0.5 * d),
        z=z,
        theta=0.5 * math.pi - d,
        dtheta=np.sin(d) / np.cos(q - 0.5 * d),
        gap=4.0 * np.cos(q - 0.25 * d) * np.sin(0.25 * d),
        dx=np.sin(d),
        log_deviation=ell,
        dense=res.sol,
    )
