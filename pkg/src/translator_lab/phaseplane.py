"""The autonomous system in the ``(x, theta)`` plane obtained by dropping ``z``.

    x' = cos(theta),   theta' = x (cos(theta) + lam) / sin(theta),   theta in (0, pi).

Its only singular point is ``P = (0, pi/2)``.
"""
from __future__ import annotations

import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import DomainBoundary, StepFailure
from .profile_ode import DEFAULT_MAX_STEP, DEFAULT_TOL

log = logging.getLogger(__name__)

DOMAIN_MARGIN = 1e-6
SINGULAR_POINT = (0.0, 0.5 * math.pi)
AXIS_SEED = (1e-4, 1e-4)
EQUATOR_SEED = (1.0, 0.5 * math.pi)
KIND_TOL = 1e-12


def vector_field(lam: float, x, theta):
    """``(x', theta')``; raises :class:`DomainBoundary` where ``|sin(theta)| < 1e-6``."""
    x = np.asarray(x, dtype=float)
    theta = np.asarray(theta, dtype=float)
    sin = np.sin(theta)
    if np.any(np.abs(sin) < DOMAIN_MARGIN):
        raise DomainBoundary("theta within 1e-6 of a multiple of pi")
    return np.cos(theta), x * (np.cos(theta) + lam) / sin


def analytic_jacobian(lam: float) -> np.ndarray:
    return np.array([[0.0, -1.0], [float(lam), 0.0]])


def fd_jacobian(lam: float, point=SINGULAR_POINT, h: float = 1e-6) -> np.ndarray:
    x0, t0 = point
    J = np.empty((2, 2))
    for j, (dx, dt) in enumerate(((h, 0.0), (0.0, h))):
        plus = vector_field(lam, x0 + dx, t0 + dt)
        minus = vector_field(lam, x0 - dx, t0 - dt)
        J[:, j] = (np.array(plus) - np.array(minus)) / (2.0 * h)
    return J


def closed_form_eigenvalues(lam: float) -> tuple[complex, complex]:
    """``(+sqrt(-lam), -sqrt(-lam))`` as complex numbers."""
    r = complex(np.sqrt(complex(-lam)))
    return r, -r


def classify_eigenvalues(eigs, tol: float = KIND_TOL) -> str:
    a, b = eigs
    if abs(a) <= tol and abs(b) <= tol:
        return "degenerate"
    if abs(a.real) <= tol and abs(b.real) <= tol:
        return "center"
    if a.real * b.real < 0 and abs(a.imag) <= tol and abs(b.imag) <= tol:
        return "saddle"
    return "node_like"


def _sorted_eigs(values) -> tuple[complex, complex]:
    vals = sorted((complex(v) for v in values), key=lambda c: (c.real, c.imag), reverse=True)
    return vals[0], vals[1]


@dataclass(frozen=True)
class SingularPointReport:
    lam: float
    point: tuple
    jacobian: np.ndarray
    fd_jacobian: np.ndarray
    eigenvalues: tuple
    closed_form: tuple
    kind: str
    note: str = ""

    @property
    def jacobian_mismatch(self) -> float:
        return float(np.max(np.abs(self.jacobian - self.fd_jacobian)))

    @property
    def eigenvalue_error(self) -> float:
        ref = _sorted_eigs(self.closed_form)
        return float(max(abs(a - b) for a, b in zip(self.eigenvalues, ref)))


def linearize(lam: float) -> SingularPointReport:
    """Linearization at ``P``: eigenvalues of the Jacobian and their planar type."""
    J = analytic_jacobian(lam)
    eigs = _sorted_eigs(np.linalg.eigvals(J))
    kind = classify_eigenvalues(eigs)
    note = ""
    if lam == -1.0:
        note = (f"computed eigenvalues {eigs[0]:.6g}, {eigs[1]:.6g} are real with opposite signs "
                "(saddle); a double positive eigenvalue is not what this Jacobian gives")
        log.warning("lam=-1 linearization: %s", note)
    return SingularPointReport(lam, SINGULAR_POINT, J, fd_jacobian(lam), eigs,
                               closed_form_eigenvalues(lam), kind, note)


# ---------------------------------------------------------------------------
# portraits


@dataclass
class PortraitTrajectory:
    seed: tuple
    s: np.ndarray
    x: np.ndarray
    theta: np.ndarray
    forward_status: str
    backward_status: str
    axis_crossings: list = field(default_factory=list)  # (s, theta) with x = 0

    def to_csv(self) -> str:
        buf = io.StringIO(newline="")
        buf.write("s,x,theta\n")
        for row in zip(self.s, self.x, self.theta):
            buf.write(",".join(f"{v:.17g}" for v in row) + "\n")
        return buf.getvalue()


@dataclass
class PortraitGrid:
    lam: float
    rectangle: tuple
    seeds: list
    trajectories: list
    field_x: np.ndarray
    field_theta: np.ndarray
    field_dx: np.ndarray
    field_dtheta: np.ndarray

    def field_csv(self) -> str:
        buf = io.StringIO(newline="")
        buf.write("x,theta,dx,dtheta\n")
        for row in zip(self.field_x.ravel(), self.field_theta.ravel(),
                       self.field_dx.ravel(), self.field_dtheta.ravel()):
            buf.write(",".join(f"{v:.17g}" for v in row) + "\n")
        return buf.getvalue()


def _check_rectangle(rect):
    x0, x1, t0, t1 = map(float, rect)
    if not (x0 < x1 and 0.0 < t0 < t1 < math.pi):
        raise ValueError("rectangle must be (x0, x1, t0, t1) with 0 < t0 < t1 < pi")
    return x0, x1, t0, t1


def _branch(lam, seed, rect, budget, direction, rtol, atol, max_step):
    x0, x1, t0, t1 = rect

    def f(s, y):
        th = y[1]
        return [math.cos(th), y[0] * (math.cos(th) + lam) / math.sin(th)]

    def edge(s, y):
        return abs(math.sin(y[1])) - DOMAIN_MARGIN
    edge.terminal, edge.direction = True, -1

    def leave(s, y):
        return min(y[0] - x0, x1 - y[0], y[1] - t0, t1 - y[1])
    leave.terminal, leave.direction = True, -1

    def axis(s, y):
        return y[0]

    res = solve_ivp(f, (0.0, direction * budget), list(seed), method="DOP853", rtol=rtol, atol=atol,
                    max_step=max_step, events=[edge, leave, axis])
    if res.status == -1:
        raise StepFailure(res.message)
    status = "budget"
    if res.t_events[0].size:
        status = "domain_boundary"
    elif res.t_events[1].size:
        status = "left_rectangle"
    crossings = [(float(s), float(y[1])) for s, y in zip(res.t_events[2], res.y_events[2])]
    return res.t, res.y, status, crossings


def trace(lam: float, seed, rectangle=(-3.0, 3.0, 1e-3, math.pi - 1e-3), budget: float = 20.0,
          rtol: float = DEFAULT_TOL, atol: float = DEFAULT_TOL, max_step: float = DEFAULT_MAX_STEP
          ) -> PortraitTrajectory:
    """Forward and backward orbit through ``seed``, merged in increasing ``s``.

    A branch stops at ``budget``, on leaving the rectangle, or within 1e-6 of
    ``sin(theta) = 0``.
    """
    rect = _check_rectangle(rectangle)
    seed = (float(seed[0]), float(seed[1]))
    if abs(math.sin(seed[1])) < DOMAIN_MARGIN:
        raise DomainBoundary("seed lies on the domain boundary")
    fs, fy, fstat, fcross = _branch(lam, seed, rect, budget, 1, rtol, atol, max_step)
    bs, by, bstat, bcross = _branch(lam, seed, rect, budget, -1, rtol, atol, max_step)
    s = np.concatenate([bs[::-1], fs[1:]])
    y = np.concatenate([by[:, ::-1], fy[:, 1:]], axis=1)
    crossings = sorted(bcross + fcross)
    return PortraitTrajectory(seed, s, y[0], y[1], fstat, bstat, crossings)


def _trace_job(args):
    return trace(*args)


def sample_portrait(lam: float, rectangle=(-3.0, 3.0, 1e-3, math.pi - 1e-3), seeds: Optional[Sequence] = None,
                    budget: float = 20.0, field_n: int = 21, jobs: int = 1) -> PortraitGrid:
    """Orbits through the canonical seeds plus ``seeds``, and a direction field on the rectangle.

    The canonical seeds are ``(1e-4, 1e-4)`` (just off the axis start) and
    ``(1, pi/2)``.  Field nodes closer than 1e-6 to ``sin(theta) = 0`` are
    dropped.  With ``jobs > 1`` orbits are traced in worker processes; the
    output does not depend on ``jobs``.
    """
    rect = _check_rectangle(rectangle)
    all_seeds = [AXIS_SEED, EQUATOR_SEED] + [tuple(map(float, sd)) for sd in (seeds or [])]
    args = [(lam, sd, rect, budget) for sd in all_seeds]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            trajs = list(pool.map(_trace_job, args))
    else:
        trajs = [_trace_job(a) for a in args]

    X, T = np.meshgrid(np.linspace(rect[0], rect[1], field_n), np.linspace(rect[2], rect[3], field_n),
                       indexing="ij")
    keep = np.abs(np.sin(T)) >= DOMAIN_MARGIN
    X, T = X[keep], T[keep]
    dX, dT = vector_field(lam, X, T)
    return PortraitGrid(lam, rect, all_seeds, trajs, X, T, dX, dT)
