"""Radial-graph start at the rotation axis by fixed-point iteration.

Near the axis the profile is written as a graph ``z = u(r)`` with
``u(0) = u'(0) = 0``.  Writing ``f(x) = x / sqrt(1 + x^2)`` and
``g(x) = 2 / sqrt(1 + x^2) + 2 lam``, the singular ODE integrates to
``f(u')^2 = int_0^r t g(u'(t)) dt`` and ``u`` is the fixed point of

    (T u)(r) = int_0^r f^{-1}( sqrt( int_0^s t g(u'(t)) dt ) ) ds

on a small ball of C^1([0, R]) with norm ``|u|_inf + |u'|_inf``.  Both nested
integrals use the composite trapezoid rule on one uniform grid.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_simpson, cumulative_trapezoid, solve_ivp

from .errors import (
    BadEpsilon,
    InverseDomain,
    NegativeRadicand,
    NoConvergence,
    NoSolution,
    NotConverged,
)

log = logging.getLogger(__name__)

DEFAULT_EPSILON = 0.3
MAX_RETRIES = 5


def auxiliary_f(x):
    x = np.asarray(x, dtype=float)
    return x / np.sqrt(1.0 + x * x)


def auxiliary_f_inverse(y):
    y = np.asarray(y, dtype=float)
    if np.any(np.abs(y) >= 1.0):
        raise InverseDomain("f^-1 is defined on (-1, 1) only")
    return y / np.sqrt(1.0 - y * y)


def auxiliary_g(x, lam: float):
    x = np.asarray(x, dtype=float)
    return 2.0 / np.sqrt(1.0 + x * x) + 2.0 * lam


def epsilon_limit(lam: float) -> float:
    """Largest admissible ball radius: 1, or ``sqrt(1-lam^2)/(-lam)`` if lam < 0."""
    if -1.0 < lam < 0.0:
        return min(1.0, np.sqrt(1.0 - lam * lam) / (-lam))
    return 1.0


def picard_radius(lam: float, epsilon: float) -> float:
    """0.9 times ``min(1/sqrt(M), eps/2, sqrt(2) eps / sqrt(M (4 + eps^2)))``, ``M = 2 + 2 lam``."""
    if lam <= -1.0:
        raise ValueError("the axis start needs lam > -1")
    if not (0.0 < epsilon < 1.0):
        raise BadEpsilon(f"epsilon must lie in (0, 1), got {epsilon}")
    if lam < 0.0 and epsilon >= np.sqrt(1.0 - lam * lam) / (-lam):
        raise BadEpsilon(f"epsilon={epsilon} too large for lam={lam}: g(u') may turn negative")
    M = 2.0 + 2.0 * lam
    bounds = (1.0 / np.sqrt(M), epsilon / 2.0, np.sqrt(2.0) * epsilon / np.sqrt(M * (4.0 + epsilon**2)))
    return 0.9 * min(bounds)


@dataclass(frozen=True)
class PicardConfig:
    lam: float
    epsilon: Optional[float] = None
    R: Optional[float] = None
    grid_n: int = 2048
    max_iter: int = 100
    tol: float = 1e-13
    sign: int = 1

    def __post_init__(self):
        if self.grid_n < 64:
            raise ValueError("grid_n must be at least 64")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.lam > -1.0:
            eps = self.epsilon
            if eps is None:
                eps = min(DEFAULT_EPSILON, 0.9 * epsilon_limit(self.lam))
                object.__setattr__(self, "epsilon", eps)
            if self.R is None:
                object.__setattr__(self, "R", picard_radius(self.lam, eps))

    @property
    def M(self) -> float:
        return 2.0 + 2.0 * self.lam

    @property
    def grid(self) -> np.ndarray:
        return np.linspace(0.0, self.R, self.grid_n + 1)


@dataclass
class PicardSolution:
    r: np.ndarray
    u: np.ndarray
    du: np.ndarray
    lam: float
    epsilon: float
    R: float
    sign: int = 1
    iterations_used: int = 0
    contraction_factors: list = field(default_factory=list)
    converged: bool = True
    final_distance: float = 0.0
    retries: int = 0

    @property
    def c1_norm(self) -> float:
        return c1_norm(self.u, self.du)

    def second_derivative_at_axis(self) -> float:
        """Finite-difference estimate of ``u''(0)``; ``u'`` is odd in r so the error is O(h^2)."""
        return float(self.du[1] / self.r[1])

    def second_derivative(self) -> np.ndarray:
        d2 = np.gradient(self.du, self.r, edge_order=2)
        d2[0] = self.second_derivative_at_axis()
        return d2

    def ode_residual(self) -> np.ndarray:
        """Residual of ``u' u'' / (r (1+u'^2)^2) = 1/sqrt(1+u'^2) + lam`` at interior nodes."""
        r, p = self.r[1:-1], self.du[1:-1]
        d2 = self.second_derivative()[1:-1]
        w = 1.0 + p * p
        return p * d2 / (r * w * w) - 1.0 / np.sqrt(w) - self.lam

    def arc_length(self) -> np.ndarray:
        return cumulative_simpson(np.sqrt(1.0 + self.du**2), x=self.r, initial=0.0)

    def profile_samples(self) -> dict[str, np.ndarray]:
        """The graph as arc-length profile samples ``s, x, z, theta, dtheta, x_integral``."""
        speed = np.sqrt(1.0 + self.du**2)
        return {
            "s": self.arc_length(),
            "x": self.r.copy(),
            "z": self.u.copy(),
            "theta": np.arctan(self.du),
            "dtheta": self.second_derivative() / speed**3,
            "x_integral": cumulative_simpson(self.r * speed, x=self.r, initial=0.0),
        }

    def to_csv(self, path) -> None:
        with open(path, "w", newline="\n") as fh:
            fh.write(f"# iterations_used={self.iterations_used}\n")
            fh.write(f"# lambda={self.lam:.17g} epsilon={self.epsilon:.17g} R={self.R:.17g}\n")
            fh.write("# contraction_factors=" + ",".join(f"{m:.17g}" for m in self.contraction_factors) + "\n")
            fh.write("r,u,u_prime\n")
            for row in zip(self.r, self.u, self.du):
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def c1_norm(u, du) -> float:
    return float(np.max(np.abs(u)) + np.max(np.abs(du)))


def apply_T(du, config: PicardConfig) -> tuple[np.ndarray, np.ndarray]:
    """One application of the fixed-point operator.

    ``du`` holds samples of ``u'`` on ``config.grid`` (a
    :class:`PicardSolution` is accepted too; only its derivative matters).
    Returns the samples of ``T u`` and ``(T u)'``.
    """
    if isinstance(du, PicardSolution):
        du = du.du
    r = config.grid
    du = np.asarray(du, dtype=float)
    inner = cumulative_trapezoid(r * auxiliary_g(du, config.lam), r, initial=0.0)
    if np.any(inner < -1e-15):
        raise NegativeRadicand(f"inner integral reaches {inner.min():.3e}")
    root = np.sqrt(np.clip(inner, 0.0, None))
    new_du = config.sign * auxiliary_f_inverse(root)
    new_u = cumulative_trapezoid(new_du, r, initial=0.0)
    return new_u, new_du


def _iterate(config: PicardConfig) -> PicardSolution:
    r = config.grid
    u = np.zeros_like(r)
    du = np.zeros_like(r)
    factors = []
    prev_dist = None
    dist = np.inf
    for k in range(1, config.max_iter + 1):
        new_u, new_du = apply_T(du, config)
        dist = c1_norm(new_u - u, new_du - du)
        if prev_dist is not None and prev_dist > 0.0 and dist > 0.0:
            factors.append(dist / prev_dist)
        u, du, prev_dist = new_u, new_du, dist
        if dist < config.tol:
            return PicardSolution(r, u, du, config.lam, config.epsilon, config.R, config.sign,
                                  iterations_used=k, contraction_factors=factors, final_distance=dist)
    raise NoConvergence(f"no convergence in {config.max_iter} iterations (last step {dist:.3e})")


def solve_picard(config: PicardConfig) -> PicardSolution:
    """Fixed point of the axis operator from ``u0 = 0``.

    ``lam < -1`` has no solution; ``lam = -1`` gives ``u = 0`` exactly.  On
    non-convergence the radius is halved, at most five times.
    """
    if config.lam < -1.0:
        raise NoSolution(f"no solution orthogonal to the axis for lam={config.lam} < -1")
    if config.lam == -1.0:
        R = config.R if config.R is not None else 0.9 * (config.epsilon or DEFAULT_EPSILON) / 2.0
        r = np.linspace(0.0, R, config.grid_n + 1)
        zero = np.zeros_like(r)
        return PicardSolution(r, zero, zero.copy(), -1.0, config.epsilon or DEFAULT_EPSILON, R,
                              config.sign, iterations_used=0)
    cfg = config
    for attempt in range(MAX_RETRIES + 1):
        try:
            sol = _iterate(cfg)
            sol.retries = attempt
            return sol
        except NoConvergence:
            if attempt == MAX_RETRIES:
                raise
            log.info("Picard iteration stalled at R=%g; halving", cfg.R)
            cfg = replace(cfg, R=cfg.R / 2.0)
    raise AssertionError("unreachable")


def contraction_probe(config: PicardConfig, trials: int = 100, seed: int = 0, degree: int = 5) -> float:
    """Largest observed ``|Tu - Tw| / |u - w|`` over random pairs in the epsilon-ball.

    Candidates are random polynomials ``u'(r) = sum_j c_j (r/R)^j`` scaled
    into the ball.  Pairs with ``u = w`` are skipped.
    """
    rng = np.random.default_rng(seed)
    r = config.grid

    def candidate():
        c = rng.normal(size=degree)
        du = sum(c[j] * (r / config.R) ** (j + 1) for j in range(degree))
        u = cumulative_trapezoid(du, r, initial=0.0)
        scale = config.epsilon * rng.uniform(0.05, 1.0) / max(c1_norm(u, du), 1e-300)
        return u * scale, du * scale

    worst = 0.0
    for _ in range(trials):
        (u, du), (w, dw) = candidate(), candidate()
        denom = c1_norm(u - w, du - dw)
        if denom == 0.0:
            continue
        tu, tdu = apply_T(du, config)
        tw, tdw = apply_T(dw, config)
        worst = max(worst, c1_norm(tu - tw, tdu - tdw) / denom)
    return worst


def integrate_radial(lam: float, r0: float, u0: float, du0: float, r1: float, rtol=1e-12, atol=1e-14):
    """Integrate the radial graph equation from a regular point ``r0 > 0`` with an implicit method."""
    def rhs(r, y):
        p = y[1]
        w = 1.0 + p * p
        return [p, r * w * w * (1.0 / np.sqrt(w) + lam) / p]

    return solve_ivp(rhs, (r0, r1), [u0, du0], method="Radau", rtol=rtol, atol=atol, dense_output=True)


def handoff(sol: PicardSolution):
    """Regular profile state at ``r = R`` for the arc-length integrator."""
    from .profile_ode import ProfileState

    if not sol.converged:
        raise NotConverged("Picard iteration did not converge")
    samples = sol.profile_samples()
    return ProfileState(
        s=float(samples["s"][-1]),
        x=float(sol.r[-1]),
        z=float(sol.u[-1]),
        theta=float(np.arctan(sol.du[-1])),
        x_integral=float(samples["x_integral"][-1]),
    )
