"""Ambient vectors, curve frames and the local geometry of parametrized surfaces.

Everything here is vectorized over the sample parameters: a patch sampler is
called with arrays ``s, t`` of a common broadcast shape and returns an array of
shape ``s.shape + (3,)``.  Scalars work the same way and give shape ``(3,)``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .errors import DegeneratePoint, VanishingCurvature

DEGENERACY_TOL = 1e-10
FD_STEP = 1e-4

Vec3 = np.ndarray
Sampler = Callable[..., np.ndarray]

E3 = np.array([0.0, 0.0, 1.0])


def vec3(x, y, z) -> np.ndarray:
    """Stack three broadcastable components into an array with trailing axis 3."""
    return np.stack(np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in (x, y, z))), axis=-1)


def dot(a, b):
    return np.sum(np.asarray(a) * np.asarray(b), axis=-1)


def norm(a):
    return np.sqrt(dot(a, a))


def normalize(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    n = norm(a)
    if np.any(n == 0.0):
        raise ValueError("cannot normalize a zero vector")
    return a / np.expand_dims(n, -1)


def det3(a, b, c):
    """Determinant of the 3x3 matrix with rows a, b, c (vectorized)."""
    return dot(np.cross(a, b), c)


def orthonormal_complement(n) -> tuple[np.ndarray, np.ndarray]:
    """Return unit vectors ``e1, e2`` with ``e1 x e2 = n`` for a unit vector n."""
    n = normalize(n)
    helper = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = normalize(np.cross(helper, n))
    e2 = np.cross(n, e1)
    return e1, e2


def _step(p):
    return FD_STEP * (1.0 + np.abs(p))


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class FrenetFrame:
    t: np.ndarray
    n: np.ndarray
    b: np.ndarray
    kappa: float
    tau: float


@dataclass(frozen=True)
class Curve:
    """Space curve sampler with optional analytic derivatives ``d1, d2, d3``."""

    position: Sampler
    d1: Optional[Sampler] = None
    d2: Optional[Sampler] = None
    d3: Optional[Sampler] = None

    def derivatives(self, s):
        s = np.asarray(s, dtype=float)
        p = self.position
        if self.d1 is not None:
            g1 = self.d1(s)
        else:
            h = _step(s)[..., None]
            g1 = (p(s + h[..., 0]) - p(s - h[..., 0])) / (2 * h)
        if self.d2 is not None:
            g2 = self.d2(s)
        elif self.d1 is not None:
            h = _step(s)[..., None]
            g2 = (self.d1(s + h[..., 0]) - self.d1(s - h[..., 0])) / (2 * h)
        else:
            h = _step(s)[..., None]
            g2 = (p(s + h[..., 0]) - 2 * p(s) + p(s - h[..., 0])) / h**2
        if self.d3 is not None:
            g3 = self.d3(s)
        elif self.d2 is not None:
            h = _step(s)[..., None]
            g3 = (self.d2(s + h[..., 0]) - self.d2(s - h[..., 0])) / (2 * h)
        else:
            # third differences of positions lose ~eps/h**3; use a wider stencil
            h = 10 * _step(s)[..., None]
            hs = h[..., 0]
            g3 = (p(s + 2 * hs) - 2 * p(s + hs) + 2 * p(s - hs) - p(s - 2 * hs)) / (2 * h**3)
        return g1, g2, g3


def frenet_frame(curve, s) -> FrenetFrame:
    """Frenet frame, curvature and torsion of ``curve`` at parameter ``s``.

    ``curve`` is a :class:`Curve` or a bare position callable.  The parameter
    need not be arc length.
    """
    if not isinstance(curve, Curve):
        curve = Curve(curve)
    g1, g2, g3 = curve.derivatives(float(s))
    c = np.cross(g1, g2)
    speed = norm(g1)
    cn = norm(c)
    kappa = cn / speed**3
    if kappa < DEGENERACY_TOL:
        raise VanishingCurvature(f"curvature {kappa:.3e} vanishes at s={s}")
    t = g1 / speed
    b = c / cn
    n = np.cross(b, t)
    tau = det3(g1, g2, g3) / cn**2
    return FrenetFrame(t=t, n=n, b=b, kappa=float(kappa), tau=float(tau))


# ---------------------------------------------------------------------------
# surfaces


@dataclass(frozen=True)
class SurfacePatch:
    """Parametrized surface ``(s, t) -> R^3`` on ``s_range x t_range``.

    Missing derivative samplers are replaced by second-order central
    differences with step ``1e-4 * (1 + |parameter|)``.  The closure flags are
    only consulted by the Gauss-Bonnet probe: a direction is ``periodic`` when
    the patch wraps around, and ``s_poles`` marks rectangles whose two
    ``s``-edges each collapse to a single point.
    """

    position: Sampler
    s_range: tuple[float, float]
    t_range: tuple[float, float]
    ds: Optional[Sampler] = None
    dt: Optional[Sampler] = None
    dss: Optional[Sampler] = None
    dst: Optional[Sampler] = None
    dtt: Optional[Sampler] = None
    s_periodic: bool = False
    t_periodic: bool = False
    s_poles: bool = False
    name: str = ""

    def __call__(self, s, t):
        return self.position(s, t)

    @property
    def has_analytic_derivatives(self) -> bool:
        return all(f is not None for f in (self.ds, self.dt, self.dss, self.dst, self.dtt))

    def first_derivatives(self, s, t, method="auto"):
        s, t = np.broadcast_arrays(np.asarray(s, float), np.asarray(t, float))
        p = self.position
        analytic = method == "auto"
        if analytic and self.ds is not None:
            ps = self.ds(s, t)
        else:
            h = _step(s)
            ps = (p(s + h, t) - p(s - h, t)) / (2 * h[..., None])
        if analytic and self.dt is not None:
            pt = self.dt(s, t)
        else:
            h = _step(t)
            pt = (p(s, t + h) - p(s, t - h)) / (2 * h[..., None])
        return ps, pt

    def second_derivatives(self, s, t, method="auto"):
        s, t = np.broadcast_arrays(np.asarray(s, float), np.asarray(t, float))
        p = self.position
        hs, ht = _step(s), _step(t)
        hs3, ht3 = hs[..., None], ht[..., None]
        analytic = method == "auto"
        if analytic and self.dss is not None:
            pss = self.dss(s, t)
        elif analytic and self.ds is not None:
            pss = (self.ds(s + hs, t) - self.ds(s - hs, t)) / (2 * hs3)
        else:
            pss = (p(s + hs, t) - 2 * p(s, t) + p(s - hs, t)) / hs3**2
        if analytic and self.dtt is not None:
            ptt = self.dtt(s, t)
        elif analytic and self.dt is not None:
            ptt = (self.dt(s, t + ht) - self.dt(s, t - ht)) / (2 * ht3)
        else:
            ptt = (p(s, t + ht) - 2 * p(s, t) + p(s, t - ht)) / ht3**2
        if analytic and self.dst is not None:
            pst = self.dst(s, t)
        elif analytic and self.ds is not None:
            pst = (self.ds(s, t + ht) - self.ds(s, t - ht)) / (2 * ht3)
        else:
            pst = (
                p(s + hs, t + ht) - p(s + hs, t - ht) - p(s - hs, t + ht) + p(s - hs, t - ht)
            ) / (4 * hs3 * ht3)
        return pss, pst, ptt

    def reversed(self) -> "SurfacePatch":
        """Same surface with the opposite orientation (``t`` runs backwards)."""
        t0, t1 = self.t_range
        flip = lambda f, sign=1.0: None if f is None else (lambda s, t: sign * f(s, t0 + t1 - t))
        return replace(
            self,
            position=flip(self.position),
            ds=flip(self.ds),
            dt=flip(self.dt, -1.0),
            dss=flip(self.dss),
            dst=flip(self.dst, -1.0),
            dtt=flip(self.dtt),
            name=self.name + " (reversed)",
        )

    def grid(self, ns: int, nt: int, margin: float = 0.0):
        """Node grid ``S, T`` (shape ``(ns, nt)``) covering the rectangle."""
        s = np.linspace(self.s_range[0] + margin, self.s_range[1] - margin, ns)
        t = np.linspace(self.t_range[0] + margin, self.t_range[1] - margin, nt)
        return np.meshgrid(s, t, indexing="ij")


@dataclass(frozen=True)
class FundamentalForms:
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    L: np.ndarray
    M: np.ndarray
    Ncoef: np.ndarray
    normal: np.ndarray

    @property
    def area_element(self):
        return np.sqrt(self.E * self.G - self.F**2)

    @property
    def gauss_curvature(self):
        return (self.L * self.Ncoef - self.M**2) / (self.E * self.G - self.F**2)


def _checked_normal(ps, pt):
    c = np.cross(ps, pt)
    cn = norm(c)
    if np.any(cn < DEGENERACY_TOL):
        raise DegeneratePoint(f"|ds x dt| = {np.min(cn):.3e} below {DEGENERACY_TOL}")
    return c / cn[..., None]


def fundamental_forms(patch: SurfacePatch, s, t, method="auto") -> FundamentalForms:
    """First and second fundamental forms plus unit normal ``ds x dt / |ds x dt|``.

    ``method="fd"`` ignores analytic derivative samplers and differences the
    position directly; it exists for cross-validation.
    """
    ps, pt = patch.first_derivatives(s, t, method)
    pss, pst, ptt = patch.second_derivatives(s, t, method)
    nrm = _checked_normal(ps, pt)
    return FundamentalForms(
        E=dot(ps, ps),
        F=dot(ps, pt),
        G=dot(pt, pt),
        L=dot(pss, nrm),
        M=dot(pst, nrm),
        Ncoef=dot(ptt, nrm),
        normal=nrm,
    )


def gauss_curvature(patch: SurfacePatch, s, t, method="auto"):
    return fundamental_forms(patch, s, t, method).gauss_curvature


def unit_normal(patch: SurfacePatch, s, t, method="auto") -> np.ndarray:
    ps, pt = patch.first_derivatives(s, t, method)
    return _checked_normal(ps, pt)


def translator_residual(patch: SurfacePatch, v, lam: float, s, t, method="auto"):
    """Pointwise ``K - <N, v> - lam``; zero exactly where the patch is a lam-translator."""
    v = np.asarray(v, dtype=float)
    if abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise ValueError("speed vector must be a unit vector")
    ff = fundamental_forms(patch, s, t, method)
    return ff.gauss_curvature - dot(ff.normal, v) - lam
