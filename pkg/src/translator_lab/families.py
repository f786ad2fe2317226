"""Closed-form lambda-translator families and generic ruled / translation surfaces.

Each ``make_*`` constructor returns a :class:`Family`: a :class:`SurfacePatch`
with analytic derivatives, the speed ``v`` and the value of ``lam`` for which
``K = <N, v> + lam`` holds on the patch (with the patch orientation
``ds x dt``).  Passing ``reverse=True`` flips the orientation, which keeps
``lam`` and replaces ``v`` by ``-v``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import geomcore as gc
from .errors import (
    BadAngle,
    BadParameters,
    CylindricalRuling,
    NonPositiveRadius,
    StrictionPoint,
)
from .geomcore import SurfacePatch, vec3

EDGE_MARGIN = 1e-3
KINDS = ("plane", "cylinder", "cone", "tangent_of_helix", "rotational", "translation", "ruled")


@dataclass(frozen=True)
class FamilyDescriptor:
    kind: str
    lam: float
    v: tuple[float, float, float]
    params: dict = field(default_factory=dict)
    is_translator: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")

    def to_config(self) -> str:
        """Plain-text ``key=value`` lines (17 significant digits)."""
        lines = [f"kind={self.kind}", f"lambda={self.lam:.17g}", "v=" + ",".join(f"{c:.17g}" for c in self.v)]
        lines.append(f"is_translator={'true' if self.is_translator else 'false'}")
        for key in sorted(self.params):
            val = self.params[key]
            if isinstance(val, bool):
                val = "true" if val else "false"
            elif isinstance(val, (tuple, list, np.ndarray)):
                val = ",".join(f"{float(c):.17g}" for c in val)
            elif isinstance(val, float):
                val = f"{val:.17g}"
            lines.append(f"{key}={val}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_config(cls, text: str) -> "FamilyDescriptor":
        raw = parse_key_values(text)
        kind = raw.pop("kind")
        lam = float(raw.pop("lambda"))
        v = tuple(float(c) for c in raw.pop("v").split(","))
        is_tr = raw.pop("is_translator", "true") == "true"
        params = {}
        for key, val in raw.items():
            if val in ("true", "false"):
                params[key] = val == "true"
            elif "," in val:
                params[key] = tuple(float(c) for c in val.split(","))
            else:
                params[key] = float(val)
        return cls(kind=kind, lam=lam, v=v, params=params, is_translator=is_tr)


def parse_key_values(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise ValueError(f"malformed config line {line!r}")
        out[key.strip()] = val.strip()
    return out


@dataclass(frozen=True)
class Family:
    patch: SurfacePatch
    lam: float
    v: np.ndarray
    descriptor: FamilyDescriptor

    def residual(self, s, t, method="auto"):
        return gc.translator_residual(self.patch, self.v, self.lam, s, t, method)

    def max_residual(self, n: int = 32) -> float:
        S, T = self.patch.grid(n, n)
        return float(np.max(np.abs(self.residual(S, T))))


def _finish(patch, lam, v, kind, params, reverse, is_translator=True) -> Family:
    v = np.asarray(v, dtype=float)
    if reverse:
        patch = patch.reversed()
        v = -v
    params = dict(params, reversed=bool(reverse))
    desc = FamilyDescriptor(kind=kind, lam=float(lam), v=tuple(float(c) for c in v),
                            params=params, is_translator=is_translator)
    return Family(patch=patch, lam=float(lam), v=v, descriptor=desc)


def _unit(v, what="vector"):
    v = np.asarray(v, dtype=float)
    if abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise BadParameters(f"{what} must be a unit vector")
    return v


# ---------------------------------------------------------------------------
# rotational patches


def rotational_patch(x, dx, ddx, z, dz, ddz, s_range, t_range=(0.0, 2 * np.pi), **flags) -> SurfacePatch:
    """Surface of revolution ``(x(s) cos t, x(s) sin t, z(s))`` about the z-axis.

    The six profile callables give ``x, x', x''`` and ``z, z', z''``; ``s``
    need not be arc length.  With arc length the unit normal is
    ``(-z' cos t, -z' sin t, x')``.
    """
    def pos(s, t):
        r = x(s)
        return vec3(r * np.cos(t), r * np.sin(t), z(s) + 0 * t)

    return SurfacePatch(
        position=pos,
        s_range=tuple(s_range),
        t_range=tuple(t_range),
        ds=lambda s, t: vec3(dx(s) * np.cos(t), dx(s) * np.sin(t), dz(s) + 0 * t),
        dt=lambda s, t: vec3(-x(s) * np.sin(t), x(s) * np.cos(t), 0 * s * t),
        dss=lambda s, t: vec3(ddx(s) * np.cos(t), ddx(s) * np.sin(t), ddz(s) + 0 * t),
        dst=lambda s, t: vec3(-dx(s) * np.sin(t), dx(s) * np.cos(t), 0 * s * t),
        dtt=lambda s, t: vec3(-x(s) * np.cos(t), -x(s) * np.sin(t), 0 * s * t),
        t_periodic=abs(t_range[1] - t_range[0] - 2 * np.pi) < 1e-15,
        **flags,
    )


def make_line_of_revolution(theta0: float, x0: float = 1.0, length: float = 1.0, reverse=False) -> Family:
    """Rotate the straight profile of constant tangent angle ``theta0`` about the z-axis.

    Always a translator with ``lam = -cos(theta0)`` and ``v = e3``: a
    horizontal plane (theta0 = 0 or pi), a cylinder (theta0 = pi/2) or a cone.
    The profile starts at distance ``x0`` from the axis and must stay off it.
    """
    c, sn = np.cos(theta0), np.sin(theta0)
    if x0 <= 0 or x0 + length * c <= 0:
        raise BadParameters("profile must stay at positive distance from the axis")
    zero = lambda s: 0.0 * s
    patch = rotational_patch(
        lambda s: x0 + s * c, lambda s: c + 0.0 * s, zero,
        lambda s: s * sn, lambda s: sn + 0.0 * s, zero,
        (0.0, length), name=f"line of revolution theta0={theta0:.6g}",
    )
    if abs(sn) < 1e-15:
        kind = "plane"
    elif abs(c) < 1e-15:
        kind = "cylinder"
    else:
        kind = "cone"
    return _finish(patch, -c, gc.E3, kind, {"theta0": float(theta0), "x0": float(x0), "profile": "line"}, reverse)


# ---------------------------------------------------------------------------
# planes, cylinders, cones


def make_plane(normal, point=(0.0, 0.0, 0.0), v=(0.0, 0.0, 1.0), reverse=False) -> Family:
    """Plane through ``point`` with unit ``normal``; a translator with ``lam = -<normal, v>``."""
    nrm = _unit(normal, "normal")
    v = _unit(v, "speed")
    point = np.asarray(point, dtype=float)
    e1, e2 = gc.orthonormal_complement(nrm)
    zero = lambda s, t: np.zeros(np.broadcast(s, t).shape + (3,))
    patch = SurfacePatch(
        position=lambda s, t: point + np.asarray(s)[..., None] * e1 + np.asarray(t)[..., None] * e2,
        s_range=(-1.0, 1.0),
        t_range=(-1.0, 1.0),
        ds=lambda s, t: np.broadcast_to(e1, np.broadcast(s, t).shape + (3,)).copy(),
        dt=lambda s, t: np.broadcast_to(e2, np.broadcast(s, t).shape + (3,)).copy(),
        dss=zero, dst=zero, dtt=zero,
        name="plane",
    )
    lam = -float(np.dot(nrm, v))
    return _finish(patch, lam, v, "plane", {"normal": tuple(nrm), "point": tuple(point)}, reverse)


def make_cylinder(radius: float, axis=(0.0, 0.0, 1.0), v=None, height: float = 2.0, reverse=False) -> Family:
    """Circular cylinder about ``axis`` through the origin.

    ``lam = 0``; the translator property needs ``v`` parallel to the axis
    (the default).  For other ``v`` the returned family is flagged as not
    being a translator.
    """
    if radius <= 0:
        raise NonPositiveRadius(f"radius must be positive, got {radius}")
    axis = _unit(axis, "axis")
    v = axis if v is None else _unit(v, "speed")
    e1, e2 = gc.orthonormal_complement(axis)
    E1, E2, A = e1, e2, axis
    r = float(radius)

    def comb(a, b, c):
        a, b, c = (np.asarray(q, dtype=float)[..., None] for q in (a, b, c))
        return a * E1 + b * E2 + c * A

    patch = SurfacePatch(
        position=lambda s, t: comb(r * np.cos(s), r * np.sin(s), t + 0 * s),
        s_range=(0.0, 2 * np.pi),
        t_range=(-height / 2, height / 2),
        ds=lambda s, t: comb(-r * np.sin(s), r * np.cos(s), 0 * s * t),
        dt=lambda s, t: comb(0 * s * t, 0 * s * t, 1.0 + 0 * s * t),
        dss=lambda s, t: comb(-r * np.cos(s), -r * np.sin(s), 0 * s * t),
        dst=lambda s, t: comb(0 * s * t, 0 * s * t, 0 * s * t),
        dtt=lambda s, t: comb(0 * s * t, 0 * s * t, 0 * s * t),
        s_periodic=True,
        name=f"cylinder r={r:g}",
    )
    parallel = abs(abs(float(np.dot(axis, v))) - 1.0) < 1e-12
    return _finish(patch, 0.0, v, "cylinder", {"radius": r, "axis": tuple(axis)}, reverse, is_translator=parallel)


def make_cone(theta0: float, v=(0.0, 0.0, 1.0), length: float = 2.0, reverse=False) -> Family:
    """Rotational cone with apex at the origin and profile angle ``theta0`` in (0, pi/2).

    ``K = 0`` and ``<N, v> = cos(theta0)``, so ``lam = -cos(theta0)``.  The
    apex is cut off by a margin of ``1e-3`` in arc length.
    """
    if not (0.0 < theta0 < np.pi / 2):
        raise BadAngle(f"theta0 must lie in (0, pi/2), got {theta0}")
    v = _unit(v, "speed")
    if not np.allclose(v, gc.E3):
        raise BadParameters("cones are built about the z-axis with v = (0, 0, 1)")
    c, sn = np.cos(theta0), np.sin(theta0)
    zero = lambda s: 0.0 * s
    patch = rotational_patch(
        lambda s: s * c, lambda s: c + 0.0 * s, zero,
        lambda s: s * sn, lambda s: sn + 0.0 * s, zero,
        (EDGE_MARGIN, length), name=f"cone theta0={theta0:.6g}",
    )
    return _finish(patch, -c, v, "cone", {"theta0": float(theta0)}, reverse)


# ---------------------------------------------------------------------------
# helices and tangent surfaces


def circular_helix(a: float, b: float) -> gc.Curve:
    """Arc-length circular helix ``(a cos(s/c), a sin(s/c), b s/c)``, ``c = sqrt(a^2 + b^2)``."""
    c = np.hypot(a, b)

    def d(k):
        def f(s):
            u = np.asarray(s, dtype=float) / c
            cos, sin = np.cos(u), np.sin(u)
            if k == 0:
                return vec3(a * cos, a * sin, b * u)
            if k == 1:
                return vec3(-a * sin, a * cos, b + 0 * u) / c
            if k == 2:
                return vec3(-a * cos, -a * sin, 0 * u) / c**2
            return vec3(a * sin, -a * cos, 0 * u) / c**3
        return f

    return gc.Curve(d(0), d(1), d(2), d(3))


def make_tangent_of_helix(a: float, b: float, v=(0.0, 0.0, 1.0), side: int = 1,
                          t_max: float = 2.0, length: float = 2 * np.pi, reverse=False) -> Family:
    """Tangent surface ``gamma(s) + t gamma'(s)`` of a circular helix.

    ``K = 0`` and the normal is ``-side * binormal``, so
    ``lam = side * a / sqrt(a^2 + b^2)``.  ``side`` picks the sheet
    ``t > 0`` (+1) or ``t < 0`` (-1); the edge of regression ``t = 0`` is cut
    off by a margin of ``1e-3``.
    """
    if a <= 0 or b == 0:
        raise BadParameters("need a > 0 and b != 0 (otherwise a circle or a line)")
    if side not in (1, -1):
        raise BadParameters("side must be +1 or -1")
    v = _unit(v, "speed")
    if not np.allclose(v, gc.E3):
        raise BadParameters("the helix axis is the z-axis; use v = (0, 0, 1)")
    g = circular_helix(a, b)
    T = lambda t: np.asarray(t, dtype=float)[..., None]
    t_range = (EDGE_MARGIN, t_max) if side == 1 else (-t_max, -EDGE_MARGIN)
    patch = SurfacePatch(
        position=lambda s, t: g.position(s) + T(t) * g.d1(s),
        s_range=(0.0, length),
        t_range=t_range,
        ds=lambda s, t: g.d1(s) + T(t) * g.d2(s),
        dt=lambda s, t: g.d1(s) + 0 * T(t),
        dss=lambda s, t: g.d2(s) + T(t) * g.d3(s),
        dst=lambda s, t: g.d2(s) + 0 * T(t),
        dtt=lambda s, t: 0 * g.d2(s) + 0 * T(t),
        name=f"tangent of helix a={a:g} b={b:g}",
    )
    lam = side * a / np.hypot(a, b)
    return _finish(patch, lam, v, "tangent_of_helix", {"a": float(a), "b": float(b), "side": float(side)}, reverse)


# ---------------------------------------------------------------------------
# cylindrical surfaces over planar curves


def make_cylindrical(curve: gc.Curve, w, v=None, lam: float = 0.0, height: float = 2.0,
                     s_range=(0.0, 1.0), reverse=False) -> Family:
    """Cylinder ``gamma(s) + t w`` over a curve lying in a plane orthogonal to ``w``.

    ``lam`` is only a claim: cylindrical surfaces are translators for
    ``lam = 0`` when ``w`` is parallel to ``v`` (or planes, ``lam = +-1``).
    """
    w = _unit(w, "ruling direction")
    v = w if v is None else _unit(v, "speed")
    W = lambda s, t: np.broadcast_to(w, np.broadcast(s, t).shape + (3,)).copy()
    T = lambda t: np.asarray(t, dtype=float)[..., None]
    zero = lambda s, t: np.zeros(np.broadcast(s, t).shape + (3,))
    patch = SurfacePatch(
        position=lambda s, t: curve.position(s) + T(t) * w,
        s_range=tuple(s_range), t_range=(-height / 2, height / 2),
        ds=lambda s, t: curve.derivatives(s)[0] + 0 * T(t),
        dt=W,
        dss=lambda s, t: curve.derivatives(s)[1] + 0 * T(t),
        dst=zero, dtt=zero,
        name="cylindrical surface",
    )
    parallel = abs(abs(float(np.dot(w, v))) - 1.0) < 1e-12
    return _finish(patch, lam, v, "cylinder", {"w": tuple(w), "base": "curve"}, reverse,
                   is_translator=parallel and lam == 0.0)


# ---------------------------------------------------------------------------
# ruled surfaces


@dataclass(frozen=True)
class RuledSurface:
    """``gamma(s) + t w(s)`` with arc-length base curve and unit ruling field.

    ``gamma`` and ``w`` are :class:`~translator_lab.geomcore.Curve` samplers;
    their ``d1``/``d2`` derivatives are used when present.
    """

    gamma: gc.Curve
    w: gc.Curve
    s_range: tuple[float, float] = (0.0, 1.0)
    t_range: tuple[float, float] = (-1.0, 1.0)

    def frame(self, s):
        g1 = self.gamma.derivatives(s)[0]
        w = self.w.position(s)
        w1 = self.w.derivatives(s)[0]
        return g1, w, w1

    def patch(self) -> SurfacePatch:
        G, Wc = self.gamma, self.w
        T = lambda t: np.asarray(t, dtype=float)[..., None]
        return SurfacePatch(
            position=lambda s, t: G.position(s) + T(t) * Wc.position(s),
            s_range=self.s_range, t_range=self.t_range,
            ds=lambda s, t: G.derivatives(s)[0] + T(t) * Wc.derivatives(s)[0],
            dt=lambda s, t: Wc.position(s) + 0 * T(t),
            dss=lambda s, t: G.derivatives(s)[1] + T(t) * Wc.derivatives(s)[1],
            dst=lambda s, t: Wc.derivatives(s)[0] + 0 * T(t),
            dtt=lambda s, t: 0 * Wc.position(s) + 0 * T(t),
            name="ruled surface",
        )


def ruled_alpha(ruled: RuledSurface, s) -> float:
    """``det(gamma', w, w') / |w'|^2`` at ``s``."""
    g1, w, w1 = ruled.frame(s)
    ww = float(gc.dot(w1, w1))
    if np.sqrt(ww) < gc.DEGENERACY_TOL:
        raise CylindricalRuling(f"|w'| = {np.sqrt(ww):.3e} at s={s}")
    return float(gc.det3(g1, w, w1)) / ww


def ruled_K_N(ruled: RuledSurface, s, t) -> tuple[float, np.ndarray]:
    """Closed-form Gauss curvature and unit normal of a non-cylindrical ruled surface
    parametrized from its striction line."""
    alpha = ruled_alpha(ruled, s)
    q = alpha**2 + t**2
    if q == 0.0:
        raise StrictionPoint(f"alpha = t = 0 at s={s}")
    _, w, w1 = ruled.frame(s)
    K = -(alpha**2) / q**2
    N = (alpha * w1 + t * np.cross(w1, w)) / (np.linalg.norm(w1) * np.sqrt(q))
    return K, N


def helicoid() -> RuledSurface:
    """Helicoid with base the z-axis and rulings ``(cos s, sin s, 0)``; alpha = 1."""
    gamma = gc.Curve(
        lambda s: vec3(0 * s, 0 * s, s),
        lambda s: vec3(0 * s, 0 * s, 1 + 0 * s),
        lambda s: vec3(0 * s, 0 * s, 0 * s),
    )
    w = gc.Curve(
        lambda s: vec3(np.cos(s), np.sin(s), 0 * s),
        lambda s: vec3(-np.sin(s), np.cos(s), 0 * s),
        lambda s: vec3(-np.cos(s), -np.sin(s), 0 * s),
    )
    return RuledSurface(gamma, w, s_range=(0.0, 2 * np.pi), t_range=(-2.0, 2.0))


def striction_ruled(beta: float, omega: float, rotation: Optional[np.ndarray] = None) -> RuledSurface:
    """Non-cylindrical ruled surface already given from its striction line.

    Rulings ``w = cos(omega s) e1 + sin(omega s) e2`` and base curve with
    ``gamma' = cos(beta) e3 + sin(beta) w``, so ``|gamma'| = 1``,
    ``<gamma', w'> = 0`` and ``alpha = cos(beta) / omega``.
    """
    if omega == 0:
        raise CylindricalRuling("omega = 0 gives parallel rulings")
    Q = np.eye(3) if rotation is None else np.asarray(rotation, dtype=float)
    e1, e2, e3 = Q[:, 0], Q[:, 1], Q[:, 2]
    cb, sb = np.cos(beta), np.sin(beta)

    def frame_vec(a, b, c):
        a, b, c = (np.asarray(x, dtype=float)[..., None] for x in np.broadcast_arrays(a, b, c))
        return a * e1 + b * e2 + c * e3

    w = gc.Curve(
        lambda s: frame_vec(np.cos(omega * s), np.sin(omega * s), 0 * s),
        lambda s: frame_vec(-omega * np.sin(omega * s), omega * np.cos(omega * s), 0 * s),
        lambda s: frame_vec(-omega**2 * np.cos(omega * s), -omega**2 * np.sin(omega * s), 0 * s),
    )
    gamma = gc.Curve(
        lambda s: frame_vec(sb / omega * np.sin(omega * s), -sb / omega * np.cos(omega * s), cb * s),
        lambda s: frame_vec(sb * np.cos(omega * s), sb * np.sin(omega * s), cb + 0 * s),
        lambda s: frame_vec(-sb * omega * np.sin(omega * s), sb * omega * np.cos(omega * s), 0 * s),
    )
    return RuledSurface(gamma, w, s_range=(0.0, 1.0), t_range=(-2.0, 2.0))


# ---------------------------------------------------------------------------
# translation surfaces z = f(x) + g(y)


@dataclass(frozen=True)
class TranslationSurface:
    """Graph ``z = f(x) + g(y)``; ``f`` and ``g`` are sequences ``(h, h', h'', h''')``."""

    f: Sequence[Callable]
    g: Sequence[Callable]
    v: np.ndarray
    lam: float
    x_range: tuple[float, float] = (-1.0, 1.0)
    y_range: tuple[float, float] = (-1.0, 1.0)

    def W1(self, x, y):
        return 1.0 + self.f[1](x) ** 2 + self.g[1](y) ** 2

    def W2(self, x, y):
        v1, v2, v3 = self.v
        return -v1 * self.f[1](x) - v2 * self.g[1](y) + v3

    def fg_residual(self, x, y):
        """``f'' g'' W1^-2 - W1^-1/2 W2 - lam``, the translator residual of the graph."""
        W1 = self.W1(x, y)
        return self.f[2](x) * self.g[2](y) / W1**2 - self.W2(x, y) / np.sqrt(W1) - self.lam

    def patch(self) -> SurfacePatch:
        f, g = self.f, self.g
        zero = lambda x, y: 0.0 * x * y
        return SurfacePatch(
            position=lambda x, y: vec3(x + 0 * y, y + 0 * x, f[0](x) + g[0](y)),
            s_range=self.x_range, t_range=self.y_range,
            ds=lambda x, y: vec3(1 + zero(x, y), zero(x, y), f[1](x) + zero(x, y)),
            dt=lambda x, y: vec3(zero(x, y), 1 + zero(x, y), g[1](y) + zero(x, y)),
            dss=lambda x, y: vec3(zero(x, y), zero(x, y), f[2](x) + zero(x, y)),
            dst=lambda x, y: vec3(zero(x, y), zero(x, y), zero(x, y)),
            dtt=lambda x, y: vec3(zero(x, y), zero(x, y), g[2](y) + zero(x, y)),
            name="translation surface",
        )

    def family(self) -> Family:
        zero_max = self.max_fg_residual()
        desc = FamilyDescriptor(kind="translation", lam=float(self.lam), v=tuple(float(c) for c in self.v),
                                params={}, is_translator=bool(zero_max < 1e-8))
        return Family(self.patch(), float(self.lam), np.asarray(self.v, float), desc)

    def max_fg_residual(self, n: int = 32) -> float:
        x = np.linspace(*self.x_range, n)
        y = np.linspace(*self.y_range, n)
        X, Y = np.meshgrid(x, y, indexing="ij")
        return float(np.max(np.abs(self.fg_residual(X, Y))))


def make_translation_surface(f, g, v=(0.0, 0.0, 1.0), lam: float = 0.0, **ranges) -> TranslationSurface:
    f, g = tuple(f), tuple(g)
    if len(f) < 3 or len(g) < 3:
        raise BadParameters("f and g need at least (h, h', h'')")
    return TranslationSurface(f=f, g=g, v=_unit(v, "speed"), lam=float(lam), **ranges)


def quadratic(c: float = 1.0) -> tuple[Callable, ...]:
    """``h(x) = c x^2 / 2`` with its first three derivatives."""
    return (lambda x: 0.5 * c * np.asarray(x) ** 2, lambda x: c * np.asarray(x),
            lambda x: c + 0.0 * np.asarray(x), lambda x: 0.0 * np.asarray(x))


def zero_function() -> tuple[Callable, ...]:
    z = lambda x: 0.0 * np.asarray(x, dtype=float)
    return (z, z, z, z)


# ---------------------------------------------------------------------------
# descriptor round trip


def build_family(desc: FamilyDescriptor) -> Family:
    """Rebuild a family from its descriptor (inverse of ``Family.descriptor``)."""
    p = dict(desc.params)
    reverse = bool(p.pop("reversed", False))
    v = np.asarray(desc.v, dtype=float)
    if reverse:
        v = -v
    if desc.kind == "plane":
        return make_plane(p["normal"], p.get("point", (0, 0, 0)), v, reverse=reverse)
    if p.get("profile") == "line":
        return make_line_of_revolution(p["theta0"], p.get("x0", 1.0), reverse=reverse)
    if desc.kind == "cylinder":
        return make_cylinder(p["radius"], p.get("axis", (0, 0, 1)), v, reverse=reverse)
    if desc.kind == "cone":
        return make_cone(p["theta0"], v, reverse=reverse)
    if desc.kind == "tangent_of_helix":
        return make_tangent_of_helix(p["a"], p["b"], v, side=int(p.get("side", 1)), reverse=reverse)
    raise ValueError(f"family kind {desc.kind!r} has no closed-form constructor")
