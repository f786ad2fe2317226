"""Integral identities on closed surfaces and polynomial-coefficient cross-checks.

Two independent kinds of checks live here:

* surface quadrature of ``K dA``, ``<N, v> dA`` and ``dA`` over a closed
  parametrized surface, which by Gauss-Bonnet and the divergence theorem
  pins down ``lam`` for a closed translator;
* the polynomial identities that rule out ruled and translation
  translators, compared coefficient by coefficient against values
  extracted from sampled data through a Vandermonde solve.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import geomcore as gc
from .errors import DegenerateG, OpenSurface, TangentSurfaceCase
from .families import RuledSurface, ruled_alpha
from .geomcore import SurfacePatch, vec3

SEAM_TOL = 1e-9
DEGREE = 8


# ---------------------------------------------------------------------------
# closed test surfaces


def sphere_patch(radius: float = 1.0) -> SurfacePatch:
    """Sphere by polar angle ``s`` in ``[0, pi]`` and azimuth ``t``; outward normal."""
    r = float(radius)

    def pos(s, t):
        return r * vec3(np.sin(s) * np.cos(t), np.sin(s) * np.sin(t), np.cos(s))

    return SurfacePatch(
        position=pos,
        s_range=(0.0, math.pi), t_range=(0.0, 2 * math.pi),
        ds=lambda s, t: r * vec3(np.cos(s) * np.cos(t), np.cos(s) * np.sin(t), -np.sin(s)),
        dt=lambda s, t: r * vec3(-np.sin(s) * np.sin(t), np.sin(s) * np.cos(t), 0 * s * t),
        dss=lambda s, t: -pos(s, t),
        dst=lambda s, t: r * vec3(-np.cos(s) * np.sin(t), np.cos(s) * np.cos(t), 0 * s * t),
        dtt=lambda s, t: r * vec3(-np.sin(s) * np.cos(t), -np.sin(s) * np.sin(t), 0 * s * t),
        t_periodic=True, s_poles=True, name="sphere",
    )


def torus_patch(R: float = 2.0, r: float = 1.0) -> SurfacePatch:
    """Torus of tube radius ``r`` around a circle of radius ``R``."""

    def pos(s, t):
        rho = R + r * np.cos(s)
        return vec3(rho * np.cos(t), rho * np.sin(t), r * np.sin(s))

    z0 = lambda s, t: 0 * s * t
    return SurfacePatch(
        position=pos,
        s_range=(0.0, 2 * math.pi), t_range=(0.0, 2 * math.pi),
        ds=lambda s, t: vec3(-r * np.sin(s) * np.cos(t), -r * np.sin(s) * np.sin(t), r * np.cos(s) + z0(s, t)),
        dt=lambda s, t: vec3(-(R + r * np.cos(s)) * np.sin(t), (R + r * np.cos(s)) * np.cos(t), z0(s, t)),
        dss=lambda s, t: vec3(-r * np.cos(s) * np.cos(t), -r * np.cos(s) * np.sin(t), -r * np.sin(s) + z0(s, t)),
        dst=lambda s, t: vec3(r * np.sin(s) * np.sin(t), -r * np.sin(s) * np.cos(t), z0(s, t)),
        dtt=lambda s, t: vec3(-(R + r * np.cos(s)) * np.cos(t), -(R + r * np.cos(s)) * np.sin(t), z0(s, t)),
        s_periodic=True, t_periodic=True, name="torus",
    )


def ellipsoid_patch(a: float = 1.0, b: float = 1.0, c: float = 2.0) -> SurfacePatch:

    def pos(s, t):
        return vec3(a * np.sin(s) * np.cos(t), b * np.sin(s) * np.sin(t), c * np.cos(s))

    z0 = lambda s, t: 0 * s * t
    return SurfacePatch(
        position=pos, s_range=(0.0, math.pi), t_range=(0.0, 2 * math.pi),
        ds=lambda s, t: vec3(a * np.cos(s) * np.cos(t), b * np.cos(s) * np.sin(t), -c * np.sin(s) + z0(s, t)),
        dt=lambda s, t: vec3(-a * np.sin(s) * np.sin(t), b * np.sin(s) * np.cos(t), z0(s, t)),
        dss=lambda s, t: -pos(s, t),
        dst=lambda s, t: vec3(-a * np.cos(s) * np.sin(t), b * np.cos(s) * np.cos(t), z0(s, t)),
        dtt=lambda s, t: vec3(-a * np.sin(s) * np.cos(t), -b * np.sin(s) * np.sin(t), z0(s, t)),
        t_periodic=True, s_poles=True, name="ellipsoid",
    )


# ---------------------------------------------------------------------------
# Gauss-Bonnet probe


@dataclass
class ClosedSurfaceReport:
    genus: int
    area: float
    total_curvature: float
    flux: float
    implied_lambda: Optional[float]
    resolution: tuple
    cells: Optional[dict] = field(default=None, repr=False)

    @property
    def gauss_bonnet_defect(self) -> float:
        return self.total_curvature - 4.0 * math.pi * (1 - self.genus)

    def summary(self) -> str:
        lines = [f"genus={self.genus}", f"area={self.area:.17g}",
                 f"total_curvature={self.total_curvature:.17g}", f"flux={self.flux:.17g}"]
        if self.implied_lambda is not None:
            lines.append(f"implied_lambda={self.implied_lambda:.17g}")
        return "\n".join(lines) + "\n"

    def cells_csv(self) -> str:
        """Per-cell contributions; needs ``keep_cells=True`` in the probe."""
        if self.cells is None:
            raise ValueError("probe was run without keep_cells")
        c = self.cells
        buf = io.StringIO(newline="")
        buf.write("i,j,s,t,dA,K_dA,flux_dA\n")
        ns, nt = c["dA"].shape
        for i in range(ns):
            for j in range(nt):
                buf.write(f"{i},{j},{c['s'][i, j]:.17g},{c['t'][i, j]:.17g},{c['dA'][i, j]:.17g},"
                          f"{c['K_dA'][i, j]:.17g},{c['flux_dA'][i, j]:.17g}\n")
        return buf.getvalue()


def _genus(patch: SurfacePatch) -> int:
    if patch.s_periodic and patch.t_periodic:
        return 1
    if patch.t_periodic and patch.s_poles:
        return 0
    raise OpenSurface(f"{patch.name or 'patch'} is not marked as closing up")


def _check_closure(patch: SurfacePatch, n: int = 64) -> None:
    (s0, s1), (t0, t1) = patch.s_range, patch.t_range
    s = np.linspace(s0, s1, n)
    t = np.linspace(t0, t1, n)
    gaps = []
    if patch.t_periodic:
        gaps.append(gc.norm(patch(s, np.full_like(s, t0)) - patch(s, np.full_like(s, t1))))
    if patch.s_periodic:
        gaps.append(gc.norm(patch(np.full_like(t, s0), t) - patch(np.full_like(t, s1), t)))
    if patch.s_poles:
        for edge in (s0, s1):
            ring = patch(np.full_like(t, edge), t)
            gaps.append(gc.norm(ring - ring[0]))
    worst = max(float(np.max(g)) for g in gaps)
    if worst > SEAM_TOL:
        raise OpenSurface(f"seam mismatch {worst:.3e} exceeds {SEAM_TOL}")


def gauss_bonnet_probe(patch: SurfacePatch, v=(0.0, 0.0, 1.0), resolution=256,
                       keep_cells: bool = False) -> ClosedSurfaceReport:
    """Midpoint-rule integrals of ``K``, ``<N, v>`` and 1 over a closed patch.

    ``resolution`` is ``n`` or ``(ns, nt)``.  The genus is read off the
    closure flags: both directions periodic gives a torus, a periodic ``t``
    with collapsing ``s``-edges gives a sphere.  For genus 0 the report
    carries ``total_curvature / area``, the only ``lam`` a closed translator
    of that shape could have once the flux vanishes.
    """
    genus = _genus(patch)
    _check_closure(patch)
    ns, nt = (resolution, resolution) if np.isscalar(resolution) else resolution
    (s0, s1), (t0, t1) = patch.s_range, patch.t_range
    hs, ht = (s1 - s0) / ns, (t1 - t0) / nt
    S, T = np.meshgrid(s0 + hs * (np.arange(ns) + 0.5), t0 + ht * (np.arange(nt) + 0.5), indexing="ij")
    ff = gc.fundamental_forms(patch, S, T)
    dA = ff.area_element * hs * ht
    K_dA = ff.gauss_curvature * dA
    flux_dA = gc.dot(ff.normal, np.asarray(v, dtype=float)) * dA
    area, total, flux = float(dA.sum()), float(K_dA.sum()), float(flux_dA.sum())
    cells = dict(s=S, t=T, dA=dA, K_dA=K_dA, flux_dA=flux_dA) if keep_cells else None
    implied = total / area if genus == 0 else None
    return ClosedSurfaceReport(genus, area, total, flux, implied, (ns, nt), cells)


# ---------------------------------------------------------------------------
# coefficient extraction


def chebyshev_nodes(m: int = DEGREE + 1, half_width: float = 2.0) -> np.ndarray:
    k = np.arange(m)
    return half_width * np.cos((2 * k + 1) * math.pi / (2 * m))


def extract_coefficients(values, nodes) -> np.ndarray:
    """Monomial coefficients ``c_0..c_8`` of the degree-8 polynomial through the samples."""
    V = np.vander(np.asarray(nodes, dtype=float), DEGREE + 1, increasing=True)
    if V.shape[0] == V.shape[1]:
        return np.linalg.solve(V, values)
    return np.linalg.lstsq(V, values, rcond=None)[0]


def relative_mismatch(closed: float, extracted: float, scale: float) -> float:
    """``|closed - extracted| / max(|extracted|, 1e-6 scale)``.

    ``scale`` is the largest extracted coefficient; the floor keeps exact
    zeros from turning round-off into an infinite relative error.
    """
    return abs(closed - extracted) / max(abs(extracted), 1e-6 * scale, 1e-300)


@dataclass
class CoefficientSet:
    """Closed-form and extracted coefficients of one polynomial identity.

    ``printed`` holds the closed forms as usually stated; ``corrected``
    holds the forms that the symbolic expansion actually produces (equal to
    ``printed`` where they agree).  Keys are ``"C8"``, ``"A7"``, ...
    """

    printed: dict
    corrected: dict
    extracted: np.ndarray
    factor: float = 1.0

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.extracted)))

    def coefficient(self, name: str) -> float:
        return float(self.extracted[int(name[1:])])

    def mismatch(self, name: str, which: str = "printed") -> float:
        closed = (self.printed if which == "printed" else self.corrected)[name]
        return relative_mismatch(self.factor * closed, self.coefficient(name), self.scale)

    def unprinted(self) -> dict:
        """Extracted coefficients that have no closed form here."""
        return {f"{self.__class__.__name__[0]}{n}": float(c) for n, c in enumerate(self.extracted)
                if f"C{n}" not in self.printed and f"A{n}" not in self.printed}


def translation_identity(p, g1, k, v, lam):
    """``B^2 W1 - A^2`` for ``z = f(x) + g(y)`` as a function of ``p = f'``.

    Built as ``-F(+sqrt W1) F(-sqrt W1)`` where ``F`` is the differentiated
    translator equation multiplied through by ``g''``; ``k = g''' / g''^2``.
    """
    v1, v2, v3 = v
    p = np.asarray(p, dtype=float)
    W1 = 1.0 + p * p + g1 * g1
    W2 = -v1 * p - v2 * g1 + v3

    def F(r):
        return -k * (r**3 * W2 + lam * W1**2) + 3 * g1 * r * W2 - v2 * r**3 + 4 * g1 * lam * W1

    r = np.sqrt(W1)
    return -F(r) * F(-r)


def _translation_printed(g1, k, v, lam, flat):
    v1, v2, v3 = v
    out = {
        "C8": k**2 * (v1**2 - lam**2),
        "C7": -2 * v1 * v2 * k,
        "C6": v2**2 - 2 * g1 * k * (3 * v1**2 - 4 * lam**2),
    }
    if flat:
        out.update({
            "C4": g1**2 * (9 * v1**2 - 16 * lam**2),
            "C3": 18 * g1**2 * v1 * v3,
            "C0": -16 * lam**2 * (1 + g1**2) ** 2,
        })
    return out


def _translation_corrected(g1, k, v, lam, flat):
    v1, v2, v3 = v
    D = 3 * v1**2 - 4 * lam**2
    out = {
        "C8": k**2 * (v1**2 - lam**2),
        "C7": 2 * k * v1 * (k * (g1 * v2 - v3) - v2),
        "C6": (v2**2 - 2 * k * g1 * D + 2 * k * v2 * (v3 - g1 * v2)
               + k**2 * ((1 + g1**2) * D + g1**2 * v2**2 - 2 * g1 * v2 * v3 + v3**2)),
    }
    if flat and v2 == 0.0:
        out.update({
            "C4": g1**2 * (9 * v1**2 - 16 * lam**2),
            "C3": -18 * g1**2 * v1 * v3,
            "C0": g1**2 * (1 + g1**2) * (9 * v3**2 - 16 * lam**2 * (1 + g1**2)),
        })
    return out


def translation_coefficients(g_data, v, lam: float, nodes: Optional[np.ndarray] = None) -> CoefficientSet:
    """Coefficients in ``f'`` of the degree-8 identity for translation translators.

    ``g_data = (g', g'', g''')`` at one point.  The low-order closed forms
    ``C4, C3, C0`` are included when ``g''' = 0``; their corrected versions
    additionally assume ``v2 = 0``, the only setting in which they are used.
    """
    g1, g2, g3 = map(float, g_data)
    if abs(g2) < 1e-12:
        raise DegenerateG("g'' vanishes; the identity needs g'' != 0")
    v = tuple(map(float, v))
    k = g3 / g2**2
    nodes = chebyshev_nodes() if nodes is None else nodes
    extracted = extract_coefficients(translation_identity(nodes, g1, k, v, lam), nodes)
    flat = g3 == 0.0
    return CoefficientSet(_translation_printed(g1, k, v, lam, flat),
                          _translation_corrected(g1, k, v, lam, flat), extracted)


def ruled_identity(ruled: RuledSurface, v, lam: float, s: float, t) -> np.ndarray:
    """``Q^4 ((K - lam)^2 - <N, v>^2)`` at ``(s, t)`` with ``Q = alpha^2 + t^2``.

    ``K`` and ``N`` come from the fundamental forms of the parametrization,
    not from the closed-form ruled-surface expressions.
    """
    alpha = ruled_alpha(ruled, s)
    t = np.asarray(t, dtype=float)
    ff = gc.fundamental_forms(ruled.patch(), np.full_like(t, s), t)
    Q = alpha**2 + t * t
    return Q**4 * ((ff.gauss_curvature - lam) ** 2 - gc.dot(ff.normal, v) ** 2)


def ruled_coefficients(ruled: RuledSurface, v, lam: float, s: float,
                       nodes: Optional[np.ndarray] = None) -> CoefficientSet:
    """``A8 = lam^2 - (w', w, v)^2 / |w'|^2`` and ``A7 = -2 alpha <w', v> (w', w, v) / |w'|^2``.

    The common factor between closed forms and extraction is fitted by least
    squares over ``(A8, A7)`` and stored on the result.
    """
    v = np.asarray(v, dtype=float)
    alpha = ruled_alpha(ruled, s)
    if abs(alpha) < gc.DEGENERACY_TOL:
        raise TangentSurfaceCase("alpha = 0: the surface is a tangent surface")
    _, w, w1 = ruled.frame(s)
    ww = float(gc.dot(w1, w1))
    q = float(gc.det3(w1, w, v))
    p = float(gc.dot(w1, v))
    closed = {"A8": lam**2 - q * q / ww, "A7": -2 * alpha * p * q / ww}
    nodes = chebyshev_nodes() if nodes is None else nodes
    extracted = extract_coefficients(ruled_identity(ruled, v, lam, s, nodes), nodes)
    a = np.array([closed["A8"], closed["A7"]])
    b = extracted[[8, 7]]
    denom = float(a @ a)
    factor = float(a @ b) / denom if denom > 0 else 1.0
    return CoefficientSet(closed, dict(closed), extracted, factor)


def cylindrical_witness(curve, w, v, lam: float, s_samples) -> float:
    """``max |<n, v> + lam|`` for the cylinder over a planar curve with rulings ``w``.

    ``n = T x w`` is the unit normal of the curve inside its plane, which is
    the surface normal along each ruling.
    """
    if not isinstance(curve, gc.Curve):
        curve = gc.Curve(curve)
    w = gc.normalize(np.asarray(w, dtype=float))
    v = np.asarray(v, dtype=float)
    s = np.asarray(s_samples, dtype=float)
    T = gc.normalize(curve.derivatives(s)[0])
    if np.max(np.abs(gc.dot(T, w))) > 1e-8:
        raise ValueError("curve is not orthogonal to the ruling direction")
    n = np.cross(T, w)
    return float(np.max(np.abs(gc.dot(n, v) + lam)))
