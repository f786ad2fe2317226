"""Triangle/quad meshes of profiles and patches, with Wavefront OBJ output."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import geomcore as gc
from .errors import NegativeRadius

POLE_TOL = 1e-9
DUP_TOL = 1e-12
MIN_FACE_AREA = 1e-14


@dataclass
class MeshData:
    vertices: np.ndarray  # (n, 3)
    faces: list  # tuples of 0-based indices, 3 or 4 long
    channel: Optional[np.ndarray] = None
    channel_name: str = ""

    def face_areas(self) -> np.ndarray:
        V = self.vertices
        out = []
        for f in self.faces:
            p = V[list(f)]
            a = 0.5 * np.linalg.norm(np.cross(p[1] - p[0], p[2] - p[0]))
            if len(f) == 4:
                a += 0.5 * np.linalg.norm(np.cross(p[2] - p[0], p[3] - p[0]))
            out.append(a)
        return np.array(out)

    def validate(self) -> None:
        n = len(self.vertices)
        for f in self.faces:
            if len(f) not in (3, 4) or min(f) < 0 or max(f) >= n:
                raise ValueError(f"bad face {f}")
        if self.faces and np.min(self.face_areas()) <= MIN_FACE_AREA:
            raise ValueError("mesh contains a degenerate face")

    def to_obj(self) -> str:
        buf = io.StringIO(newline="")
        for x, y, z in self.vertices:
            buf.write(f"v {x:.17g} {y:.17g} {z:.17g}\n")
        for f in self.faces:
            buf.write("f " + " ".join(str(i + 1) for i in f) + "\n")
        return buf.getvalue()

    def channel_csv(self) -> str:
        if self.channel is None:
            raise ValueError("mesh has no scalar channel")
        buf = io.StringIO(newline="")
        buf.write("vertex_index,value\n")
        for i, val in enumerate(self.channel):
            buf.write(f"{i + 1},{val:.17g}\n")
        return buf.getvalue()

    def write(self, obj_path, channel_path=None) -> None:
        with open(obj_path, "w", newline="\n") as fh:
            fh.write(self.to_obj())
        if channel_path is not None:
            with open(channel_path, "w", newline="\n") as fh:
                fh.write(self.channel_csv())


def _thin_profile(x, z):
    """Drop samples that sit on top of their predecessor."""
    keep = [0]
    for i in range(1, len(x)):
        j = keep[-1]
        if math.hypot(x[i] - x[j], z[i] - z[j]) > DUP_TOL:
            keep.append(i)
    return np.asarray(keep)


def revolve(traj, angular_steps: int = 64, channel: Optional[np.ndarray] = None,
            channel_name: str = "") -> MeshData:
    """Surface of revolution of a profile ``(x(s), z(s))`` about the z-axis.

    ``traj`` is anything with ``x`` and ``z`` arrays.  Rings with
    ``x < 1e-9`` become single pole vertices joined by triangle fans; the
    seam at ``t = 2 pi`` is welded.  ``channel`` holds one value per profile
    sample and is copied onto every vertex of its ring.
    """
    if angular_steps < 8:
        raise ValueError("angular_steps must be at least 8")
    x = np.asarray(traj.x, dtype=float)
    z = np.asarray(traj.z, dtype=float)
    if np.any(x < -POLE_TOL):
        raise NegativeRadius(f"profile reaches x = {x.min():.3e}")
    idx = _thin_profile(x, z)
    x, z = x[idx], z[idx]
    ch = None if channel is None else np.asarray(channel, dtype=float)[idx]
    t = 2 * math.pi * np.arange(angular_steps) / angular_steps
    ct, st = np.cos(t), np.sin(t)

    verts, vals, rings = [], [], []
    for i, (xi, zi) in enumerate(zip(x, z)):
        start = sum(len(r) for r in rings)
        if xi < POLE_TOL:
            verts.append(np.array([[0.0, 0.0, zi]]))
            rings.append([start])
            n_new = 1
        else:
            verts.append(np.column_stack([xi * ct, xi * st, np.full(angular_steps, zi)]))
            rings.append(list(range(start, start + angular_steps)))
            n_new = angular_steps
        if ch is not None:
            vals.extend([ch[i]] * n_new)

    faces = []
    m = angular_steps
    for a, b in zip(rings[:-1], rings[1:]):
        if len(a) == 1 and len(b) == 1:
            continue
        if len(a) == 1:
            faces += [(a[0], b[j], b[(j + 1) % m]) for j in range(m)]
        elif len(b) == 1:
            faces += [(a[j], b[0], a[(j + 1) % m]) for j in range(m)]
        else:
            faces += [(a[j], b[j], b[(j + 1) % m], a[(j + 1) % m]) for j in range(m)]
    V = np.vstack(verts) if verts else np.zeros((0, 3))
    return MeshData(V, faces, None if ch is None else np.asarray(vals), channel_name)


CHANNELS = ("residual", "K", "none")


def grid_mesh(patch: gc.SurfacePatch, res=32, channel: str = "residual", v=None, lam: float = 0.0,
              margin: float = 0.0) -> MeshData:
    """Quad mesh on a regular ``res x res`` (or ``(ns, nt)``) parameter grid.

    ``channel`` is ``"residual"`` (``K - <N, v> - lam``, needs ``v``), ``"K"``
    or ``"none"``.  Vertices are the patch positions at the grid nodes.
    """
    if channel not in CHANNELS:
        raise ValueError(f"channel must be one of {CHANNELS}")
    ns, nt = (res, res) if np.isscalar(res) else res
    S, T = patch.grid(ns, nt, margin)
    ff = gc.fundamental_forms(patch, S, T)
    V = patch(S, T).reshape(-1, 3)
    if channel == "residual":
        if v is None:
            raise ValueError("the residual channel needs the speed vector v")
        vals = ff.gauss_curvature - gc.dot(ff.normal, np.asarray(v, dtype=float)) - lam
    elif channel == "K":
        vals = ff.gauss_curvature
    else:
        vals = None
    faces = []
    for i in range(ns - 1):
        for j in range(nt - 1):
            a = i * nt + j
            faces.append((a, a + nt, a + nt + 1, a + 1))
    return MeshData(V, faces, None if vals is None else vals.ravel(), channel if vals is not None else "")
