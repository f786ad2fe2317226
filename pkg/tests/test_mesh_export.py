import math
from types import SimpleNamespace

import numpy as np
import pytest

from translator_lab import families as fam
from translator_lab import mesh_export as me
from translator_lab import profile_ode as po
from translator_lab.errors import NegativeRadius


def _sphere_profile(n=40):
    a = np.linspace(0, math.pi, n)
    return SimpleNamespace(x=np.sin(a), z=-np.cos(a))


def test_revolve_closed_profile():
    m = me.revolve(_sphere_profile(), angular_steps=16)
    m.validate()
    # two poles plus 38 rings
    assert len(m.vertices) == 2 + 38 * 16
    tri = [f for f in m.faces if len(f) == 3]
    assert len(tri) == 32
    assert all(0 <= i < len(m.vertices) for f in m.faces for i in f)


def test_rotation_symmetry():
    m = me.revolve(_sphere_profile(), angular_steps=12)
    a = 2 * math.pi / 12
    R = np.array([[math.cos(a), -math.sin(a), 0], [math.sin(a), math.cos(a), 0], [0, 0, 1]])
    rotated = m.vertices @ R.T
    # every rotated vertex lands on some vertex
    d = np.linalg.norm(rotated[:, None, :] - m.vertices[None, :, :], axis=2).min(axis=1)
    assert d.max() < 1e-12


def test_revolve_errors():
    with pytest.raises(ValueError):
        me.revolve(_sphere_profile(), angular_steps=7)
    with pytest.raises(NegativeRadius):
        me.revolve(SimpleNamespace(x=np.array([0.0, -0.1]), z=np.array([0.0, 1.0])))


def test_revolve_profile_with_channel():
    tr = po.integrate_from_axis(1.0, 20.0)
    m = me.revolve(tr, 16, channel=po.rotational_residual(tr), channel_name="residual")
    m.validate()
    assert len(m.channel) == len(m.vertices)
    # undefined on the axis only
    assert np.isnan(m.channel).sum() == 2
    assert np.nanmax(np.abs(m.channel)) < 1e-6


def test_obj_and_channel_format(tmp_path):
    m = me.revolve(_sphere_profile(8), 8, channel=np.arange(8.0))
    m.write(tmp_path / "m.obj", tmp_path / "c.csv")
    raw = (tmp_path / "m.obj").read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    nv = sum(ln.startswith("v ") for ln in lines)
    assert nv == len(m.vertices)
    idx = [int(i) for ln in lines if ln.startswith("f ") for i in ln.split()[1:]]
    assert min(idx) == 1 and max(idx) == nv
    csv = (tmp_path / "c.csv").read_text().splitlines()
    assert csv[0] == "vertex_index,value" and csv[1].startswith("1,")
    assert len(csv) == nv + 1


def test_no_channel_csv():
    with pytest.raises(ValueError):
        me.revolve(_sphere_profile(), 8).channel_csv()


def test_grid_mesh_vertices_are_patch_points():
    f = fam.make_cone(0.6)
    m = me.grid_mesh(f.patch, res=(5, 7), v=f.v, lam=f.lam)
    S, T = f.patch.grid(5, 7)
    assert np.array_equal(m.vertices, f.patch(S, T).reshape(-1, 3))
    assert len(m.faces) == 4 * 6
    assert np.max(np.abs(m.channel)) < 1e-9
    m.validate()


def test_grid_mesh_curvature_channel():
    f = fam.make_tangent_of_helix(1.0, 0.5)
    m = me.grid_mesh(f.patch, res=12, channel="K")
    assert np.max(np.abs(m.channel)) < 1e-8
    with pytest.raises(ValueError):
        me.grid_mesh(f.patch, channel="residual")
    with pytest.raises(ValueError):
        me.grid_mesh(f.patch, channel="H")
