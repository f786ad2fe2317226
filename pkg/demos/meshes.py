"""Write a few OBJ files into ./demo_meshes for viewing in any mesh viewer."""
from pathlib import Path
from types import SimpleNamespace

import numpy as np

from translator_lab import families as fam
from translator_lab import mesh_export as me
from translator_lab import profile_ode as po

out = Path("demo_meshes")
out.mkdir(exist_ok=True)

tr = po.integrate_from_axis(1.0, 100.0)
# the solver keeps every accepted step; a few hundred rings are plenty to look at
step = max(1, len(tr) // 400)
keep = np.r_[0:len(tr):step, len(tr) - 1]
thin = SimpleNamespace(x=tr.x[keep], z=tr.z[keep])
mesh = me.revolve(thin, 96, channel=po.rotational_residual(tr)[keep], channel_name="residual")
mesh.write(out / "closed_lam1.obj", out / "closed_lam1_residual.csv")
print(f"lam=1 closed profile: {len(mesh.vertices)} vertices, {len(mesh.faces)} faces")

bowl = po.integrate_from_axis(-0.5, 6.0)
me.revolve(SimpleNamespace(x=bowl.x[::4], z=bowl.z[::4]), 96).write(out / "graph_lam-0.5.obj")

helix = fam.make_tangent_of_helix(1.0, 0.5)
m = me.grid_mesh(helix.patch, 64, channel="residual", v=helix.v, lam=helix.lam)
m.write(out / "helix_tangent.obj", out / "helix_tangent_residual.csv")
print(f"helix tangent surface: worst residual on the mesh {abs(m.channel).max():.2e}")
print(f"files in {out.resolve()}")
