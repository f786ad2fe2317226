"""Command-line interface: ``translator-lab {profile,portrait,verify,mesh}``.

Exit codes: 0 success, 1 verification failure or other computation error,
2 no solution for the requested start, 3 inconclusive classification,
4 bad usage.
"""
from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from types import SimpleNamespace

import numpy as np

from . import families as fam
from . import mesh_export as me
from . import phaseplane as pp
from . import profile_ode as po
from .errors import Inconclusive, NoSolution, TranslatorLabError
from .singular_start import PicardConfig

EXIT_OK, EXIT_VERIFY, EXIT_NO_SOLUTION, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3, 4
TOL_RANGE = (1e-13, 1e-3)
VERIFY_TOL = 1e-8
NEGATIVE_FLOOR = 1e-2

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def _pair(text: str) -> tuple[float, float]:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected two comma-separated numbers")
    return parts[0], parts[1]


def _quad(text: str) -> tuple[float, ...]:
    parts = tuple(float(p) for p in text.split(","))
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected four comma-separated numbers")
    return parts


def _check_tol(tol: float) -> None:
    if not (TOL_RANGE[0] <= tol <= TOL_RANGE[1]):
        raise UsageError(f"--tol must lie in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}]")


# ---------------------------------------------------------------------------
# profile


def _merge(bwd: po.Trajectory, fwd: po.Trajectory) -> po.Trajectory:
    cat = lambda a, b: np.concatenate([a[:-1], b])
    return po.Trajectory(
        s=cat(bwd.s, fwd.s), x=cat(bwd.x, fwd.x), z=cat(bwd.z, fwd.z), theta=cat(bwd.theta, fwd.theta),
        dtheta=cat(bwd.dtheta, fwd.dtheta), lam=fwd.lam, events=bwd.events + fwd.events,
        omega=fwd.omega, status=fwd.status, start=fwd.start,
        dtheta_log=cat(bwd.dtheta_log, fwd.dtheta_log), dtheta_sign=cat(bwd.dtheta_sign, fwd.dtheta_sign),
    )


def profile_job(lam: float, start: str, s_max, tol: float, epsilon, grid_n: int, custom=None):
    """One profile run; returns ``(exit_code, trajectory_csv, summary, message)``."""
    try:
        if start == "axis":
            if epsilon is not None or grid_n != 2048:
                if lam < -1.0:
                    raise NoSolution(f"no profile meets the axis orthogonally for lam={lam}")
                cfg = PicardConfig(lam=lam, epsilon=epsilon, grid_n=grid_n)
                traj = po.integrate_from_axis(lam, s_max if s_max is not None else 100.0, tol, tol, picard=cfg)
                report = po.ClassificationReport("unclassified", lam, "axis_orthogonal",
                                                 {"status": traj.status, "s_end": float(traj.s[-1])}, [traj])
            else:
                report = po.classify(lam, "axis_orthogonal", budget=s_max, tol=tol)
                traj = report.trajectories[0]
            return EXIT_OK, traj.to_csv(), report.summary(), ""
        if start == "equator":
            budget = s_max if s_max is not None else 100.0
            init = po.equator_state()
            fwd = po.integrate(lam, init, budget, tol, tol, start="equator")
            bwd = po.integrate(lam, init, budget, tol, tol, direction=-1, start="equator")
            text = _merge(bwd, fwd).to_csv()
            try:
                report = po.classify(lam, "equator", budget=budget, tol=tol)
            except Inconclusive as exc:
                return EXIT_INCONCLUSIVE, text, f"regime=inconclusive\nlambda={lam:.17g}\n", str(exc)
            return EXIT_OK, text, report.summary(), ""
        x0, z0, th0 = custom
        init = po.ProfileState(0.0, x0, z0, th0)
        traj = po.integrate(lam, init, s_max if s_max is not None else 100.0, tol, tol)
        summary = (f"regime=unclassified\nlambda={lam:.17g}\nstart=custom\nstatus={traj.status}\n"
                   f"s_end={traj.s[-1]:.17g}\n")
        return EXIT_OK, traj.to_csv(), summary, ""
    except NoSolution as exc:
        return EXIT_NO_SOLUTION, "", "", str(exc)
    except Inconclusive as exc:
        return EXIT_INCONCLUSIVE, "", "", str(exc)


def _profile_job_star(args):
    return profile_job(*args)


def _sweep_path(base, lam: float, many: bool):
    if base in (None, "-") or not many:
        return base
    p = Path(base)
    return str(p.with_name(f"{p.stem}_lam{lam:.17g}{p.suffix}"))


def cmd_profile(args) -> int:
    _check_tol(args.tol)
    custom = None
    if args.start == "custom":
        if args.x0 is None or args.theta0 is None:
            raise UsageError("--start custom needs --x0 and --theta0")
        custom = (args.x0, args.z0, args.theta0)
    lams = args.lam
    jobs = [(lam, args.start, args.s_max, args.tol, args.epsilon, args.grid_n, custom) for lam in lams]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_profile_job_star, jobs))
    else:
        results = [_profile_job_star(j) for j in jobs]
    worst = EXIT_OK
    many = len(lams) > 1
    for lam, (code, csv_text, summary, message) in zip(lams, results):
        if csv_text:
            _write(_sweep_path(args.output, lam, many), csv_text)
        if summary:
            if args.report:
                _write(_sweep_path(args.report, lam, many), summary)
            else:
                sys.stdout.write(summary)
        if message:
            sys.stderr.write(f"lambda={lam:.17g}: {message}\n")
        worst = max(worst, code)
    return worst


# ---------------------------------------------------------------------------
# portrait


def cmd_portrait(args) -> int:
    grid = pp.sample_portrait(args.lam[0], rectangle=args.rectangle, seeds=args.seed, budget=args.budget,
                              field_n=args.field_n, jobs=args.jobs)
    rep = pp.linearize(args.lam[0])
    lines = [f"lambda={rep.lam:.17g}", f"point={rep.point[0]:.17g},{rep.point[1]:.17g}",
             "jacobian=" + ",".join(f"{v:.17g}" for v in rep.jacobian.ravel()),
             "eigenvalues=" + ",".join(f"{e.real:.17g}{e.imag:+.17g}j" for e in rep.eigenvalues),
             f"kind={rep.kind}"]
    if rep.note:
        lines.append(f"note={rep.note}")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.output_dir:
        out = Path(args.output_dir)
        _write(out / "singular_point.txt", text)
        _write(out / "field.csv", grid.field_csv())
        for k, tr in enumerate(grid.trajectories):
            _write(out / f"trajectory_{k}.csv", tr.to_csv())
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def witness_suite(cone_shift: float = 0.0):
    """``(name, value, kind)`` rows; kind is ``"zero"`` (must stay below 1e-8) or ``"positive"``."""
    rows = []
    for sgn in (1.0, -1.0):
        f = fam.make_plane((0.0, 0.0, sgn))
        rows.append((f"plane lam={f.lam:g}", f.max_residual(), "zero"))
    f = fam.make_cylinder(1.0)
    rows.append(("cylinder lam=0", f.max_residual(), "zero"))
    for name, th in (("pi/6", math.pi / 6), ("pi/4", math.pi / 4), ("pi/3", math.pi / 3)):
        f = fam.make_cone(th)
        lam = f.lam + cone_shift
        res = float(np.max(np.abs(f.residual(*f.patch.grid(32, 32, 1e-9)) + f.lam - lam)))
        rows.append((f"cone theta0={name} lam={lam:.6g}", res, "zero"))
    for a, b in ((3.0, 4.0), (1.0, 1.0)):
        for side in (1, -1):
            f = fam.make_tangent_of_helix(a, b, side=side)
            rows.append((f"tangent-of-helix a={a:g} b={b:g} lam={f.lam:.6g}", f.max_residual(), "zero"))
    ts = fam.make_translation_surface(fam.quadratic(1.0), fam.quadratic(1.0), lam=1.0)
    rows.append(("translation f=x^2/2 g=y^2/2 lam=1", ts.family().max_residual(), "positive"))
    return rows


def cmd_verify(args) -> int:
    if args.family_config:
        desc = fam.FamilyDescriptor.from_config(Path(args.family_config).read_text())
        f = fam.build_family(desc)
        rows = [(f"{desc.kind} lam={desc.lam:.17g}", f.max_residual(), "zero" if desc.is_translator else "positive")]
    else:
        rows = witness_suite(args.perturb_cone_lambda)
    ok = True
    for name, val, kind in rows:
        passed = val < VERIFY_TOL if kind == "zero" else val > NEGATIVE_FLOOR
        ok &= passed
        sys.stdout.write(f"{'PASS' if passed else 'FAIL'} {name} max_residual={val:.17g}\n")
    return EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# mesh


def _circle_profile(n: int = 257):
    phi = np.linspace(0.0, math.pi, n)
    return SimpleNamespace(x=np.sin(phi), z=-np.cos(phi))


def cmd_mesh(args) -> int:
    if args.family_config:
        desc = fam.FamilyDescriptor.from_config(Path(args.family_config).read_text())
        f = fam.build_family(desc)
        mesh = me.grid_mesh(f.patch, args.res, args.channel, v=f.v, lam=f.lam)
    elif args.sphere:
        mesh = me.revolve(_circle_profile(), args.angular_steps)
    else:
        if args.lam is None:
            raise UsageError("mesh needs --lambda, --sphere or --family-config")
        _check_tol(args.tol)
        lam = args.lam[0]
        s_max = args.s_max if args.s_max is not None else 10.0
        if args.start == "axis":
            traj = po.integrate_from_axis(lam, s_max, args.tol, args.tol)
        else:
            traj = po.integrate(lam, po.equator_state(), s_max, args.tol, args.tol)
        mesh = me.revolve(traj, args.angular_steps)
    mesh.validate()
    _write(args.output, mesh.to_obj())
    if args.channel_output:
        _write(args.channel_output, mesh.channel_csv())
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _config_defaults(path) -> dict:
    values = fam.parse_key_values(Path(path).read_text())
    out = {}
    for key, raw in values.items():
        key = key.replace("-", "_")
        if key == "lambda":
            out["lam"] = [float(v) for v in raw.split(",")]
        else:
            out[key] = raw
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="translator-lab", description="Rotational and ruled lambda-translators: "
                                                   "profiles, phase portraits, witnesses and meshes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config", help="key=value file; flags given on the command line win")
        sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("profile", help="integrate and classify a rotational profile")
    common(sp)
    sp.add_argument("--lambda", dest="lam", type=float, nargs="+", required=True)
    sp.add_argument("--start", choices=("axis", "equator", "custom"), default="axis")
    sp.add_argument("--x0", type=float)
    sp.add_argument("--z0", type=float, default=0.0)
    sp.add_argument("--theta0", type=float)
    sp.add_argument("--s-max", dest="s_max", type=float)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--epsilon", type=float)
    sp.add_argument("--grid-n", dest="grid_n", type=int, default=2048)
    sp.add_argument("--output", default="-", help="trajectory CSV (default stdout)")
    sp.add_argument("--report", help="write the classification summary here instead of stdout")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("portrait", help="phase portrait and linearization at (0, pi/2)")
    common(sp)
    sp.add_argument("--lambda", dest="lam", type=float, nargs=1, required=True)
    sp.add_argument("--seed", type=_pair, action="append", help="extra seed x,theta (repeatable)")
    sp.add_argument("--rectangle", type=_quad, default=(-3.0, 3.0, 1e-3, math.pi - 1e-3))
    sp.add_argument("--budget", type=float, default=20.0)
    sp.add_argument("--field-n", dest="field_n", type=int, default=21)
    sp.add_argument("--output-dir", dest="output_dir")
    sp.set_defaults(func=cmd_portrait)

    sp = sub.add_parser("verify", help="residual witnesses for the closed-form families")
    common(sp)
    sp.add_argument("--family-config", dest="family_config")
    sp.add_argument("--perturb-cone-lambda", dest="perturb_cone_lambda", type=float, default=0.0,
                    help="shift the lambda used for the cone witnesses (sanity check of the gate)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("mesh", help="OBJ mesh of a profile, the unit sphere, or a family patch")
    common(sp)
    sp.add_argument("--lambda", dest="lam", type=float, nargs=1)
    sp.add_argument("--start", choices=("axis", "equator"), default="axis")
    sp.add_argument("--s-max", dest="s_max", type=float)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--angular-steps", dest="angular_steps", type=int, default=64)
    sp.add_argument("--sphere", action="store_true")
    sp.add_argument("--family-config", dest="family_config")
    sp.add_argument("--res", type=int, default=32)
    sp.add_argument("--channel", choices=me.CHANNELS, default="residual")
    sp.add_argument("--output", default="-")
    sp.add_argument("--channel-output", dest="channel_output")
    sp.set_defaults(func=cmd_mesh)
    return p


def _coerce(parser, sub_name, defaults):
    """Re-run config values through the subparser so they get the same types as flags."""
    sp = parser._subparsers._group_actions[0].choices[sub_name]
    typed = {}
    actions = {a.dest: a for a in sp._actions}
    for key, raw in defaults.items():
        if key not in actions:
            raise UsageError(f"unknown config key {key!r}")
        act = actions[key]
        if isinstance(raw, list) or act.type is None:
            typed[key] = raw if not isinstance(act, argparse._StoreTrueAction) else raw.lower() in ("1", "true", "yes")
        elif act.nargs in ("+", 1):
            typed[key] = [act.type(v) for v in raw.split(",")]
        else:
            typed[key] = act.type(raw)
    return typed


def _apply_config(parser, argv) -> None:
    """Install ``--config`` values as subcommand defaults before the real parse."""
    command = next((a for a in argv if not a.startswith("-")), None)
    path = None
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif a.startswith("--config="):
            path = a.split("=", 1)[1]
    choices = parser._subparsers._group_actions[0].choices
    if path is None or command not in choices:
        return
    try:
        raw = _config_defaults(path)
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from exc
    sp = choices[command]
    sp.set_defaults(**_coerce(parser, command, raw))
    for act in sp._actions:
        if act.dest == "lam":
            act.required = False


def main(argv=None) -> int:
    level = os.environ.get("TRANSLATOR_LAB_LOG", "error").upper()
    logging.basicConfig(level=getattr(logging, level, logging.ERROR), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        _apply_config(parser, argv)
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return exc.code if isinstance(exc.code, int) else EXIT_USAGE
        if getattr(args, "lam", None) is None and args.command in ("profile", "portrait"):
            raise UsageError("--lambda is required (flag or config key)")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"translator-lab: error: {exc}\n")
        return EXIT_USAGE
    except TranslatorLabError as exc:
        sys.stderr.write(f"translator-lab: {type(exc).__name__}: {exc}\n")
        return EXIT_VERIFY


if __name__ == "__main__":
    raise SystemExit(main())
