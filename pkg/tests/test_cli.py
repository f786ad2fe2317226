import os
import subprocess
import sys

from translator_lab import families as fam
from translator_lab.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_profile_ok(capsys, tmp_path):
    out = tmp_path / "p.csv"
    code, stdout, _ = run(["profile", "--lambda", "1", "--s-max", "20", "--output", str(out)], capsys)
    assert code == 0
    assert "reintersects_axis_nonorthogonal" in stdout
    assert out.read_text().startswith("s,x,z,theta,")


def test_profile_no_solution(capsys):
    assert run(["profile", "--lambda", "-2"], capsys)[0] == 2


def test_profile_inconclusive(capsys):
    assert run(["profile", "--lambda", "0", "--s-max", "3"], capsys)[0] == 3


def test_usage_errors(capsys):
    assert run(["profile", "--lambda", "1", "--tol", "1e-2"], capsys)[0] == 4
    assert run(["profile"], capsys)[0] == 4
    assert run(["profile", "--lambda", "abc"], capsys)[0] == 4
    assert run(["nonsense"], capsys)[0] == 4
    assert run(["--help"], capsys)[0] == 0


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\nlambda=1\ns_max=20\n")
    code, stdout, _ = run(["profile", "--config", str(cfg)], capsys)
    assert code == 0 and "reintersects" in stdout
    cfg.write_text("bogus=1\n")
    assert run(["profile", "--config", str(cfg), "--lambda", "1"], capsys)[0] == 4


def test_sweep_with_jobs(capsys, tmp_path):
    stem = tmp_path / "sweep.csv"
    code, _, _ = run(["profile", "--lambda", "1", "0.5", "--s-max", "30", "--jobs", "2",
                      "--output", str(stem)], capsys)
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["sweep_lam0.5.csv", "sweep_lam1.csv"]


def test_verify(capsys, tmp_path):
    code, stdout, _ = run(["verify"], capsys)
    assert code == 0 and "FAIL" not in stdout
    code, stdout, _ = run(["verify", "--perturb-cone-lambda", "1e-3"], capsys)
    assert code == 1 and "FAIL cone" in stdout
    cfg = tmp_path / "fam.cfg"
    cfg.write_text(fam.make_cone(0.5).descriptor.to_config())
    assert run(["verify", "--family-config", str(cfg)], capsys)[0] == 0


def test_portrait_outputs(capsys, tmp_path):
    code, stdout, _ = run(["portrait", "--lambda", "-1", "--budget", "3", "--field-n", "5",
                           "--seed", "0.5,1.0", "--output-dir", str(tmp_path)], capsys)
    assert code == 0 and "saddle" in stdout
    names = {p.name for p in tmp_path.iterdir()}
    assert {"singular_point.txt", "field.csv"} <= names
    assert sum(n.startswith("trajectory_") for n in names) == 3


def test_mesh_outputs(capsys, tmp_path):
    obj, ch = tmp_path / "s.obj", tmp_path / "s.csv"
    assert run(["mesh", "--sphere", "--output", str(obj)], capsys)[0] == 0
    assert obj.read_text().startswith("v ")
    cfg = tmp_path / "fam.cfg"
    cfg.write_text(fam.make_tangent_of_helix(1.0, 2.0).descriptor.to_config())
    assert run(["mesh", "--family-config", str(cfg), "--res", "8", "--output", str(obj),
                "--channel-output", str(ch)], capsys)[0] == 0
    assert ch.read_text().startswith("vertex_index,value\n")
    assert run(["mesh", "--output", str(obj)], capsys)[0] == 4


def test_deterministic_and_logging(tmp_path):
    cmd = [sys.executable, "-m", "translator_lab.cli", "profile", "--lambda", "0.5", "--s-max", "10"]
    env = dict(os.environ, TRANSLATOR_LAB_LOG="debug")
    a = subprocess.run(cmd, capture_output=True, text=True, env=env)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    assert "DEBUG" in a.stderr and b.stderr == ""
