import subprocess
import sys
from pathlib import Path

import pytest

from parallelepipeds.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def machine(out):
    return dict(line.split("=", 1) for line in out.splitlines())


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", DATA / "cube_boundary.cx")
    assert code == 0 and "H0=Z H1=0 H2=Z" in out
    code, out, _ = run(capsys, "homology", DATA / "torus.cx")
    assert code == 0 and "H0=Z H1=Z^2 H2=Z" in out
    code, out, _ = run(capsys, "homology", DATA / "klein.cx", "--machine")
    kv = machine(out)
    assert kv["torsion.1"] == "2" and kv["betti.1"] == "1" and kv["homology"] == "H0=Z H1=Z+Z/2 H2=0"


def test_parse_and_validation_errors(capsys, tmp_path):
    code, _, err = run(capsys, "homology", DATA / "bad.cx")
    assert code == 2 and "line 2, column" in err
    code, _, err = run(capsys, "homology", tmp_path / "missing.cx")
    assert code == 2
    corrupt = tmp_path / "corrupt.cx"
    corrupt.write_text("dim 2\ncell 0 a\ncell 0 b\ncell 1 e\ncell 1 f\ncell 2 s\n"
                       "face e +1 a\nface e -1 b\nface f +1 a\nface f -1 b\nface s +1 e\nface s +1 f\n")
    code, _, err = run(capsys, "homology", corrupt)
    assert code == 3 and "boundary of boundary" in err
    code, _, _ = run(capsys, "orient", corrupt)
    assert code == 3
    assert run(capsys, "nonsense")[0] == 2


def test_orient(capsys, tmp_path):
    code, out, _ = run(capsys, "orient", DATA / "cube_boundary.cx", "--machine")
    kv = machine(out)
    assert code == 0 and kv["orientable"] == "yes"
    assert sum(1 for k in kv if k.startswith("sigma.")) == 6
    code, out, _ = run(capsys, "orient", DATA / "mobius.cx")
    assert code == 0 and "NONORIENTABLE" in out and "witness:" in out
    single = tmp_path / "one.cx"
    single.write_text("dim 2\ncube 0 0 : 1 2\n")
    code, out, _ = run(capsys, "orient", single)
    assert out.splitlines()[-1].endswith("+1")


def test_stokes(capsys):
    form, region = DATA / "x1dx2.form", DATA / "unit_square_32.cx"
    code, out, _ = run(capsys, "stokes", form, region, "--machine", "--tol", "1e-9")
    kv = machine(out)
    assert code == 0 and abs(float(kv["difference"])) <= 1e-9 and kv["within_tol"] == "yes"
    code, _, err = run(capsys, "stokes", DATA / "grade2.form", region)
    assert code == 3 and "grade" in err
    code, out, _ = run(capsys, "stokes", form, region, "--mode", "analytic", "--h", "0.015625", "--machine")
    assert code == 0 and abs(float(machine(out)["interior"]) - 0.25) < 1e-9  # region is now [0, 1/2]^2


def test_framework(capsys):
    code, out, _ = run(capsys, "framework", "build", "(1 2)")
    assert code == 0 and "vertices 4" in out and "edges    6" in out
    code, out, _ = run(capsys, "framework", "sum", "(1 2) + (3)")
    assert out.splitlines()[-1] == "(1 2)"
    code, out, _ = run(capsys, "framework", "pi1", "(2 2)")
    assert out.splitlines()[-1] == "trivial"
    code, out, _ = run(capsys, "framework", "pi1", "(1", "2)")
    assert out.splitlines()[-1] == "nontrivial"
    code, out, _ = run(capsys, "framework", "surface", "(1 1)", "--machine")
    kv = machine(out)
    assert kv["homology"] == "H0=Z H1=Z^2 H2=Z" and kv["agree"] == "yes"
    code, out, _ = run(capsys, "framework", "sum", "--file", DATA / "sum.fw")
    assert out.splitlines()[-1] == "(1 2)"
    assert run(capsys, "framework", "sum", "(1 2) + (2 2)")[0] == 2


def test_flow(capsys):
    code, out, _ = run(capsys, "flow", DATA / "harmonic.grid", "--machine", "--tol", "1e-9")
    kv = machine(out)
    assert code == 0 and float(kv["laplacian.max"]) <= 1e-9 and kv["laplacian.within_tol"] == "yes"
    code, out, _ = run(capsys, "flow", DATA / "rotation.grid", "--machine")
    assert abs(float(machine(out)["closedness.max"]) - 2) < 1e-9
    code, out, _ = run(capsys, "flow", DATA / "constant.grid", "--checks", "unit")
    assert code == 4
    assert run(capsys, "flow", DATA / "rotation.grid", "--checks", "laplacian")[0] == 3
    assert run(capsys, "flow", DATA / "harmonic.grid", "--checks", "bogus")[0] == 3


def test_curvature_table(capsys):
    code, out, _ = run(capsys, "flow", DATA / "sphere.grid", "--checks", "curvature", "--rows", "8")
    assert code == 0
    lines = out.splitlines()
    header = next(i for i, line in enumerate(lines) if line.split()[:4] == ["x1", "x2", "x3", "r"])
    rows = [list(map(float, line.split())) for line in lines[header + 1:]]
    assert len(rows) == 8
    for *_, r, H, rH in rows:
        if 0.5 <= r <= 1.5:
            assert abs(rH + 2 / 3) < 0.01 * 2 / 3


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "parallelepipeds.cli", "homology", str(DATA / "klein.cx")]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and b"sha256=" in first


@pytest.mark.parametrize("argv", [["--version"], ["homology", "--help"]])
def test_help_exits_cleanly(argv, capsys):
    assert main(argv) == 0
