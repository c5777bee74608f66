import json
import os
import subprocess
import sys

import pytest

from defquant.cli import main
from defquant.expr import parse_expression, parse_sympoly

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def prob(name):
    return os.path.join(ROOT, "problems", f"{name}.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name, expected", [
    ("weyl", ["x1*x2 - x2*x1 - h"]),
    ("heisenberg", ["x1*x2 - x2*x1 - h*x3", "x1*x3 - x3*x1", "x2*x3 - x3*x2"]),
    ("sl2", ["x1*x2 - x2*x1 - h*x3", "x1*x3 - x3*x1 + h*x2", "x2*x3 - x3*x2 - h*x1"]),
    ("solvable2", ["x1*x2 - x2*x1 - h*x1"]),
    ("quantum_plane", ["x1*x2 - x2*x1 - (h/2)*(x1*x2 + x2*x1)  (mod h^2)"]),
])
def test_relations_golden(capsys, name, expected):
    code, out, _ = run(capsys, "relations", prob(name))
    assert code == 0
    assert out.splitlines() == expected


def test_relations_json(capsys):
    code, out, _ = run(capsys, "relations", prob("weyl"), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["schema_version"] == 1
    assert data["relations"] == [{"i": 1, "j": 2, "relation": "x1*x2 - x2*x1 - h"}]


def test_non_poisson_rejected_with_defect(capsys):
    code, _, err = run(capsys, "relations", prob("broken_jacobi"))
    assert code == 2
    assert "(1, 2, 3)" in err and "-x1" in err


@pytest.mark.parametrize("name, expr, expected", [
    ("weyl", "x2*x1", "x1*x2 - h"),
    ("weyl", "x2*x1*x1", "x1*x1*x2 - 2h*x1"),
    ("sl2", "x3*x1", "x1*x3 + h*x2"),
    ("quantum_plane", "x2*x1", "(1 - h)*x1*x2  (mod h^2)"),
])
def test_normal_form_golden(capsys, name, expr, expected):
    code, out, _ = run(capsys, "normal-form", prob(name), expr)
    assert code == 0 and out.strip() == expected


@pytest.mark.parametrize("name, f, g, expected", [
    ("weyl", "x1", "x2", "x1*x2 + (1/2)h"),
    ("weyl", "x1^2", "x2^2", "x1^2*x2^2 + 2h*x1*x2 + (1/2)h^2"),
    ("heisenberg", "x1", "x2", "x1*x2 + (1/2)h*x3"),
    ("quantum_plane", "x1", "x2", "(1 + (1/2)h)*x1*x2  (mod h^2)"),
])
def test_star_golden(capsys, name, f, g, expected):
    code, out, _ = run(capsys, "star", prob(name), f, g)
    assert code == 0 and out.strip() == expected


def test_printed_outputs_reparse(capsys):
    names = ["x1", "x2", "x3"]
    _, out, _ = run(capsys, "star", prob("sl2"), "x1*x2", "x3")
    assert parse_sympoly(out.strip(), names).trunc == 4
    _, out2, _ = run(capsys, "star", prob("sl2"), out.strip(), "1")
    assert out2 == out
    _, out, _ = run(capsys, "normal-form", prob("sl2"), "x3*x2*x1")
    nf = parse_expression(out.strip(), names)
    _, again, _ = run(capsys, "normal-form", prob("sl2"), out.strip())
    assert parse_expression(again.strip(), names) == nf


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", prob("sl2"), "--trials", "3")
    assert code == 0 and out.startswith("suite linear: PASS")
    code, out, _ = run(capsys, "verify", prob("weyl"), "--trials", "3", "--mutation", "corrupt_rule")
    assert code == 1 and "[FAIL] ideal_membership" in out
    code, out, _ = run(capsys, "verify", prob("broken_jacobi"), "--trials", "2")
    assert code == 1 and "[FAIL] jacobi" in out
    code, _, err = run(capsys, "verify", prob("sl2"), "--mutation", "perturb_sym")
    assert code == 2 and "constant suite only" in err


def test_verify_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "verify", prob("weyl"), "--trials", "5", "--format", "json", "--seed", "3")
    _, b, _ = run(capsys, "verify", prob("weyl"), "--trials", "5", "--format", "json", "--seed", "3")
    assert a == b
    data = json.loads(a)
    assert data["schema_version"] == 1 and data["ok"] and data["case"]["seed"] == 3


def test_verify_koszul(capsys):
    code, out, _ = run(capsys, "verify", prob("sl2"), "--suite", "koszul")
    assert code == 0 and "H0 dims [1, 3, 6, 10, 15]" in out


def test_cohomology_table(capsys):
    code, out, _ = run(capsys, "cohomology", prob("heisenberg"), "--classical", "--degrees=-1:0",
                       "--max-weight", "2", "--format", "json")
    assert code == 0
    cells = json.loads(out)["cells"]
    h0 = [c["h_dim"] for c in cells if c["degree"] == 0]
    assert h0 == [1, 3, 6]
    assert all(c["h_dim"] == 0 for c in cells if c["degree"] == -1)
    code, out, _ = run(capsys, "cohomology", prob("weyl"), "--degrees=-1:0", "--max-weight", "2")
    assert code == 0 and out.splitlines()[0].split() == ["degree", "weight", "chain", "rank_out", "rank_in", "H"]


def test_parse_error_has_line_and_column(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "dim": 2,\n  "pi": {"1,2": "x1 + $"}\n}\n')
    code, _, err = run(capsys, "relations", str(p))
    assert code == 2
    # the string literal opens at column 17 of line 3; '$' is its sixth character
    assert f"{p}:3:23:" in err


@pytest.mark.parametrize("body, fragment", [
    ('{"dim": 2, "pi": {"1,3": "1"}}', "out of range"),
    ('{"dim": 2, "pi": {"1,2": "1", "2,1": "1"}}', "antisymmetry"),
    ('{"dim": 2, "pi": {"1,2": "h"}}', "must not depend on h"),
    ('{"pi": {}}', "'dim'"),
    ('{"dim": 2, ', "invalid JSON"),
])
def test_bad_problem_files(tmp_path, capsys, body, fragment):
    p = tmp_path / "p.json"
    p.write_text(body)
    code, _, err = run(capsys, "relations", str(p))
    assert code == 2 and fragment in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "relations", "/nonexistent/p.json")
    assert code == 2 and "cannot read" in err


def test_degree_overflow_is_usage_error(capsys):
    code, _, err = run(capsys, "normal-form", prob("weyl"), "x2^5*x1^5", "--degree", "4")
    assert code == 2 and "error" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "defquant", "relations", prob("weyl")],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.strip() == "x1*x2 - x2*x1 - h"
