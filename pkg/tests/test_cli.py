import io
import json
import shutil
import subprocess
import sys

import pytest

from metad2.cli import run
from metad2.fixtures import DEFAULT_BASE, FixtureError, FixtureSet, load_matrix
from metad2.report import Report


def cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "metad2.cli", *args], capture_output=True, text=True, timeout=300
    )


def run_capture(args):
    out = io.StringIO()
    code = run(list(args), out=out)
    return code, out.getvalue()


@pytest.fixture
def fixture_copy(tmp_path):
    dst = tmp_path / "fx"
    shutil.copytree(DEFAULT_BASE, dst)
    return dst


# report ---------------------------------------------------------------------------------


def test_report_roundtrip_and_exit_codes():
    rep = Report("demo")
    rep.add("a", "first", True)
    rep.add("b", "second", "skip", "gated")
    assert rep.exit_code() == 0
    again = Report.from_json(rep.to_json())
    assert again == rep
    rep.add("c", "third", False, "boom")
    assert rep.exit_code() == 1
    assert rep.first_failure().id == "c"
    assert "FAIL" in rep.to_table()
    data = rep.to_dict()
    data["summary"]["pass"] = 5
    with pytest.raises(ValueError):
        Report.from_dict(data)
    with pytest.raises(ValueError):
        rep.add("d", "bad", "maybe")


def test_report_schema_fields(tmp_path):
    path = tmp_path / "r.json"
    code, _ = run_capture(["fullness", "--json", str(path)])
    assert code == 0
    data = json.loads(path.read_text())
    assert set(data) == {"suite", "checks", "summary"}
    assert set(data["checks"][0]) == {"id", "description", "status", "detail", "claim"}


# fixtures ----------------------------------------------------------------------------------


def test_fixture_loading_errors(fixture_copy):
    (fixture_copy / "p7" / "lambda_x.mat").unlink()
    with pytest.raises(FixtureError, match="lambda_x.mat"):
        load_matrix("lambda_x", 7, fixture_copy)
    (fixture_copy / "p7" / "h.mat").write_text("18 x\n")
    with pytest.raises(FixtureError) as exc:
        load_matrix("h", 7, fixture_copy)
    assert exc.value.line == 1
    fs = FixtureSet(7, fixture_copy)
    assert fs.get("lambda_x") is None


# commands -------------------------------------------------------------------------------


def test_verify_fixtures_passes():
    code, out = run_capture(["verify-fixtures"])
    assert code == 0
    assert "0 fail" in out


def test_verify_fixtures_missing_lambda(fixture_copy):
    (fixture_copy / "p7" / "lambda_x.mat").unlink()
    code, out = run_capture(["verify-fixtures", "--fixtures", str(fixture_copy)])
    assert code == 1
    assert "lambda_x.mat" in out and "file not found" in out


def test_verify_fixtures_corrupt_header(fixture_copy):
    (fixture_copy / "p7" / "theta_3_y.mat").write_text("6 six\n" + "0 " * 6)
    code, out = run_capture(["verify-fixtures", "--fixtures", str(fixture_copy)])
    assert code == 1
    assert "theta_3_y.mat:1" in out


def test_verify_fixtures_detects_broken_relation(fixture_copy):
    path = fixture_copy / "p7" / "lambda_y.mat"
    lines = path.read_text().splitlines()
    row = lines[1].split()
    row[0] = str(int(row[0]) + 1)
    lines[1] = " ".join(row)
    path.write_text("\n".join(lines) + "\n")
    code, out = run_capture(["verify-fixtures", "--fixtures", str(fixture_copy)])
    assert code == 1
    assert "FAIL  lambda" in out


def test_verify_m7_subprocess(tmp_path):
    path = tmp_path / "m7.json"
    res = cli("verify-m7", "--rebase-trials", "2", "--json", str(path))
    assert res.returncode == 0, res.stdout
    rep = Report.from_json(path.read_text())
    assert rep.ok
    assert sum(1 for c in rep.checks if c.id.endswith(".joint") and c.status == "pass") == 5


def test_verify_m7_mutation_exit_code():
    res = cli("verify-m7", "--mutate", "C4=0")
    assert res.returncode == 1
    assert "FAIL  verdict.4.x_eq" in res.stdout


def test_verify_m7_eq7_only():
    code, out = run_capture(["verify-m7", "--eq7-only", "--rebase-trials", "0"])
    assert code == 0
    assert "verdict.4.x_eq" in out and "verdict.4.joint" not in out


def test_verify_m7_basis_perm(tmp_path):
    perm = tmp_path / "perm.txt"
    perm.write_text(" ".join(str(i) for i in range(24)))
    code, out = run_capture(["verify-m7", "--basis-perm", str(perm), "--rebase-trials", "0"])
    assert code == 0
    perm.write_text("0 1 2")
    code, _ = run_capture(["verify-m7", "--basis-perm", str(perm)])
    assert code == 2


@pytest.mark.parametrize(
    "args",
    [
        ["verify-m7", "--mutate", "C4=1"],
        ["verify-m7", "--mutate", "Z9=0"],
        ["verify-m7", "--p", "5"],
        ["verify-fixtures", "--fixtures", "/does/not/exist"],
        ["units", "bezout", "--p", "7", "--residues", "1,1"],
        ["units", "aut", "--p", "9", "--target", "0,1,1,1,1,1"],
    ],
)
def test_usage_errors_exit_2(args):
    code, _ = run_capture(args)
    assert code == 2


def test_argparse_errors_exit_2():
    res = cli("no-such-command")
    assert res.returncode == 2


def test_hom_table_p11_skips():
    code, out = run_capture(["hom-table", "--p", "11"])
    assert code == 0
    assert "100 skip" in out


def test_units_commands():
    code, out = run_capture(["units", "bezout", "--p", "7", "--slot", "2", "--residues", "3,1,1,1,1"])
    assert code == 0 and "6 6" in out
    code, out = run_capture(["units", "aut", "--p", "7", "--target", "0,1,3,1,1,1"])
    assert code == 0 and "k-value equals (0, 1, 3, 1, 1, 1)" in out
    code, out = run_capture(["units", "diag", "--p", "7", "--residues", "1,2,1,1,1,1"])
    assert code == 0 and "no unit possible" in out
    code, out = run_capture(["units", "aut", "--p", "7", "--target", "0,1,3,1,1,1", "--strict"])
    assert code == 1


def test_units_output_parses_as_matrix():
    from metad2.exactlin import IntMatrix, det

    code, out = run_capture(["units", "diag", "--p", "7", "--residues", "3,5,1,1,1,1"])
    assert code == 0
    text = out[out.index("\n6 6\n") + 1:]
    M = IntMatrix.from_text(text)
    assert abs(det(M)) == 1


@pytest.mark.parametrize("p, rs", [(5, {1, 3}), (7, {1, 5}), (11, {1, 3, 7, 9}), (13, {1, 5, 7, 11})])
def test_fullness_command(p, rs):
    code, out = run_capture(["fullness", "--p", str(p)])
    assert code == 0
    assert {int(line.split()[1][len("fullness.r"):]) for line in out.splitlines() if " fullness.r" in line} == rs
