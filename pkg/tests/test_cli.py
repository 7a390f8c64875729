"""Command-line interface: reports, exit codes, determinism, corpus runner."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from polyproper.cli import main
from polyproper.corpus import EXAMPLE_3_6_TEXT, corpus_names, run_entry


@pytest.fixture()
def shear_file(tmp_path):
    path = tmp_path / "shear.map"
    path.write_text(EXAMPLE_3_6_TEXT)
    return str(path)


def run_cli(args):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(args)
    return code, out.getvalue(), err.getvalue()


def test_jacobian_and_degree_checks(shear_file):
    code, out, _ = run_cli(["--map", shear_file, "--checks", "jacobian,degree", "--seed", "0"])
    assert code == 0
    report = json.loads(out)
    assert report["schema_version"] == 1
    assert report["results"]["jacobian"]["nonsingular"] is True
    assert report["results"]["jacobian"]["constant"] == "1"
    assert report["results"]["degree"]["mu"] == 1
    assert report["results"]["degree"]["histogram"] == {"1": 50}
    assert report["config"]["seed"] == 0


def test_sf_check_reports_locus(tmp_path):
    path = tmp_path / "m.map"
    path.write_text("vars: x y\nf1 = x\nf2 = x*y\n")
    code, out, _ = run_cli(["--map", str(path), "--checks", "sf,cylinder", "--drop", "2"])
    assert code == 0
    report = json.loads(out)
    assert report["results"]["sf"]["status"] == "hypersurface"
    assert report["results"]["sf"]["polynomial"] == "y1"
    assert report["results"]["cylinder"] == {
        "k": 2,
        "is_cylinder": True,
        "locus": "{ y1 = 0 }",
    }
    assert any("singular" in w for w in report["warnings"])


def test_rabier_check(shear_file):
    code, out, _ = run_cli(
        ["--map", shear_file, "--checks", "rabier", "--drop", "3", "--path", "t, t^-2, 0"]
    )
    report = json.loads(out)
    assert code == 0
    res = report["results"]["rabier"]
    assert res["accepted"] is True
    assert res["limit"] == ["0", "0"]
    assert res["nu_samples"][0] == [10.0, pytest.approx(1e-2, rel=1e-9)]
    certs = report["certificates"]
    assert len(certs) == 1
    assert certs[0]["claim"] == "asymptotic-critical-set membership"
    assert certs[0]["evidence"]["limit"] == ["0", "0"]


def test_rabier_missing_path_is_report_error(shear_file):
    code, out, _ = run_cli(["--map", shear_file, "--checks", "rabier"])
    assert code == 0  # checks completed; the error lives in the report
    report = json.loads(out)
    assert "error" in report["results"]["rabier"]


def test_clearance_check(shear_file):
    code, out, _ = run_cli(
        ["--map", shear_file, "--checks", "clearance", "--hyperplane", "y1"]
    )
    report = json.loads(out)
    assert code == 0
    assert report["results"]["clearance"]["intersects"] == "no"
    assert report["results"]["clearance"]["certificate_issued"] is True
    assert report["certificates"][0]["claim"] == "automorphism"


def test_empty_checks_is_usage_error(shear_file):
    code, _, err = run_cli(["--map", shear_file])
    assert code == 1
    assert "usage error" in err


def test_unknown_check_is_usage_error(shear_file):
    code, _, err = run_cli(["--map", shear_file, "--checks", "frobnicate"])
    assert code == 1


def test_unreadable_file_is_usage_error():
    code, _, err = run_cli(["--map", "/nonexistent.map", "--checks", "jacobian"])
    assert code == 1
    assert "cannot read map file" in err


def test_reports_are_byte_identical(shear_file):
    args = ["--map", shear_file, "--checks", "jacobian,degree,sf", "--seed", "11"]
    _, out1, _ = run_cli(args)
    _, out2, _ = run_cli(args)
    assert out1 == out2


def test_corpus_single(tmp_path):
    code, out, _ = run_cli(["--corpus", "x2-y"])
    assert code == 0
    report = json.loads(out)
    assert report["pass"] is True
    assert report["corpus"]["x2-y"]["results"]["mu"] == 2


def test_corpus_all_passes_and_deterministic():
    code1, out1, _ = run_cli(["--corpus", "all", "--seed", "0"])
    code2, out2, _ = run_cli(["--corpus", "all", "--seed", "0"])
    assert code1 == code2 == 0
    assert out1 == out2
    report = json.loads(out1)
    assert report["pass"] is True
    assert sorted(report["corpus"]) == corpus_names()


def test_unknown_corpus_is_usage_error():
    code, _, err = run_cli(["--corpus", "nope"])
    assert code == 1
    assert "unknown corpus id" in err


def test_text_format(shear_file):
    code, out, _ = run_cli(["--map", shear_file, "--checks", "jacobian", "--format", "text"])
    assert code == 0
    assert "nonsingular: True" in out


def test_out_file(tmp_path, shear_file):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(
        ["--map", shear_file, "--checks", "jacobian", "--out", str(target)]
    )
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["results"]["jacobian"]["nonsingular"] is True


def test_run_entry_lists_mismatches(monkeypatch):
    import polyproper.corpus as corpus_mod

    monkeypatch.setitem(corpus_mod.EXPECTATIONS["x2-y"], "mu", 3)
    entry = run_entry("x2-y")
    assert not entry["expected_pass"]
    assert entry["mismatches"] == [{"field": "mu", "expected": 3, "actual": 2}]
