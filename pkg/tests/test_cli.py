from __future__ import annotations

import json

import pytest

from stskit import format_sts
from stskit.cli import main


def run(capsys, *argv: str):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_numtheory_profile(capsys):
    code, out, _ = run(capsys, "numtheory", "profile", "--n", "49")
    assert code == 0
    assert "f=2" in out and "psi_star=12" in out


def test_numtheory_scan_exceptions(capsys):
    code, out, _ = run(capsys, "numtheory", "scan", "--limit", "600", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "stskit-report/1"
    assert payload["exceptions"] == [7, 11, 19, 31, 43, 73, 127, 511]


def test_numtheory_scan_negative_psi(capsys):
    code, out, _ = run(capsys, "numtheory", "scan", "--limit", "200", "--negative-psi")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t") == ["n", "phi", "f", "psi", "psi_star"]
    assert [ln.split("\t")[0] for ln in lines[1:]] == ["7", "11", "31", "43", "127"]


def test_construct_verify_roundtrip(tmp_path, capsys):
    path = tmp_path / "s15.sts"
    code, _, _ = run(capsys, "construct", "wilson-schreiber", "--n", "13",
                     "--out", str(path))
    assert code == 0
    code, out, _ = run(capsys, "verify", "--in", str(path))
    assert code == 0 and "ok" in out


def test_verify_reports_failure(tmp_path, capsys):
    path = tmp_path / "bad.sts"
    path.write_text("STS v=7\n0 1 3\n")
    code, out, _ = run(capsys, "verify", "--in", str(path))
    assert code == 1
    assert "not covered" in out or "triple count" in out


def test_fixture_and_colouring_files(tmp_path, capsys):
    spath, cpath = tmp_path / "s33.sts", tmp_path / "s33.cols"
    code, _, _ = run(capsys, "fixture", "sts33", "--out", str(spath),
                     "--colouring-out", str(cpath))
    assert code == 0
    code, out, _ = run(capsys, "verify", "--in", str(spath), "--colouring", str(cpath))
    assert code == 0 and "18 classes: ok" in out


def test_analyze_chi_exact_fano(tmp_path, capsys, fano):
    path = tmp_path / "fano.sts"
    path.write_text(format_sts(fano))
    code, out, _ = run(capsys, "analyze", "chi", "--in", str(path), "--exact", "--json")
    assert code == 0
    assert json.loads(out)["value"] == 7


def test_analyze_chi_fixture_with_witness(tmp_path, capsys):
    spath, cpath = tmp_path / "s33.sts", tmp_path / "s33.cols"
    run(capsys, "fixture", "sts33", "--out", str(spath), "--colouring-out", str(cpath))
    code, out, _ = run(capsys, "analyze", "chi", "--in", str(spath), "--exact",
                       "--witness-colouring", str(cpath), "--mod3-lower", "--json")
    assert code == 0
    assert json.loads(out)["value"] == 18


def test_analyze_chi_inconclusive_exit_code(tmp_path, capsys):
    spath = tmp_path / "s33.sts"
    run(capsys, "fixture", "sts33", "--out", str(spath))
    code, out, _ = run(capsys, "analyze", "chi", "--in", str(spath), "--exact",
                       "--budget-nodes", "10", "--json")
    assert code == 3
    payload = json.loads(out)
    assert payload["status"] == "inconclusive" and payload["value"] is None


def test_analyze_pcs_max_disjoint(tmp_path, capsys):
    path = tmp_path / "s15.sts"
    run(capsys, "construct", "wilson-schreiber", "--n", "13", "--out", str(path))
    code, out, _ = run(capsys, "analyze", "pcs", "--in", str(path),
                       "--max-disjoint", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["max_disjoint"] == 1 and payload["status"] == "complete"


def test_analyze_bound_ws_and_mod3(tmp_path, capsys):
    ws = tmp_path / "s15.sts"
    run(capsys, "construct", "wilson-schreiber", "--n", "13", "--out", str(ws))
    code, out, _ = run(capsys, "analyze", "bound", "--in", str(ws), "--method", "ws",
                       "--json")
    assert code == 0 and json.loads(out)["bound"] == 1

    bose = tmp_path / "b15.sts"
    run(capsys, "construct", "bose", "--n", "5", "--out", str(bose))
    code, out, _ = run(capsys, "analyze", "bound", "--in", str(bose), "--method", "mod3",
                       "--json")
    assert code == 0 and json.loads(out)["bound"] == 2


def test_analyze_bound_ws_rejects_noncanonical(tmp_path, capsys):
    path = tmp_path / "b15.sts"
    run(capsys, "construct", "bose", "--n", "5", "--out", str(path))
    code, _, err = run(capsys, "analyze", "bound", "--in", str(path), "--method", "ws")
    assert code == 2 and "canonical" in err


def test_theorem1_exit_codes(capsys):
    code, out, _ = run(capsys, "theorem1", "--v", "15", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["holds"] is True and payload["chi_lower"] == 9
    assert run(capsys, "theorem1", "--v", "45")[0] == 3
    assert run(capsys, "theorem1", "--v", "9")[0] == 1


def test_generate_and_survey(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", "--v", "13", "--count", "2", "--seed", "4",
                       "--out-dir", str(tmp_path), "--json")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["files"]) == 2
    for path in payload["files"]:
        assert run(capsys, "verify", "--in", path)[0] == 0

    code, out, _ = run(capsys, "survey", "colouring", "--v", "9", "--count", "2",
                       "--seed", "1", "--json")
    assert code == 0
    assert json.loads(out)["counts"]["m"] == 2


def test_usage_errors_exit_2(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["numtheory", "scan"])  # missing --limit
    assert exc.value.code == 2
    code, _, err = run(capsys, "construct", "wilson-schreiber", "--n", "12")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "verify", "--in", str(tmp_path / "missing.sts"))
    assert code == 2 and "cannot read" in err


def test_bare_invocation_prints_help(capsys):
    assert main([]) == 2
