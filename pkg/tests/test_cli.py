import json
import os
import shutil
import subprocess
import sys

import pytest

from bjortho.cli import render, run

from conftest import FIXTURES


def fx(name):
    return str(FIXTURES / name)


def _bjortho(*args, env=None):
    exe = shutil.which("bjortho")
    cmd = [exe] if exe else [sys.executable, "-m", "bjortho.cli"]
    return subprocess.run([*cmd, *args], capture_output=True, text=True, env={**os.environ, **(env or {})}, timeout=120)


# -- exit codes through the installed binary ---------------------------------------


@pytest.mark.parametrize(
    "args, code",
    [
        (["check", "--x", "[1,0]", "--y", "[0,1]", "--space", "lp2.json"], 0),
        (["check", "--x", "[1,0]", "--y", "[0,1]", "--space", "scaled_l2.json"], 1),
        (["check", "--x", "[1,1]", "--y", "[1,0]", "--space", "linf.json"], 0),
        (["op-check", "--T", "identity.json", "--A", "rotation.json"], 0),
        (["op-check", "--T", "identity.json", "--A", "identity.json"], 1),
        (["op-norm", "--T", "diag21.json"], 0),
        (["smoothness", "--x", "[1,1]", "--norm", "linf.json"], 1),
        (["smoothness", "--x", "[1,1]", "--norm", "lp2.json"], 0),
        (["fixtures"], 0),
    ],
)
def test_binary_exit_codes(args, code):
    resolved = [fx(a) if a.endswith(".json") else a for a in args]
    proc = _bjortho(*resolved)
    assert proc.returncode == code, proc.stderr


def test_route_disagreement_under_a_zero_band():
    # the definition margin is exactly 0, the Bhatia-Semrl margin is -1
    proc = _bjortho("op-check", "--T", fx("identity.json"), "--A", fx("flip.json"), env={"ORTHO_TOL_LO": "0", "ORTHO_TOL_HI": "0"})
    assert proc.returncode == 1
    assert "disagreement" in proc.stdout and "bhatia-semrl: Orthogonal" in proc.stdout
    assert _bjortho("op-check", "--T", fx("identity.json"), "--A", fx("flip.json")).returncode == 0


def test_malformed_json_names_line_and_column():
    proc = _bjortho("check", "--x", "[1,0]", "--y", "[0,1]", "--space", fx("broken.json"))
    assert proc.returncode == 3
    assert "line 2 column 10" in proc.stderr


# -- usage errors -------------------------------------------------------------------


@pytest.mark.parametrize(
    "args",
    [
        ["op-check", "--T", "identity.json", "--A", "identity3.json"],
        ["verify", "--theorem", "T2_1", "--count", "5"],
        ["verify", "--theorem", "T9_9", "--count", "5", "--seed", "1"],
        ["verify", "--theorem", "T2_1", "--count", "0", "--seed", "1"],
        ["check", "--x", "[1,0,0]", "--y", "[0,1]", "--space", "lp2.json"],
        ["check", "--x", "[[1,0]]", "--y", "[0,1]", "--space", "lp2.json"],
        ["check", "--x", "[1,0]", "--y", "[0,1]", "--space", "missing.json"],
        ["op-check", "--T", "identity.json", "--A", "flip.json", "--route", "bhatia-semrl", "--family", "coords.json"],
        ["op-norm", "--T", "diag21.json", "--mesh", "0"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_three(args, capsys):
    resolved = [fx(a) if a.endswith(".json") else a for a in args]
    assert run(resolved) == 3
    assert capsys.readouterr().err.startswith("error:")


def test_unknown_config_key_is_a_usage_error(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"dim": 2, "colour": "red"}))
    assert run(["verify", "--theorem", "T2_1", "--count", "3", "--seed", "1", "--config", str(cfg)]) == 3
    assert "colour" in capsys.readouterr().err


# -- reports ------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "args",
    [
        ["check", "--x", "[1,0]", "--y", "[0,1]", "--space", "scaled_l2.json"],
        ["op-check", "--T", "diag21.json", "--A", "rotation.json", "--mesh", "0.05"],
        ["op-norm", "--T", "identity.json", "--family", "coords.json", "--mesh", "0.05"],
        ["smoothness", "--x", "[1,0]", "--norm", "l1.json"],
        ["verify", "--theorem", "T3_5", "--count", "10", "--seed", "2"],
        ["fixtures"],
    ],
)
def test_printed_text_is_rendered_from_the_json_report(args, tmp_path, capsys):
    out = tmp_path / "report.json"
    resolved = [fx(a) if a.endswith(".json") else a for a in args]
    run([*resolved, "--json", str(out)])
    printed = capsys.readouterr().out
    assert printed.rstrip("\n") == render(json.loads(out.read_text()))


def test_verify_appends_csv_with_one_header(tmp_path, capsys):
    csv_path = tmp_path / "runs.csv"
    for seed in ("1", "2"):
        assert run(["verify", "--theorem", "T2_1", "--count", "5", "--seed", seed, "--csv", str(csv_path)]) == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("theorem,config_hash")
    assert len(lines) == 3 and all(line.startswith("T2_1_equivalence,") for line in lines[1:])


def test_verify_with_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"dim": 3, "norm": {"kind": "lp", "p": "inf"}}))
    out = tmp_path / "r.json"
    assert run(["verify", "--theorem", "T2_1", "--count", "20", "--seed", "3", "--config", str(cfg), "--json", str(out)]) == 0
    report = json.loads(out.read_text())["report"]
    assert report["config"]["dim"] == 3 and report["total"] == 20


def test_op_norm_reports_spectral_norm(tmp_path, capsys):
    out = tmp_path / "n.json"
    assert run(["op-norm", "--T", fx("diag21.json"), "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["P"] == pytest.approx(2.0) and report["spectral"] == pytest.approx(2.0)
