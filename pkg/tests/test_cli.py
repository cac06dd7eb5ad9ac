import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from otpuc.cli import run
from otpuc.fixtures import MEASURE_SPECS, ger_tuple_rows

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    for name, spec in MEASURE_SPECS.items():
        (d / f"{name}.json").write_text(json.dumps(spec))
    (d / "tuples.json").write_text(json.dumps({"tuples": ger_tuple_rows(8)}))
    return d


def test_shipped_fixture_files_match_library_specs():
    for name, spec in MEASURE_SPECS.items():
        assert json.loads((ROOT / "fixtures" / f"{name}.json").read_text()) == spec


@pytest.mark.parametrize("name", sorted(MEASURE_SPECS))
def test_verify_passes_on_every_fixture(fixture_dir, tmp_path, name):
    out = tmp_path / "r.json"
    assert run(["verify", "--measure", str(fixture_dir / f"{name}.json"), "--order", "8", "--tol", "1e-8", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["passed"] is True


def test_verify_lebesgue_tight(fixture_dir, tmp_path):
    out = tmp_path / "r.json"
    assert run(["verify", "--measure", str(fixture_dir / "leb.json"), "--order", "8", "--tol", "1e-9", "--out", str(out)]) == 0


@pytest.mark.parametrize("cmd", ["analyze", "schur", "diagnostics"])
def test_other_commands_succeed(fixture_dir, tmp_path, cmd):
    for name in ("cos", "exp", "bs1"):
        out = tmp_path / f"{name}.json"
        assert run([cmd, "--measure", str(fixture_dir / f"{name}.json"), "--order", "6", "--out", str(out)]) == 0
        json.loads(out.read_text())


def test_synthesize_and_reload(fixture_dir, tmp_path):
    out = tmp_path / "m.json"
    assert run(["synthesize", "--tuples", str(fixture_dir / "tuples.json"), "--phase", "zero", "--order", "4", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert all(c["value"] < 1e-8 for c in rep["checks"] if c["name"].startswith("recovery"))
    assert run(["verify", "--measure", str(out), "--order", "4", "--out", str(tmp_path / "v.json")]) == 0


def test_synthesize_rejects_inadmissible_tuples(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"tuples": [{"a": 2**-0.5, "b": 2**-0.5, "beta": 0}]}))
    assert run(["synthesize", "--tuples", str(p), "--order", "1", "--out", str(tmp_path / "o.json")]) == 1
    assert run(["synthesize", "--tuples", str(p), "--order", "1", "--non-strict", "--out", str(tmp_path / "o.json")]) == 0


def test_order_validation(fixture_dir, capsys):
    assert run(["analyze", "--measure", str(fixture_dir / "cos.json"), "--order", "-1"]) == 2
    assert "order must be ≥ 1" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["verify", "--frobnicate"],
        ["verify"],
        ["verify", "--measure", "/nonexistent.json"],
        ["verify", "--measure", "MEAS", "--nodes", "100"],
        ["verify", "--measure", "MEAS", "--nodes", "32"],
        ["verify", "--measure", "MEAS", "--tol", "0"],
        ["verify", "--measure", "MEAS", "--order", "40", "--nodes", "64"],
    ],
)
def test_input_errors_exit_2(fixture_dir, argv):
    argv = [str(fixture_dir / "exp.json") if a == "MEAS" else a for a in argv]
    assert run(argv) == 2


def test_degeneracy_exit_3(tmp_path):
    p = tmp_path / "atoms.json"
    p.write_text(json.dumps({"kind": "samples", "values": [0.0] * 64, "atoms": [[0.0, 0.5], [1.0, 0.5]]}))
    assert run(["verify", "--measure", str(p), "--order", "4"]) == 3


def test_failing_tolerance_exits_1(fixture_dir, tmp_path):
    assert run(["verify", "--measure", str(fixture_dir / "ger16.json"), "--order", "8", "--tol", "1e-18",
                "--out", str(tmp_path / "r.json")]) == 1


def test_directory_fan_out(fixture_dir, tmp_path):
    d = tmp_path / "measures"
    d.mkdir()
    for name in ("leb", "cos"):
        (d / f"{name}.json").write_text(json.dumps(MEASURE_SPECS[name]))
    out = tmp_path / "reports"
    assert run(["verify", "--measure", str(d), "--order", "4", "--out", str(out)]) == 0
    assert sorted(p.name for p in out.iterdir()) == ["cos.json", "leb.json"]


def test_csv_and_svg_formats(fixture_dir, tmp_path):
    m = str(fixture_dir / "exp.json")
    assert run(["analyze", "--measure", m, "--order", "4", "--format", "csv", "--out", str(tmp_path / "a.csv")]) == 0
    assert (tmp_path / "a.csv").read_text().startswith("n,")
    assert run(["analyze", "--measure", m, "--order", "4", "--format", "svg", "--plot", "a", "--out", str(tmp_path / "a.svg")]) == 0
    assert "<svg" in (tmp_path / "a.svg").read_text()


def test_env_var_sets_nodes(fixture_dir, tmp_path, monkeypatch):
    monkeypatch.setenv("OTP_NODES", "256")
    out = tmp_path / "r.json"
    assert run(["analyze", "--measure", str(fixture_dir / "exp.json"), "--order", "4", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["measure"]["quadrature"]["nodes"] == 256
    monkeypatch.setenv("OTP_NODES", "many")
    assert run(["analyze", "--measure", str(fixture_dir / "exp.json"), "--order", "4"]) == 2


def test_reports_byte_identical_across_processes(fixture_dir, tmp_path):
    cmds = [
        ["verify", "--measure", str(fixture_dir / "cos.json"), "--order", "6"],
        ["synthesize", "--tuples", str(fixture_dir / "tuples.json"), "--phase", "random", "--seed", "7", "--order", "8"],
    ]
    for i, argv in enumerate(cmds):
        outs = []
        for rep in range(2):
            out = tmp_path / f"{i}_{rep}.json"
            subprocess.run([sys.executable, "-m", "otpuc.cli", *argv, "--out", str(out)], check=True,
                           env={**os.environ, "PYTHONHASHSEED": str(rep)})
            outs.append(out.read_bytes())
        assert outs[0] == outs[1]
