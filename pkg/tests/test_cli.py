"""Command-line behaviour: outputs, exit codes and reproducibility."""
import json
import subprocess
import sys

import pytest
import yaml

from ptskdv.cli import EXIT_IO, EXIT_OK, EXIT_SINGULAR, EXIT_USAGE, EXIT_VERIFY, main

SOLITON = {
    "model": "skdv",
    "params": {"lam": 0.0},
    "grid": {"n_points": 128, "length": 40.0},
    "dt": 0.001,
    "t_end": 0.1,
    "initial_condition": {"preset": "kdv_one_soliton", "speed": 4.0},
    "output_stride": 20,
}


def write_config(path, **changes):
    raw = dict(SOLITON, **changes)
    path.write_text(yaml.safe_dump(raw))
    return str(path)


def strip_volatile(doc):
    doc = json.loads(json.dumps(doc))
    doc["metadata"].pop("created_utc", None)
    doc["metadata"].pop("wall_time_s", None)
    return doc


# verify --------------------------------------------------------------------------

def test_verify_pt_passes_and_writes_report(tmp_path, capsys):
    report = tmp_path / "pt.json"
    assert main(["verify", "--suite", "pt", "--report", str(report)]) == EXIT_OK
    doc = json.loads(report.read_text())
    assert doc["suite"] == "pt" and doc["status"] == "pass"
    assert all(c["status"] == "pass" for c in doc["checks"])
    assert "pt: 15/15 passed" in capsys.readouterr().out


def test_verify_failure_exit_code(tmp_path):
    report = tmp_path / "d.json"
    assert main(["verify", "--suite", "derivatives", "--report", str(report)]) == EXIT_VERIFY
    doc = json.loads(report.read_text())
    failed = [c for c in doc["checks"] if c["status"] == "fail"]
    assert [c["id"] for c in failed] == ["deformed-derivative/order-4-closed-form-as-printed"]
    assert failed[0]["residual"]


def test_verify_reports_are_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["verify", "--suite", "hamiltonian", "--report", str(a)])
    main(["verify", "--suite", "hamiltonian", "--report", str(b)])
    assert strip_volatile(json.loads(a.read_text())) == strip_volatile(json.loads(b.read_text()))


def test_verify_report_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["verify", "--suite", "pt", "--report", str(blocker / "r.json")]) == EXIT_IO


def test_unknown_suite_is_usage_error():
    assert main(["verify", "--suite", "everything"]) == EXIT_USAGE


# derive --------------------------------------------------------------------------

def test_derive_text(capsys):
    assert main(["derive", "--model", "skdv"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "u_t = 6*u*u_x - u_xxx - lam*xi*xi_xx" in out
    assert "xi_t = -(lam - 6)*u*xi_x + lam*u_x*xi - xi_xxx" in out


def test_derive_zs_undeformed_equals_kdvn(capsys):
    main(["derive", "--model", "zs", "--param", "eps=1", "--param", "kap=1", "--param", "mu=1",
          "--param", "nu=1", "--format", "json"])
    zs = json.loads(capsys.readouterr().out)
    main(["derive", "--model", "kdvn", "--format", "json"])
    kdvn = json.loads(capsys.readouterr().out)
    assert zs["equations"] == kdvn["equations"]


def test_derive_latex_and_rationals(capsys):
    assert main(["derive", "--model", "flow", "--param", "eps=5/2", "--format", "latex"]) == EXIT_OK
    out = capsys.readouterr().out
    assert r"\xi_{t} =" in out and "5/2" in out


@pytest.mark.parametrize("argv", [
    ["derive", "--model", "kdv7"],
    ["derive", "--model", "skdv", "--param", "lam"],
    ["derive", "--model", "skdv", "--param", "lam=abc"],
    ["derive", "--model", "skdv", "--param", "zeta=1"],
    ["derive"],
])
def test_derive_usage_errors(argv):
    assert main(argv) == EXIT_USAGE


# simulate / analyze -----------------------------------------------------------------

def test_simulate_and_analyze(tmp_path, capsys):
    cfg = write_config(tmp_path / "c.yaml")
    out = tmp_path / "run"
    assert main(["simulate", "--config", cfg, "--out", str(out)]) == EXIT_OK
    summary = capsys.readouterr().out
    assert summary.startswith("completed skdv") and "mass_drift=" in summary and "H_drift=" in summary
    inline = (out / "diagnostics.csv").read_text().splitlines()
    assert main(["analyze", "--traj", str(out / "trajectory.jsonl"), "--quantities", "mass,H_eps"]) == EXIT_OK
    table = capsys.readouterr().out.splitlines()
    assert table[0] == "t,mass,H_eps_real,H_eps_imag"
    assert len(table) == len(inline)
    for a, b in zip(table[1:], inline[1:]):
        ta, ma, ha, _ = map(float, a.split(","))
        tb, mb, _, hb, *_ = map(float, b.split(","))
        assert ta == tb and abs(ma - mb) <= 1e-12 * abs(mb) and abs(ha - hb) <= 1e-12 * abs(hb)


def test_simulate_validation_error_names_field(tmp_path, capsys):
    cfg = write_config(tmp_path / "c.yaml", dt=0)
    assert main(["simulate", "--config", cfg, "--out", str(tmp_path / "r")]) == EXIT_USAGE
    assert "dt" in capsys.readouterr().err


def test_simulate_missing_config(tmp_path):
    assert main(["simulate", "--config", str(tmp_path / "nope.yaml"), "--out", str(tmp_path)]) == EXIT_IO


def test_simulate_singular_configuration(tmp_path, capsys):
    cfg = write_config(tmp_path / "c.yaml", model="flow", params={"eps": 2.5},
                       grid={"n_points": 64, "length": 20.0}, t_end=0.01,
                       initial_condition={"preset": "gaussian", "amplitude": 0.5, "width": 2.0})
    out = tmp_path / "run"
    assert main(["simulate", "--config", cfg, "--out", str(out)]) == EXIT_SINGULAR
    err = capsys.readouterr().err
    assert "grid index" in err and "t=0.0" in err
    assert (out / "metadata.json").exists()


def test_simulate_blow_up_keeps_partial_output(tmp_path, capsys):
    cfg = write_config(tmp_path / "c.yaml", dt=0.05, t_end=5.0, output_stride=1)
    out = tmp_path / "run"
    assert main(["simulate", "--config", cfg, "--out", str(out)]) == EXIT_SINGULAR
    assert "blow-up" in capsys.readouterr().err
    assert len((out / "trajectory.jsonl").read_text().splitlines()) >= 1


def test_simulate_outputs_deterministic(tmp_path):
    cfg = write_config(tmp_path / "c.yaml")
    main(["simulate", "--config", cfg, "--out", str(tmp_path / "a")])
    main(["simulate", "--config", cfg, "--out", str(tmp_path / "b")])
    for name in ("trajectory.jsonl", "diagnostics.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_analyze_empty_quantities(tmp_path):
    assert main(["analyze", "--traj", str(tmp_path), "--quantities", ""]) == EXIT_USAGE
    assert main(["analyze", "--traj", str(tmp_path), "--quantities", " , "]) == EXIT_USAGE


def test_analyze_truncated(tmp_path, capsys):
    cfg = write_config(tmp_path / "c.yaml")
    out = tmp_path / "run"
    main(["simulate", "--config", cfg, "--out", str(out)])
    traj = out / "trajectory.jsonl"
    text = traj.read_text()
    traj.write_text(text[: len(text) - 100])
    capsys.readouterr()
    assert main(["analyze", "--traj", str(traj), "--quantities", "mass"]) == EXIT_IO
    assert "last valid sample t=0.08" in capsys.readouterr().err


def test_bad_worker_env(monkeypatch):
    monkeypatch.setenv("PTSKDV_WORKERS", "many")
    assert main(["verify", "--suite", "pt"]) == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ptskdv", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("ptskdv ")
