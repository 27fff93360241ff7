"""Command-line interface, exercised through real subprocesses."""

import json
import os
import subprocess
import sys

import pytest

CMD = [sys.executable, "-m", "qmetric"]


def run(*args, **kw):
    return subprocess.run(CMD + list(args), capture_output=True, text=True,
                          **kw)


def test_help_and_missing_command():
    assert run("--help").returncode == 0
    bad = run("no-such-command")
    assert bad.returncode == 2


def test_derive_defaults():
    out = run("derive")
    assert out.returncode == 0
    assert "order 3 metric generator" in out.stdout
    assert "Q_1 =" in out.stdout and "Q_3 =" in out.stdout
    assert "Q_4" not in out.stdout


def test_derive_json_structure():
    out = run("derive", "--order", "2", "--format", "json")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["order"] == 2
    assert set(doc["q"]) == {"1", "2"}
    assert doc["params"]["l1"] == "l1"


def test_derive_numeric_parameters():
    sym = run("derive", "--order", "1", "--format", "json")
    num = run("derive", "--order", "1", "--l1", "-3", "--k1", "1/2",
              "--format", "json")
    assert num.returncode == 0
    assert json.loads(num.stdout)["params"]["l1"] == "-3"
    assert json.loads(sym.stdout)["q"]["1"] != json.loads(num.stdout)["q"]["1"]


def test_order_out_of_range():
    out = run("derive", "--order", "9")
    assert out.returncode == 2
    assert "outside" in out.stderr


def test_bad_rational_flag():
    out = run("derive", "--l1", "abc")
    assert out.returncode == 2
    assert "not a rational" in out.stderr


def test_out_file(tmp_path):
    dest = tmp_path / "q.txt"
    out = run("derive", "--order", "1", "--out", str(dest))
    assert out.returncode == 0
    assert out.stdout == ""
    assert "Q_1 =" in dest.read_text()


def test_verify_tables_byte_identical():
    a, b = run("verify-tables"), run("verify-tables", "--jobs", "3")
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
    assert "0 failed" in a.stdout
    assert "12 flagged" in a.stdout
    assert any(line.startswith("FLAG ") for line in a.stdout.splitlines())
    assert not any(line.startswith("FAIL ") for line in a.stdout.splitlines())


def test_observables_output():
    out = run("observables", "--order", "2")
    assert out.returncode == 0
    assert "X[0] = (1)*x" in out.stdout
    assert "P[0] = (1)*p" in out.stdout
    assert "h[0] = (1/2)*p^2" in out.stdout
    assert "h[1]" not in out.stdout  # vanishing orders are skipped


def test_classical_text_and_json():
    txt = run("classical")
    assert txt.returncode == 0
    assert txt.stdout.strip() == "H_c = (1/2) m^-1 p^2 + (3/8) m eps^2 x^6 p^-2"
    js = run("classical", "--format", "json", "--mass", "2")
    assert js.returncode == 0
    doc = json.loads(js.stdout)
    assert doc["mass"] == "2"


def test_classical_rejects_order_three_mass_symbolics():
    # order must stay in range, rational mass enforced
    out = run("classical", "--mass", "x")
    assert out.returncode == 2


def test_orbit_csv(tmp_path):
    dest = tmp_path / "orbit.csv"
    out = run("orbit", "--dt", "0.01", "--out", str(dest))
    assert out.returncode == 0
    assert "period" in out.stdout
    lines = dest.read_text().splitlines()
    assert lines[0] == "t,x,p,H"
    assert len(lines) > 100


def test_orbit_summary_to_stderr_without_out():
    out = run("orbit", "--dt", "0.01")
    assert out.returncode == 0
    assert out.stdout.startswith("t,x,p,H")
    assert "period" in out.stderr


def test_orbit_rejects_other_orders():
    out = run("orbit", "--order", "3")
    assert out.returncode == 2


def test_orbit_engine_error_is_exit_one():
    out = run("orbit", "--epsilon", "-1")
    assert out.returncode == 1
    assert "engine error" in out.stderr


def test_free_particle_defaults_and_flags():
    out = run("free-particle", "--k1", "9/4", "--l1", "9/16")
    assert out.returncode == 0
    assert "13/16" in out.stdout  # metric square root
    js = run("free-particle", "--k1", "9/4", "--l1", "9/16",
             "--format", "json")
    doc = json.loads(js.stdout)
    assert doc["localized_weights"] == ["13/9", "5/9"]


def test_free_particle_nonpositive_ratio():
    out = run("free-particle", "--k1", "-1")
    assert out.returncode == 2
    assert "not positive" in out.stderr


def test_free_particle_inexact_roots_are_noted():
    out = run("free-particle", "--k1", "2")
    assert out.returncode == 0
    assert "not an exact rational square" in out.stdout


def test_config_file_fills_unset_options(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"order": 2, "l1": "5"}))
    out = run("derive", "--config", str(cfg), "--format", "json")
    doc = json.loads(out.stdout)
    assert doc["order"] == 2
    assert doc["params"]["l1"] == "5"


def test_flags_beat_config(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"order": 2}))
    out = run("derive", "--config", str(cfg), "--order", "1",
              "--format", "json")
    assert json.loads(out.stdout)["order"] == 1


def test_config_unknown_key(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"orderr": 2}))
    out = run("derive", "--config", str(cfg))
    assert out.returncode == 2
    assert "unknown option" in out.stderr


def test_config_invalid_json(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text("{not json")
    out = run("derive", "--config", str(cfg))
    assert out.returncode == 2


def test_backend_env_round_trip():
    base = dict(os.environ)
    a = subprocess.run(CMD + ["derive", "--order", "2", "--format", "json"],
                       capture_output=True, text=True,
                       env={**base, "QMETRIC_BACKEND": "python"})
    b = subprocess.run(CMD + ["derive", "--order", "2", "--format", "json"],
                       capture_output=True, text=True, env=base)
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
