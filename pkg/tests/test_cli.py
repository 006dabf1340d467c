import csv
import io
import json
import subprocess
import sys

import pytest

from rsmult.cli import main
from rsmult.localdata import LocalData, dump_csv, dump_json


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, (json.loads(text) if text else None)


@pytest.fixture(scope="module")
def fixtures(tmp_path_factory, chi3, chi4):
    d = tmp_path_factory.mktemp("local")
    paths = {}
    for name, chi in (("chi3", chi3), ("chi4", chi4)):
        data = LocalData(chi.satake_table(20_000), q=chi.modulus, mu=(1.0,))
        paths[name] = d / f"{name}.csv"
        paths[name].write_text(dump_csv(data))
    paths["chi4json"] = d / "chi4.json"
    paths["chi4json"].write_text(dump_json(LocalData(chi4.satake_table(20_000), q=4, mu=(1.0,))))
    paths["bad"] = d / "bad.csv"
    paths["bad"].write_text("2,1,1,0\n9,1,1,0\n")
    return {k: str(v) for k, v in paths.items()}


def test_ledger():
    code, doc = run_json("ledger")
    assert code == 0
    assert doc["A"] == pytest.approx(doc["A1"] + 3 * doc["A2"])
    assert doc["preconvex_slope"] == -0.5
    assert set(doc["zero_free_width"]) == {"10", "100", "1000"}


def test_positivity_and_cauchy_commands():
    code, doc = run_json("lemma1", "--d", "3", "--trials", "200", "--seed", "5")
    assert code == 0 and doc["pass_rate"] == 1.0 and doc["min_b_d"] >= 1
    code, doc = run_json("cauchy", "--alpha", "1j,-1j", "--K", "6")
    assert code == 0 and doc["max_relative_difference"] <= 1e-8
    assert doc["coefficients"][0] == 1.0
    code, _ = run("lemma1", "--d", "9")
    assert code == 1


def test_bounds():
    code, doc = run_json("polar-bound", "--conductor", "100", "--d", "2")
    assert code == 0 and doc["lower_bound"] > 0 and doc["contour_error"] > 0
    assert doc["extrapolation"] == "convexity"
    _, lin = run_json("polar-bound", "--conductor", "100", "--d", "2", "--extrapolation", "linear")
    assert lin["contour_error"] <= doc["contour_error"]
    code, doc = run_json("l1-bound", "--Q", "1")
    assert code == 0 and doc["bound"] == 1.0
    code, doc = run_json("zero-free", "--Q", "10", "--c", "2")
    assert code == 0 and 0 < doc["width"] < 1


def test_prime_floor_command():
    code, doc = run_json("lemma2", "--d", "2", "--Y", "2000", "--seed", "1")
    assert code == 0 and doc["passed"] and doc["F"] >= doc["floor"]


def test_distinguish(fixtures):
    code, doc = run_json("distinguish", fixtures["chi3"], fixtures["chi4"])
    assert code == 0
    assert (doc["verdict"], doc["witness"], doc["S"]) == ("Distinct", 5, [2, 3])
    code, doc = run_json("distinguish", fixtures["chi4"], fixtures["chi4json"], "--ycap", "2e4")
    assert code == 0 and doc["verdict"] == "Equal" and doc["stage"] == 2 and doc["margin"] > 0
    code, doc = run_json("distinguish", fixtures["chi4"], fixtures["chi4"], "--ycap", "100")
    assert code == 2 and doc is None
    code, doc = run_json("distinguish", fixtures["chi4"], fixtures["chi4"], "--ycap", "100", "--no-certify")
    assert code == 0 and doc["verdict"] == "Equal"
    code, doc = run_json("distinguish", fixtures["chi3"], fixtures["chi4"], "--mode", "approx", "--tau", "0.5")
    assert code == 0 and doc["verdict"] == "Distinct" and doc["witness"] == 5


def test_distinguish_errors(fixtures, capsys):
    assert run("distinguish", fixtures["chi3"], fixtures["bad"])[0] == 1
    assert "bad.csv:2" in capsys.readouterr().err
    assert run("distinguish", fixtures["chi3"], fixtures["chi4"], "--S", "2")[0] == 1
    assert run("distinguish", fixtures["chi3"], fixtures["chi4"], "--ycap", "1e6")[0] == 1
    assert run("distinguish", fixtures["chi3"], "/nonexistent.csv")[0] == 1


def test_example_csv():
    code, text = run("example", "--q-max", "30")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0]["D"] == "-3" and rows[1]["D"] == "-4"
    assert all(float(r["lhs"]) > 0 for r in rows)
    code, doc = run_json("example", "--q-max", "8", "--format", "json")
    assert code == 0 and [r["D"] for r in doc] == [-3, -4, 5, -7, -8, 8]


def test_determinism(fixtures):
    for argv in (
        ("lemma1", "--d", "2", "--trials", "50", "--seed", "9"),
        ("cauchy", "--d", "3", "--seed", "2"),
        ("example", "--q-max", "40"),
        ("distinguish", fixtures["chi3"], fixtures["chi4"]),
    ):
        assert run(*argv) == run(*argv)


def test_config(tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"epsilon": 0.1}))
    _, base = run_json("ledger")
    _, viaflag = run_json("ledger", "--config", str(cfg))
    assert viaflag["epsilon"] == 0.1 and viaflag["A"] > base["A"]
    monkeypatch.setenv("RSMULT_CONFIG", str(cfg))
    assert run_json("ledger")[1]["epsilon"] == 0.1
    # explicit flags beat the config file
    assert run_json("ledger", "--epsilon", "0.02")[1]["epsilon"] == 0.02
    cfg.write_text(json.dumps({"bogus": 1}))
    assert run("ledger")[0] == 1


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "rsmult", "l1-bound", "--Q", "1"], capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["bound"] == 1.0
