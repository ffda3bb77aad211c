import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from ramforge import cli
from ramforge.localram import verify as verify_mod

GOLDEN = Path(__file__).parent / "golden"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code, doc = cli.run(list(argv), stdout=out, stderr=err)
    return code, doc, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["factor", "--field", "1,0,1", "--prime", "5"], "factor_gaussian_5.json"),
        (["thh", "--field", "1,0,1", "--max-degree", "4"], "thh_gaussian_4.json"),
    ],
)
def test_golden(argv, golden):
    code, _, text, _ = call(*argv)
    assert code == 0
    assert text == (GOLDEN / golden).read_text()


def test_thh_degree_three():
    code, doc, _, _ = call("thh", "--field", "1,0,1", "--max-degree", "4")
    row = next(r for r in doc["results"]["thh"] if r["degree"] == 3)
    assert code == 0 and row["free_rank"] == 0 and row["invariant_factors"] == [4, 4]


def test_factor_split():
    code, doc, _, _ = call("factor", "--field", "1,0,1", "--prime", "5")
    facs = doc["results"]["factorization"]["factors"]
    assert code == 0 and [(q["e"], q["f"]) for q in facs] == [(1, 1), (1, 1)]


def test_verify_mainlemma_ok():
    code, doc, _, _ = call("verify-mainlemma", "--eisenstein", "p=2,e=2,g=0,u=1", "--precision", "16")
    (rep,) = doc["results"]["reports"]
    assert code == 0 and rep["ok"] and all(rep["certificate"].values())


def test_determinism():
    argv = ["report", "--field", "1,0,1"]
    assert call(*argv)[2] == call(*argv)[2]


def test_negative_coefficients_accepted():
    code, doc, _, _ = call("omega1", "--field", "-2,0,1")
    assert code == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        ["thh", "--field", "1,0,2"],
        ["thh", "--field", "-1,0,1"],
        ["factor", "--field", "1,0,1", "--prime", "6"],
        ["thh", "--field", "x"],
        ["verify-mainlemma", "--eisenstein", "p=2,e=2,u=2"],
    ],
)
def test_input_errors_exit_1(argv):
    code, doc, _, err = call(*argv)
    assert code == 1
    assert doc["error"]["reason"] and err.startswith("ramforge:")


def test_not_maximal_report_degrades():
    code, doc, _, _ = call("report", "--field", "3,0,1")
    assert code == 0
    assert {"reason": "not_maximal", "p": 2} in doc["warnings"]
    assert doc["results"]["thh"]["status"] == "skipped"
    assert doc["results"]["omega1"]["status"] == "ok"


def test_precision_exhausted_exit_2():
    code, doc, _, _ = call("classify", "--field", "-3,0,0,1", "--prime", "3", "--precision", "3")
    assert code == 2 and doc["error"]["reason"]


def test_precision_env_variable(monkeypatch):
    monkeypatch.setenv(cli.PRECISION_ENV, "3")
    code, _, _, _ = call("classify", "--field", "-3,0,0,1", "--prime", "3")
    assert code == 2


def test_mutation_gives_exit_3(monkeypatch):
    real = verify_mod.source_complex

    def corrupted(T):
        C = real(T)
        d = C.diffs[1]
        # flip one entry of the first differential
        C.diffs[1] = d + type(d).diagonal(d.ring, [1], d.nrows, d.ncols)
        return C

    monkeypatch.setattr(verify_mod, "source_complex", corrupted)
    code, doc, _, _ = call("verify-mainlemma", "--eisenstein", "p=2,e=2,g=0,u=1")
    assert code == 3
    assert doc["error"]["reason"]


def test_report_gaussian():
    code, doc, _, _ = call("report", "--field", "1,0,1")
    res = doc["results"]
    assert code == 0 and res["ramified_primes"] == [2]
    assert res["primes"]["2"]["data"]["classification"] == "TotallyRamified"
    assert all(c["status"] == "ok" for c in res["checks"].values())


def test_report_integers():
    code, doc, _, _ = call("report", "--field", "0,1")
    assert code == 0 and doc["results"]["ramified_primes"] == []


def test_table_format_and_out(tmp_path):
    path = tmp_path / "r.txt"
    code, _, text, _ = call("ram", "--field", "1,0,1", "--max-degree", "2", "--format", "table", "--out", str(path))
    assert code == 0 and "Z/2 + Z/2" in text
    assert path.read_text() == text


def test_other_commands():
    assert call("different", "--field", "1,1,1")[0] == 0
    assert call("hh", "--field", "1,0,1", "--max-degree", "3", "--direct")[1]["results"]["agree"]
    assert call("verify-l2", "--eisenstein", "p=3,e=3,g=0,u=1")[0] == 0
    assert call("verify-triple", "--depth", "3")[0] == 0
    doc = call("check-solid", "--algebra", "Z/4")[1]
    assert doc["results"]["solid"]["solid"] is False


def test_entry_point_subprocess():
    proc = subprocess.run([sys.executable, "-m", "ramforge.cli", "thh", "--field", "0,1", "--max-degree", "3"],
                          capture_output=True, text=True, env=dict(os.environ))
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["schema"] == "ramforge/1"
