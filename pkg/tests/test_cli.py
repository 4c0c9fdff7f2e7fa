import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from jacobi_asym.cli import EIG_COLUMNS, main

GOLDEN = Path(__file__).parent / "golden"
SG = '{"family": "stretched_geometric", "q": 0.5, "s": 2}'
FAC = '{"family": "factorial", "c": 1}'
GEO = '{"family": "geometric", "q": 0.5}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_eig_matches_golden(capsys):
    code, out, _ = run(capsys, "eig", "--spec", SG, "--k-max", "5")
    assert code == 0
    got, want = parse_csv(out), parse_csv((GOLDEN / "eig_stretched_k5.csv").read_text())
    assert list(got[0]) == EIG_COLUMNS
    assert len(got) == len(want) == 5
    for g, w in zip(got, want):
        for col in EIG_COLUMNS:
            if col == "status" or col in ("k", "truncation_size"):
                assert g[col] == w[col]
            else:
                assert float(g[col]) == pytest.approx(float(w[col]), rel=1e-12, abs=1e-12)


def test_eig_json_schema(capsys):
    code, out, _ = run(capsys, "eig", "--spec", FAC, "--k-max", "3", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["report"] == "eig"
    assert doc["spec"] == {"family": "factorial", "c": 1.0}
    assert len(doc["rows"]) == 3 and doc["summary"] == {"certified": 3, "failed": 0}
    assert doc["config"]["rel_tol"] == 1e-10


def test_config_file_and_output(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    out = tmp_path / "out.csv"
    cfg.write_text(json.dumps({"spec": json.loads(FAC), "k_max": 2, "rel_tol": 1e-8}))
    code, stdout, _ = run(capsys, "eig", "--config", str(cfg), "--output", str(out))
    assert code == 0 and stdout == ""
    rows = parse_csv(out.read_text())
    assert [r["k"] for r in rows] == ["1", "2"]
    assert b"\r\n" not in out.read_bytes()


@pytest.mark.parametrize(
    "argv,needle",
    [
        (["eig", "--spec", '{"family": "stretched_geometric", "s": 2}'], "'q'"),
        (["eig", "--spec", SG, "--rel-tol", "0.5"], "rel_tol"),
        (["scan", "--spec", SG, "--eps", "0.2"], "eps"),
        (["table", "--spec", SG, "--k-max", "0"], "k_max"),
        (["verify", "--spec", '{"family": "table", "values": [1.0, 0.0, 0.5]}'], "consist of positive numbers"),
        (["eig"], "spec"),
        (["eig", "--spec", "{not json"], "JSON"),
        (["bogus", "--spec", SG], "invalid choice"),
    ],
)
def test_config_errors_exit_1(capsys, argv, needle):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    _, err = capsys.readouterr()
    assert code == 1
    assert needle in err


def test_table_geometric_partial(capsys):
    code, out, _ = run(capsys, "table", "--spec", GEO, "--k-max", "3", "--format", "json")
    assert code == 2
    doc = json.loads(out)
    assert doc["summary"]["decay_condition_on_window"] is False
    assert "a_(n+1)/a_n" in doc["summary"]["decay_condition_note"]
    assert all(r["bracket_label"] == "outside proven family" for r in doc["rows"])


def test_table_stretched(capsys):
    code, out, _ = run(capsys, "table", "--spec", SG, "--k-max", "6")
    assert code == 0
    rows = parse_csv(out)
    assert [r["bracket_verdict"] for r in rows] == ["false"] + ["true"] * 5


def test_eig_partial_certification(capsys):
    short = json.dumps({"family": "table", "log_values": [-(n**2) * 0.7 for n in range(1, 13)]})
    code, out, _ = run(capsys, "eig", "--spec", short, "--k-max", "6")
    assert code == 2
    rows = parse_csv(out)
    assert rows[0]["status"] == "certified"
    assert rows[-1]["status"].startswith("failed")


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--spec", SG, "--k-max", "8", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["true"] == 8 and doc["summary"]["fraction_true"] == 1.0
    assert all(r["smallest_verdict"] == "true" for r in doc["rows"])


def test_verify_passes_and_is_deterministic(capsys):
    argv = ["verify", "--spec", SG, "--n-max", "15", "--format", "json", "--seed", "3"]
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["summary"]["passed"] is True
    names = {r["check"] for r in doc["rows"]}
    assert {"product_identity", "spectrum_symmetry", "truncation_bound", "oracle_equivalence"} <= names


def test_verify_names_failing_check(capsys, monkeypatch):
    from jacobi_asym import cli
    from jacobi_asym.verification import CheckResult

    monkeypatch.setattr(
        cli, "run_verification", lambda *a, **k: [CheckResult("spectrum_symmetry", False, "forced")]
    )
    code, _, err = run(capsys, "verify", "--spec", SG)
    assert code == 3
    assert "spectrum_symmetry" in err


def test_console_entry_point_module():
    proc = subprocess.run(
        [sys.executable, "-m", "jacobi_asym.cli", "eig", "--spec", SG, "--k-max", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    (row,) = parse_csv(proc.stdout)
    assert math.isclose(float(row["value"]), 0.503891167501613, rel_tol=1e-10)
