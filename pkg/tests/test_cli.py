import json
import subprocess
import sys

import pytest


def run_cli(*args, expect=0):
    proc = subprocess.run(
        [sys.executable, "-m", "connposet", *args],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == expect, proc.stderr or proc.stdout
    return proc


def test_sperner_json():
    proc = run_cli("sperner", "--n", "4", "--format", "json")
    doc = json.loads(proc.stdout)
    assert doc["n"] == 4
    assert doc["width"] == 16
    assert doc["max_level_k"] == 3
    assert doc["max_level_size"] == 16
    assert doc["sperner"] is True
    assert len(doc["antichain"]) == 16


def test_census_formats():
    doc = json.loads(run_cli("census", "--n", "4").stdout)
    assert doc["counts"] == [0, 0, 0, 16, 15, 6, 1]
    assert doc["total"] == 38

    csv_out = run_cli("census", "--n", "4", "--format", "csv").stdout.splitlines()
    assert csv_out[0] == "n,family,k,count"
    assert csv_out[4] == "4,connected,3,16"

    nd = run_cli("census", "--n", "3", "--format", "ndjson").stdout.splitlines()
    records = [json.loads(line) for line in nd]
    assert sum(r["count"] for r in records) == 4


def test_binom_evaluator():
    doc = json.loads(run_cli("binom", "--x", "6.5", "--k", "3").stdout)
    assert doc["value"] == 26.8125
    doc = json.loads(run_cli("binom", "--target", "15", "--k", "2").stdout)
    assert abs(doc["x"] - 6) < 1e-6
    run_cli("binom", "--k", "3", expect=2)
    run_cli("binom", "--x", "2", "--target", "3", "--k", "3", expect=2)


def test_matchings_table():
    doc = json.loads(run_cli("matchings", "--n", "3").stdout)
    rows = {(r["k_from"], r["k_to"]): r for r in doc["matchings"]}
    assert rows[(2, 3)]["matching_size"] == 1
    assert rows[(2, 3)]["complete"] is False
    assert sorted(rows[(2, 3)]["violator"]) == ["3:3", "3:5", "3:6"]
    assert rows[(3, 2)]["complete"] is True

    nd = run_cli("matchings", "--n", "3", "--format", "ndjson").stdout.splitlines()
    pairs = [json.loads(line) for line in nd]
    assert all({"from", "to", "k_from", "k_to", "n"} <= set(p) for p in pairs)


def test_chains_output():
    doc = json.loads(run_cli("chains", "--n", "3").stdout)
    assert doc["count"] == 3
    flattened = [g for chain in doc["chains"] for g in chain]
    assert sorted(flattened) == ["3:3", "3:5", "3:6", "3:7"]

    nd = run_cli("chains", "--n", "4", "--format", "ndjson").stdout.splitlines()
    assert len(nd) == 16


def test_lemma_exit_codes():
    run_cli("lemma", "removable", "--n", "4")
    run_cli("lemma", "skeleton", "--n", "4")
    run_cli("lemma", "squares", "--n-max", "10")
    run_cli("lemma", "technical", "--trials", "500")
    run_cli("lemma", "appendix")
    run_cli("lemma", "selftest", expect=1)


def test_lemma_selftest_prints_counterexample():
    proc = run_cli("lemma", "selftest", expect=1)
    assert "FAIL selftest" in proc.stderr


def test_usage_errors_exit_2():
    proc = subprocess.run(
        [sys.executable, "-m", "connposet", "frobnicate"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2
    run_cli("census", "--n", "8", expect=2)
    run_cli("census", "--n", "7", expect=2)  # needs --budget-override
    run_cli("lemma", "nonsense", expect=2)


def test_oversized_poset_reports_budget_error():
    proc = run_cli("sperner", "--n", "7", expect=2)
    assert "budget" in proc.stderr


def test_explore_quotient():
    doc = json.loads(run_cli("explore", "quotient", "--n", "4").stdout)
    assert doc["element_count"] == 6
    assert doc["width"] == 2
    assert doc["sperner"] is True


def test_explore_cprime():
    doc = json.loads(run_cli("explore", "cprime", "--n", "3").stdout)
    assert doc["non_sperner"] == []
    assert len(doc["reports"]) == 3


def test_explore_hamiltonian():
    doc = json.loads(run_cli("explore", "hamiltonian", "--n", "4").stdout)
    assert doc["element_count"] == 10
    assert doc["graded"] is True
    assert doc["width"] == 6


def test_shadow_ratio_and_reports_run():
    run_cli("lemma", "shadow-ratio", "--n", "4")
    run_cli("lemma", "disc", "--n", "4")
    run_cli("lemma", "irk", "--n", "4")
    run_cli("lemma", "tech", "--n", "5")
    run_cli("lemma", "chorded", "--q-max", "4")


def test_lovasz_seeded():
    proc = run_cli("lemma", "lovasz", "--n", "4", "--trials", "25", "--seed", "9")
    doc = json.loads(proc.stdout)
    assert doc["seed"] == 9 and doc["trials"] == 25


@pytest.mark.parametrize(
    "args",
    [
        ("sperner", "--n", "4"),
        ("census", "--n", "5"),
        ("lemma", "lovasz", "--n", "4", "--trials", "20", "--seed", "7"),
        ("lemma", "shadow-ratio", "--n", "5", "--format", "csv"),
        ("explore", "quotient", "--n", "4", "--format", "ndjson"),
        ("chains", "--n", "4", "--format", "ndjson"),
    ],
)
def test_byte_identical_reruns(args):
    first = run_cli(*args).stdout
    second = run_cli(*args).stdout
    assert first == second


def test_out_file_writing(tmp_path):
    target = tmp_path / "census.json"
    run_cli("census", "--n", "4", "--out", str(target))
    doc = json.loads(target.read_text(encoding="utf-8"))
    assert doc["total"] == 38
    assert target.read_text().endswith("\n")


def test_workers_do_not_change_output(tmp_path):
    one = tmp_path / "w1.json"
    two = tmp_path / "w2.json"
    run_cli("census", "--n", "5", "--workers", "1", "--out", str(one))
    run_cli("census", "--n", "5", "--workers", "3", "--out", str(two))
    assert one.read_bytes() == two.read_bytes()
