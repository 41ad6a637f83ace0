from __future__ import annotations

import json

import pytest

from cliffsplit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_split_check_exit_codes(capsys):
    code, out = run(capsys, "split-check", "Z2", "--json")
    rec = json.loads(out.out)
    assert code == 0 and rec["splits"] is True and rec["agreement"] is True
    assert set(rec) >= {"group", "splits", "oracles", "witness_digest", "timings", "theorem_prediction"}
    code, _ = run(capsys, "split-check", "Z4", "--oracle=coboundary")
    assert code == 3


def test_bad_spec_is_error(capsys):
    code, out = run(capsys, "split-check", "Z0")
    assert code == 2 and "offset 0" in out.err


def test_budget_error(capsys):
    code, _ = run(capsys, "split-check", "Z4xZ2", "--budget-ms", "0.000001")
    assert code == 2


def test_obstruction_dump(capsys):
    code, out = run(capsys, "obstruction", "Z2", "--dump", "--json")
    d = json.loads(out.out)
    assert code == 0 and d["sp_order"] == 6 and len(d["table"]) == 6 and len(d["table"][0][0]) == 2
    assert d["cocycle_check"]["ok"]


def test_sp_enumerate_json(capsys):
    code, out = run(capsys, "sp-enumerate", "Z2", "--json")
    d = json.loads(out.out)
    assert code == 0 and d["order"] == 6 and d["moduli"] == [2, 2] and len(d["matrices"][0]) == 4


def test_odd_section(capsys):
    code, out = run(capsys, "odd-section", "Z3", "--json")
    d = json.loads(out.out)
    assert code == 0 and d["pairs_checked"] == 576 and d["defects"] == 0 and len(d["section"]) == 24
    code, _ = run(capsys, "odd-section", "Z2")
    assert code == 2


def test_cyclic_constraints(capsys):
    code, out = run(capsys, "cyclic-constraints", "4", "--json")
    assert code == 0 and json.loads(out.out)["intersection"] == []


@pytest.mark.parametrize("verb,spec", [("tambara-check", "Z2xZ2"), ("weyl-verify", "Z3")])
def test_small_verbs(capsys, verb, spec):
    code, out = run(capsys, verb, spec)
    assert code == 0 and spec in out.out


def test_report_empty_and_config(capsys, tmp_path):
    code, out = run(capsys, "report", "--roster", "", "--json")
    assert code == 0 and json.loads(out.out)["rows"] == []
    cfg = tmp_path / "run.cfg"
    cfg.write_text("roster = Z2, Z3\nsweeps = false\n")
    dest = tmp_path / "rep.json"
    code, out = run(capsys, "report", "--config", str(cfg), "--output", str(dest))
    assert code == 0 and len(json.loads(dest.read_text())["rows"]) == 2


def test_global_flag_before_verb(capsys):
    code, out = run(capsys, "--json", "tambara-check", "Z2xZ2")
    assert code == 0 and json.loads(out.out)["exact"] is True
