"""The command-line front end: subcommands, exit codes, stream formats."""

from __future__ import annotations

import json

import pytest

from openarrows.cli import main
from openarrows.gamefile import fixture_path

PD = fixture_path("prisoners_dilemma.game")
MP = fixture_path("matching_pennies.game")
MPP = fixture_path("matching_pennies_prob.game")


def _lines(capsys):
    return capsys.readouterr().out.splitlines()


def test_solve_closed_dilemma(capsys):
    assert main(["solve", PD, "--closed"]) == 0
    out = _lines(capsys)
    assert "D,D\ttrue" in out
    assert "C,C\tfalse" in out
    assert len(out) == 4


def test_solve_json_is_versioned_one_object_per_line(capsys):
    assert main(["solve", PD, "--closed", "--format", "json"]) == 0
    rows = [json.loads(line) for line in _lines(capsys)]
    assert all(r["schema"] == "openarrows.solve/1" for r in rows)
    verdicts = {r["strategy"]: r["equilibrium"] for r in rows}
    assert verdicts == {"C,C": False, "C,D": False, "D,C": False, "D,D": True}


def test_solve_is_deterministic(capsys):
    main(["solve", PD, "--closed"])
    first = capsys.readouterr().out
    main(["solve", PD, "--closed"])
    assert capsys.readouterr().out == first


def test_solve_probes_mixed_survives(capsys):
    assert main(["solve", MPP]) == 0
    out = dict(line.split("\t") for line in _lines(capsys))
    assert out == {
        "mixed": "true", "pure_hh": "false", "pure_ht": "false",
        "pure_th": "false", "pure_tt": "false",
    }


def test_solve_witness_monoid_lists_deviations(capsys):
    assert main(["solve", PD, "--closed", "--monoid", "witness"]) == 0
    out = dict(line.split("\t") for line in _lines(capsys))
    assert out["D,D"] == "[]"
    assert out["C,C"] != "[]"


def test_solve_unknown_context_exits_2(capsys):
    assert main(["solve", PD, "--context", "ghost"]) == 2


def test_solve_parse_error_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.game"
    bad.write_text("set s 0 1\nwat\n")
    assert main(["solve", str(bad)]) == 2
    assert "line 2, column 1" in capsys.readouterr().err


def test_solve_empty_file_exits_2(tmp_path, capsys):
    empty = tmp_path / "empty.game"
    empty.write_text("\n")
    assert main(["solve", str(empty)]) == 2
    assert "no game declared" in capsys.readouterr().err


def test_oracle_agrees_on_fixtures(capsys):
    assert main(["oracle", PD]) == 0
    assert "agree\ttrue" in _lines(capsys)
    assert main(["oracle", MP, "--format", "json"]) == 0
    row = json.loads(_lines(capsys)[0])
    assert row["schema"] == "openarrows.oracle/1"
    assert row["compositional"] == [] and row["oracle"] == []


def test_oracle_rejects_other_shapes_with_4(tmp_path, capsys):
    seq_only = tmp_path / "seq.game"
    seq_only.write_text(
        "set moves C D\nset util 0 1\n"
        "payoff u : moves moves -> util util\n"
        "  C C = 1 1\n  C D = 0 0\n  D C = 0 0\n  D D = 1 1\n"
        "decision row : moves utility util\n"
        "decision col : moves utility util\n"
        "game g = (par row col)\n"
    )
    assert main(["oracle", str(seq_only)]) == 4


def test_laws_stream_and_exit_zero(capsys):
    assert main(["laws", "--suite", "optic", "--format", "json"]) == 0
    rows = [json.loads(line) for line in _lines(capsys)]
    assert rows and all(r["schema"] == "openarrows.laws/1" for r in rows)
    assert all(r["status"] == "pass" for r in rows)


def test_laws_size_bound_exits_3(capsys, monkeypatch):
    assert main(["laws", "--suite", "optic", "--size", "3"]) == 3
    monkeypatch.setenv("OPENARROWS_MAX_SIZE", "2")
    assert main(["laws", "--suite", "optic", "--size", "3"]) == 3
    assert "OPENARROWS_MAX_SIZE" in capsys.readouterr().err


def test_laws_mutants_exit_nonzero_and_isolate(capsys):
    assert main(["laws", "--mutants", "--format", "json"]) == 1
    rows = [json.loads(line) for line in _lines(capsys)]
    assert all(r["schema"] == "openarrows.mutants/1" for r in rows)
    for r in rows:
        assert r["failed"] == [r["target"]]
        assert r["isolated"] is True


def test_fmt_round_trips_byte_identical(tmp_path, capsys):
    assert main(["fmt", PD]) == 0
    once = capsys.readouterr().out
    f = tmp_path / "canon.game"
    f.write_text(once)
    assert main(["fmt", str(f)]) == 0
    assert capsys.readouterr().out == once


def test_missing_file_exits_2(capsys):
    assert main(["solve", "/nonexistent.game"]) == 2
