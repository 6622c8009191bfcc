"""Command-line surface: outputs, exit codes, pipeline round trips."""

import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from smcsp import cli, io
from smcsp.dictators import dict_view
from smcsp.randgen import vc_edge
from smcsp.unique_games import UgInstance, completeness_solution, compose

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def hvc3():
    return str(FIXTURES / "hvc3.json")


def uniform_solution():
    return str(FIXTURES / "hvc3_uniform.solution.json")


# ---------------------------------------------------------------------------
# lp / round / oracle
# ---------------------------------------------------------------------------

def test_lp_prints_objective_and_solution(capsys):
    code, out, _ = run(capsys, "lp", hvc3())
    assert code == 0
    assert out.splitlines()[0] == "1/3"


def test_lp_json_mode(capsys):
    code, out, _ = run(capsys, "lp", hvc3(), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["objective"] == "1/3"
    assert set(doc["x"]) == {"v0", "v1", "v2"}


def test_lp_lambdas_certificate(capsys):
    code, out, _ = run(capsys, "lp", str(FIXTURES / "vc_edge.json"),
                       "--json", "--lambdas")
    doc = json.loads(out)
    assert code == 0
    atoms = doc["lambdas"][0]["atoms"]
    assert sum(F(p) for p in atoms.values()) == 1


def test_round_solver_solution(capsys):
    code, out, _ = run(capsys, "round", hvc3(), "--eps", "1/6")
    assert code == 0
    assert out.splitlines()[0] == "1/3"


def test_round_explicit_uniform_solution(capsys):
    code, out, _ = run(capsys, "round", hvc3(), "--eps", "1/6",
                       "--solution", uniform_solution())
    assert code == 0
    assert out.splitlines()[0] == "1"


def test_round_report(capsys):
    code, out, _ = run(capsys, "round", hvc3(), "--eps", "1/6",
                       "--solution", uniform_solution(), "--report")
    assert code == 0
    assert "round_over_opt = 3" in out


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", hvc3())
    assert code == 0
    assert out.splitlines()[0] == "1/3"


# ---------------------------------------------------------------------------
# dict / reduce / decode pipeline
# ---------------------------------------------------------------------------

def _write_game(path):
    ug = UgInstance(2, ("L0", "L1"), ("R0",),
                    ((0, 0, F(1, 2), (0, 1)), (1, 0, F(1, 2), (1, 0))))
    path.write_text(io.serialize_ug(ug))
    return ug


def test_dict_reduce_decode_round_trip(tmp_path, capsys):
    vc = tmp_path / "vc.json"
    vc.write_text(io.serialize_instance(vc_edge()))
    dict_file = tmp_path / "dict.json"
    code, out, _ = run(capsys, "dict", vc, "--eps", "1/2", "--delta",
                       "1/10", "--r", "2", "-o", dict_file)
    assert code == 0
    assert dict_file.exists()

    game_file = tmp_path / "game.json"
    ug = _write_game(game_file)
    composed_file = tmp_path / "f.json"
    code, _, _ = run(capsys, "reduce", "--ug", game_file, "--dict",
                     dict_file, "-o", composed_file)
    assert code == 0

    D = dict_view(io.parse_instance(dict_file.read_text()))
    Finst = io.parse_instance(composed_file.read_text())
    planted = {"L0": 0, "L1": 1, "R0": 0}
    selection, _ = completeness_solution(ug, planted, ["L0", "L1"], D,
                                         Finst)
    sel_file = tmp_path / "sel.json"
    sel_file.write_text(io.serialize_assignment(Finst, selection))

    code, out, _ = run(capsys, "decode", "--f", composed_file,
                       "--solution", sel_file, "--ug", game_file,
                       "--dict", dict_file)
    assert code == 0
    assert "L0 = 0" in out and "L1 = 1" in out and "R0 = 0" in out
    assert "satisfied weight: 1" in out

    # the cube structure can also be recovered from the composed file
    code2, out2, _ = run(capsys, "decode", "--f", composed_file,
                         "--solution", sel_file, "--ug", game_file)
    assert code2 == 0
    assert out2 == out


def test_dict_output_is_deterministic(tmp_path, capsys):
    vc = tmp_path / "vc.json"
    vc.write_text(io.serialize_instance(vc_edge()))
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out_file in (out1, out2):
        code, _, _ = run(capsys, "dict", vc, "--eps", "1/2", "--delta",
                         "1/10", "--r", "2", "-o", out_file)
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_dict_check(tmp_path, capsys):
    vc = tmp_path / "vc.json"
    vc.write_text(io.serialize_instance(vc_edge()))
    code, out, _ = run(capsys, "dict-check", vc, "--eps", "1/2",
                       "--delta", "1/10", "--r", "3")
    assert code == 0
    assert "all 3 feasible" in out


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def test_analyze_gamma(capsys):
    code, out, _ = run(capsys, "analyze", "gamma", "--rho", "0.5",
                       "--mu", "0.5", "--nu", "0.5")
    assert code == 0
    assert abs(float(out) - 1 / 6) < 1e-8


def test_analyze_correlation(capsys):
    code, out, _ = run(capsys, "analyze", "correlation", hvc3(),
                       "--edge", "0", "--split", "1,2|3",
                       "--solution", uniform_solution(),
                       "--delta", "1/10", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["connected"] is True
    assert doc["ok"] is True


def test_analyze_correlation_rejects_bad_split(capsys):
    code, _, err = run(capsys, "analyze", "correlation", hvc3(),
                       "--edge", "0", "--split", "1,2,3")
    assert code == 3
    assert "split" in err


def test_analyze_influences(tmp_path, capsys):
    vc = tmp_path / "vc.json"
    vc.write_text(io.serialize_instance(vc_edge()))
    dict_file = tmp_path / "dict.json"
    run(capsys, "dict", vc, "--eps", "1/2", "--delta", "1/10", "--r", "2",
        "-o", dict_file)
    D = dict_view(io.parse_instance(dict_file.read_text()))
    from smcsp.dictators import dictator_assignment
    sel = tmp_path / "sel.json"
    sel.write_text(io.serialize_assignment(D.instance,
                                           dictator_assignment(D, 1)))
    code, out, _ = run(capsys, "analyze", "influences", dict_file,
                       "--assignment", sel, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["argmax"][1] == 1


# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------

def test_missing_file_is_exit_3(capsys):
    code, _, err = run(capsys, "lp", "/no/such/file.json")
    assert code == 3
    assert "error" in err


def test_bad_document_is_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"q": 2}')
    code, _, err = run(capsys, "lp", bad)
    assert code == 3
    assert "missing keys" in err


def test_usage_error_is_exit_2(capsys):
    code, _, _ = run(capsys, "round", hvc3())  # --eps is required
    assert code == 2


def test_cap_is_exit_4(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SMCSP_CAP_DICT", "3")
    vc = tmp_path / "vc.json"
    vc.write_text(io.serialize_instance(vc_edge()))
    code, _, err = run(capsys, "dict", vc, "--eps", "1/2", "--delta",
                       "1/10", "--r", "4", "-o", tmp_path / "d.json")
    assert code == 4
    assert "SMCSP_CAP_DICT" in err


def test_check_subcommand_single_criterion(capsys):
    code, out, _ = run(capsys, "check", "1")
    assert code == 0
    assert "[PASS] criterion  1" in out
    assert "1/1 criteria passed" in out
