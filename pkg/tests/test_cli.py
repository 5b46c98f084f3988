"""The command-line surface, driven through main() in-process."""

import json

import pytest

from celab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_list_prints_relations_and_reductions(capsys):
    code, out = run(capsys, "list")
    assert code == 0
    assert "eq_ce" in out and "eqce_to_e0" in out


def test_enumerate_prints_the_approximation(capsys):
    code, out = run(capsys, "enumerate", "--term", "(script (0 (5)))",
                    "--stage", "3")
    assert code == 0
    assert out.strip() == "{5}"


def test_reduce_emits_a_program_term(capsys):
    code, out = run(capsys, "reduce", "--reduction", "eqce_to_e0",
                    "--term", "(script (0 (1 2)))")
    assert code == 0
    assert out.startswith("(combinator expand_columns")


def test_verify_clean_run_exits_zero(capsys):
    code, out = run(capsys, "verify", "--reduction", "emed_to_e0",
                    "--seed", "7", "--size", "12")
    assert code == 0
    report = json.loads(out)
    assert report["agreements"] == report["cases"] == 12
    assert "elapsed" not in report


def test_verify_unknown_budget_exits_three(capsys):
    code, _ = run(capsys, "verify", "--reduction", "eqce_to_e0",
                  "--size", "3", "--budget", "1")
    assert code == 3


def test_hierarchy_matches_figure_two_golden(capsys, tmp_path):
    code, out = run(capsys, "hierarchy", "--format", "dot", "--figure", "2")
    assert code == 0
    with open("tests/goldens/fig2.dot") as fh:
        assert out == fh.read()


def test_corpus_write_and_recheck(capsys, tmp_path):
    path = tmp_path / "corpus.json"
    code, _ = run(capsys, "corpus", "--reduction", "cut_omega",
                  "--seed", "2", "--size", "10", "--out", str(path))
    assert code == 0
    code, out = run(capsys, "corpus", "--in", str(path))
    assert code == 0 and "10 cases" in out
    code, _ = run(capsys, "verify", "--reduction", "cut_omega",
                  "--corpus", str(path))
    assert code == 0


def test_bad_inputs_exit_four(capsys):
    assert run(capsys, "verify", "--reduction", "nope")[0] == 4
    assert run(capsys, "enumerate", "--term", "(oops")[0] == 4
    assert run(capsys, "hierarchy", "--figure", "99")[0] == 4
    assert run(capsys, "corpus", "--in", "/nonexistent.json")[0] == 4
    assert main(["frobnicate"]) == 4
