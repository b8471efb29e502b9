import json
from fractions import Fraction

import pytest

from symroot.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_json(out: str) -> dict:
    return json.loads(out)


def assert_report_schema(d: dict) -> None:
    assert set(d) == {"polynomial", "status", "iterations", "final", "oracle", "history"}
    assert set(d["polynomial"]) == {"degree", "a"}
    assert isinstance(d["polynomial"]["degree"], int)
    assert all(isinstance(s, str) for s in d["polynomial"]["a"])
    assert isinstance(d["status"], str)
    assert isinstance(d["iterations"], int)
    if d["final"] is not None:
        assert set(d["final"]) == {"num", "den", "float"}
        assert isinstance(d["final"]["num"], str)
        assert isinstance(d["final"]["den"], str)
        assert isinstance(d["final"]["float"], float)
    if d["oracle"] is not None:
        assert set(d["oracle"]) == {"float", "agrees"}
        assert isinstance(d["oracle"]["float"], float)
        assert isinstance(d["oracle"]["agrees"], bool)
    assert isinstance(d["history"], list)
    for row in d["history"]:
        assert set(row) == {"iter", "ratios"}
        assert isinstance(row["iter"], int)
        for r in row["ratios"]:
            assert set(r) == {"j", "num", "den"}
            assert isinstance(r["j"], int)
            assert isinstance(r["num"], str)
            assert isinstance(r["den"], str)


def test_run_golden_table(capsys):
    code, out, err = run_cli(capsys, "run", "--poly", "x^2 - x - 1")
    assert code == 0
    assert "status: Converged" in out
    assert "oracle agreement: yes" in out
    assert "1.618033988" in out


def test_run_golden_json_schema(capsys):
    code, out, _ = run_cli(capsys, "run", "--poly", "x^2 - x - 1", "--format", "json")
    assert code == 0
    d = parse_json(out)
    assert_report_schema(d)
    assert d["status"] == "Converged"
    assert d["polynomial"] == {"degree": 2, "a": ["1", "1"]}
    assert d["oracle"]["agrees"] is True
    final = Fraction(int(d["final"]["num"]), int(d["final"]["den"]))
    assert abs(final - Fraction("1.6180339887498949")) <= Fraction(1, 10**12)
    assert d["history"][0]["ratios"] == []
    assert d["history"][-1]["iter"] == d["iterations"]


def test_run_json_schema_on_failure_paths(capsys):
    code, out, _ = run_cli(capsys, "run", "--poly", "x^2 + 2x + 2", "--format", "json")
    assert code == 2
    d = parse_json(out)
    assert_report_schema(d)
    assert d["status"] == "NoRealLimit"
    assert d["final"] is None
    assert d["oracle"] is None


def test_run_tsv_rows(capsys):
    code, out, _ = run_cli(capsys, "run", "--poly", "x^2 - x - 1", "--format", "tsv")
    assert code == 0
    lines = out.strip().splitlines()
    # iteration 0 has no defined ratio, so rows start at 1
    first = lines[0].split("\t")
    assert first == ["1", "1", "2", "1", "2"]
    for line in lines:
        iter_s, j_s, num_s, den_s, float_s = line.split("\t")
        assert int(iter_s) >= 1
        assert int(j_s) == 1
        assert float(float_s) == int(num_s) / int(den_s)


def test_run_coeffs_equivalent_to_poly(capsys):
    code1, out1, _ = run_cli(capsys, "run", "--poly", "x^2 - x - 1", "--format", "json")
    code2, out2, _ = run_cli(capsys, "run", "--coeffs", "-1,-1,1", "--format", "json")
    assert (code1, out1) == (code2, out2)


def test_run_exit_codes():
    assert main(["run", "--poly", "2x - 1"]) == 3  # not monic
    assert main(["run", "--poly", "x^2 + 2x + 2"]) == 2  # NoRealLimit
    assert main(["run", "--poly", "x^2 + 3x + 1"]) == 4  # converged off the largest root
    assert main(["run", "--poly", "x^2 + 3x + 1", "--no-oracle"]) == 0
    assert main(["run", "--poly", "x^2 + 2x + 1"]) == 2  # DegenerateStart mid-run
    assert main(["run", "--poly", "x^2 - x - 1", "--iters", "8"]) == 2  # budget too small
    assert main(["run", "--poly", "x^2 - x - 1", "--engine", "word", "--word-cap", "50"]) == 5


def test_run_dominance_failure_message(capsys):
    code, out, _ = run_cli(capsys, "run", "--poly", "x^2 + 3x + 1")
    assert code == 4
    assert "oracle agreement: NO" in out


def test_run_option_errors(capsys):
    assert main(["run", "--poly", "x^2 - x - 1", "--tol", "0"]) == 3
    assert main(["run", "--poly", "x^2 - x - 1", "--tol", "nope"]) == 3
    assert main(["run", "--poly", "x^2 - x - 1", "--iters", "0"]) == 3
    assert main(["run", "--poly", "x^2 - x - 1", "--engine", "laser"]) == 3
    assert main(["run"]) == 3  # no polynomial source
    assert main(["run", "--poly", "x", "--coeffs", "0,1"]) == 3  # two sources
    assert main(["frobnicate"]) == 3
    assert main([]) == 3
    capsys.readouterr()


def test_syntax_error_offset_reaches_stderr(capsys):
    code, _, err = run_cli(capsys, "run", "--poly", "x^2 + @")
    assert code == 3
    assert "offset 6" in err


def test_bad_coeffs_rejected(capsys):
    code, _, err = run_cli(capsys, "run", "--coeffs", "1,2,x")
    assert code == 3
    assert "integers" in err


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert main(["run", "--help"]) == 0
    capsys.readouterr()


def test_trace_golden(capsys):
    code, out, _ = run_cli(capsys, "trace", "--poly", "x^2 - x - 1", "--depth", "2")
    assert code == 0
    assert out.splitlines() == [
        "1+  n=(1, 0)",
        "1+ 1+ 2+  n=(2, 1)",
        "1+ 1+ 2+ 1+ 1+ 2+ 1+ 2+  n=(5, 3)",
    ]


def test_trace_depth_zero(capsys):
    code, out, _ = run_cli(capsys, "trace", "--poly", "x^3 - 2", "--depth", "0")
    assert code == 0
    assert out.splitlines() == ["1+  n=(1, 0, 0)"]


def test_trace_rle_engine(capsys):
    code, out, _ = run_cli(capsys, "trace", "--poly", "x^2 - x - 1", "--depth", "2", "--engine", "rle")
    assert code == 0
    assert out.splitlines()[1] == "1+^2 2+  n=(2, 1)"


def test_trace_counts_engine_is_invalid():
    assert main(["trace", "--poly", "x^2 - x - 1", "--engine", "counts"]) == 3


def test_trace_overflow_exits_five(capsys):
    code, out, err = run_cli(
        capsys, "trace", "--poly", "x^2 - x - 1", "--depth", "30", "--word-cap", "100"
    )
    assert code == 5
    assert "overflow at depth 5" in err
    # the completed prefix is still printed
    assert len(out.splitlines()) == 5


def test_verify_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--poly", "x^3 - x - 1", "--samples", "100")
    assert code == 0
    assert "commutation: 100/100 exact" in out
    assert out.strip().endswith("PASS")


def test_verify_samples_zero_rejected():
    assert main(["verify", "--poly", "x^3 - x - 1", "--samples", "0"]) == 3


def test_verify_deterministic_output(capsys):
    runs = []
    for _ in range(2):
        code, out, err = run_cli(capsys, "verify", "--poly", "x^3 - x - 1", "--samples", "200", "--seed", "7")
        runs.append((code, out, err))
    assert runs[0] == runs[1]
    assert runs[0][0] == 0


def test_verify_seed_changes_words_not_verdict(capsys):
    code1, out1, _ = run_cli(capsys, "verify", "--poly", "x^2 - 3x + 1", "--samples", "50", "--seed", "1")
    code2, out2, _ = run_cli(capsys, "verify", "--poly", "x^2 - 3x + 1", "--samples", "50", "--seed", "2")
    assert code1 == code2 == 0
    assert out1 != out2 or "seed: 1" in out1  # seed line differs at minimum


def test_verify_fault_injection_exits_one(capsys, monkeypatch):
    import symroot.counting as counting
    from symroot.polynomial import IterationMatrix, iteration_matrix as real_matrix

    def tampered(p):
        M = real_matrix(p)
        rows = [list(r) for r in M.entries]
        rows[1][0] += 1  # flip one subdiagonal entry
        return IterationMatrix(tuple(tuple(r) for r in rows))

    monkeypatch.setattr(counting, "iteration_matrix", tampered)
    code, out, _ = run_cli(capsys, "verify", "--poly", "x^2 - x - 1", "--samples", "100", "--seed", "7")
    assert code == 1
    assert "FAIL" in out
    assert "counterexample" in out


def test_run_word_engine_matches_counts(capsys):
    code1, out1, _ = run_cli(
        capsys, "run", "--poly", "x^2 - x - 1", "--engine", "word", "--iters", "8", "--format", "tsv"
    )
    code2, out2, _ = run_cli(
        capsys, "run", "--poly", "x^2 - x - 1", "--engine", "counts", "--iters", "8", "--format", "tsv"
    )
    assert code1 == code2 == 2
    assert out1 == out2


def test_degree_one_run(capsys):
    code, out, _ = run_cli(capsys, "run", "--poly", "x - 2")
    assert code == 0
    assert "note: degree 1" in out
    assert "final: 2 = 2/1" in out
