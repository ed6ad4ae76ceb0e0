"""Command-line interface: exit codes, output determinism, error paths."""

import json

import numpy as np
import pytest

from normpar import matio
from normpar.cli import main


@pytest.fixture
def matrices(tmp_path):
    paths = {}
    docs = {
        "A": np.array([[1, 1], [0, 0]], dtype=complex),
        "B": np.array([[2, 5], [5, 0]], dtype=complex),
        "C": np.diag([1.0, -1.0]).astype(complex),
        "I": np.eye(2, dtype=complex),
        "P1": np.diag([1.0, 0.0]).astype(complex),
        "P2": np.diag([0.0, 1.0]).astype(complex),
    }
    for name, m in docs.items():
        p = tmp_path / f"{name}.json"
        matio.dump_path(m, str(p))
        paths[name] = str(p)
    return paths


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParallelCommand:
    def test_parallel_pair_exits_zero(self, capsys, matrices):
        code, out, _ = run_cli(capsys, "parallel", matrices["B"], matrices["I"])
        assert code == 0
        assert "parallel:   True" in out
        assert "witness vector" in out

    def test_non_parallel_exits_one(self, capsys, matrices):
        code, _, _ = run_cli(capsys, "parallel", matrices["B"], matrices["C"])
        assert code == 1

    def test_self_pair(self, capsys, matrices):
        code, out, _ = run_cli(capsys, "parallel", matrices["B"], matrices["B"])
        assert code == 0
        assert "defect:     " in out

    def test_json_mode_is_deterministic(self, capsys, matrices):
        code1, out1, _ = run_cli(
            capsys, "parallel", matrices["B"], matrices["I"], "--json"
        )
        code2, out2, _ = run_cli(
            capsys, "parallel", matrices["B"], matrices["I"], "--json"
        )
        assert code1 == code2 == 0
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["parallel"] is True
        assert abs(doc["defect"]) < 1e-9

    def test_missing_file_exits_above_two(self, capsys, matrices, tmp_path):
        code, _, err = run_cli(
            capsys, "parallel", str(tmp_path / "missing.json"), matrices["B"]
        )
        assert code > 2
        assert "error" in err.lower()

    def test_shape_mismatch_exits_above_two(self, capsys, matrices, tmp_path):
        p = tmp_path / "rect.json"
        matio.dump_path(np.ones((2, 3)), str(p))
        code, _, _ = run_cli(capsys, "parallel", str(p), matrices["B"])
        assert code > 2

    def test_malformed_document_exits_above_two(self, capsys, matrices, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text('{"rows": 2, "cols": 2, "entries": [[1, 0]]}')
        code, _, _ = run_cli(capsys, "parallel", str(p), matrices["B"])
        assert code > 2

    def test_tol_flag_and_env(self, capsys, matrices, monkeypatch):
        code, out, _ = run_cli(
            capsys, "parallel", matrices["B"], matrices["I"], "--tol", "1e-9", "--json"
        )
        assert json.loads(out)["eq_rel"] == 1e-9
        monkeypatch.setenv("NORMPAR_EQ_REL", "1e-8")
        code, out, _ = run_cli(capsys, "parallel", matrices["B"], matrices["I"], "--json")
        assert json.loads(out)["eq_rel"] == 1e-8
        monkeypatch.setenv("NORMPAR_EQ_REL", "zzz")
        code, _, _ = run_cli(capsys, "parallel", matrices["B"], matrices["I"])
        assert code > 2


class TestBJCommand:
    def test_orthogonal_supports(self, capsys, matrices):
        code, out, _ = run_cli(capsys, "bj", matrices["P1"], matrices["P2"])
        assert code == 0
        assert "witness state" in out

    def test_self_pair_not_orthogonal(self, capsys, matrices):
        code, out, _ = run_cli(capsys, "bj", matrices["B"], matrices["B"])
        assert code == 1
        assert "gamma*" in out

    def test_json_round_trip(self, capsys, matrices):
        code, out, _ = run_cli(capsys, "bj", matrices["P1"], matrices["P2"], "--json")
        doc = json.loads(out)
        assert doc["orthogonal"] is True
        assert doc["minimizer_gamma"] == [0.0, 0.0]


class TestSchattenCommand:
    def test_self_pair(self, capsys, matrices):
        code, _, _ = run_cli(
            capsys, "schatten", matrices["B"], matrices["B"], "--p", "2"
        )
        assert code == 0

    def test_orthogonal_supports_frobenius(self, capsys, matrices):
        code, out, _ = run_cli(
            capsys, "schatten", matrices["P1"], matrices["P2"], "--p", "2", "--json"
        )
        assert code == 1
        doc = json.loads(out)
        assert doc["defect"] == pytest.approx(np.sqrt(2) - 2, rel=1e-9)

    def test_invertible_p1(self, capsys, matrices):
        code, out, _ = run_cli(
            capsys, "schatten", matrices["C"], matrices["C"], "--p", "1", "--json"
        )
        assert code == 0
        assert json.loads(out)["criterion_applicable"] is True

    def test_bad_p_exits_above_two(self, capsys, matrices):
        code, _, _ = run_cli(
            capsys, "schatten", matrices["B"], matrices["B"], "--p", "0.5"
        )
        assert code > 2


class TestVerifyCommand:
    def test_single_theorem(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify",
            "--theorem",
            "lemma-2.1-iv",
            "--dim",
            "2",
            "--trials",
            "20",
            "--seed",
            "7",
        )
        assert code == 0
        assert "lemma-2.1-iv" in out
        assert "counterexamples=0" in out

    def test_unknown_theorem(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--theorem", "nope")
        assert code > 2
        assert "unknown theorem" in err

    def test_full_registry_run(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify",
            "--theorem",
            "all",
            "--dim",
            "2",
            "--trials",
            "4",
            "--seed",
            "5",
        )
        assert code == 0
        from normpar.harness import registered_theorems

        for name in registered_theorems():
            assert name in out

    def test_json_reports_are_deterministic(self, capsys):
        args = [
            "verify",
            "--theorem",
            "thm-2.22-eigen",
            "--dim",
            "2",
            "--trials",
            "15",
            "--seed",
            "3",
            "--json",
        ]
        code1, out1, _ = run_cli(capsys, *args)
        code2, out2, _ = run_cli(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_dump_dir_empty_on_success(self, capsys, tmp_path):
        out_dir = tmp_path / "dumps"
        code, _, _ = run_cli(
            capsys,
            "verify",
            "--theorem",
            "thm-2.22-eigen",
            "--dim",
            "2",
            "--trials",
            "10",
            "--seed",
            "3",
            "--dump-dir",
            str(out_dir),
        )
        assert code == 0
        assert not list(out_dir.glob("*.json")) if out_dir.exists() else True


def test_usage_error_exit_code(capsys):
    code, _, _ = run_cli(capsys, "parallel")
    assert code == 3


def test_no_args_shows_help(capsys):
    code, _, _ = run_cli(capsys)
    assert code in (0, 3)
