"""CLI contract: subcommands, flags, exit codes, output files."""

import json

import pytest

from gnpcrit.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBounds:
    def test_easy_single_value(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--thm", "easy", "--A", "4")
        assert code == 0
        assert out.strip() == "0.75"

    def test_grid_output(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--thm", "easy", "--A", "2:10:2")
        assert code == 0
        assert len(out.strip().splitlines()) == 5

    def test_thm1_table(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--thm", "thm1", "--A", "10",
                               "--n", "1000000")
        assert code == 0
        assert "per_vertex" in out and "largest" in out

    def test_csv_out(self, capsys, tmp_path):
        path = tmp_path / "bounds.csv"
        code, _, _ = run_cli(capsys, "bounds", "--thm", "thm2", "--delta", "0.001",
                             "--n", "1000000", "--out", str(path))
        assert code == 0
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "name,params,raw_value,value,valid"
        assert len(lines) == 2

    def test_missing_args(self, capsys):
        code, _, err = run_cli(capsys, "bounds", "--thm", "thm1", "--A", "10")
        assert code == 1
        assert "error" in err


class TestSweep:
    def test_conservation_complete_graph(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--n", "1000", "--p", "1", "--trials", "1")
        assert code == 0
        assert "|C1|=1000" in out and "components=1" in out

    def test_empty_graph(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--n", "50", "--p", "0")
        assert code == 0
        assert "|C1|=1" in out and "components=50" in out

    def test_critical_keyword_and_echo(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--n", "1000", "--p", "critical",
                               "--seed", "7")
        assert code == 0
        assert "p=0.001" in out  # full-precision echo of 1/n

    def test_lambda_resolution(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--n", "1000000", "--lambda", "1.0")
        assert code == 0
        # 1/n + n^(-4/3) = 1e-6 + 1e-8
        assert "p=1.01e-06" in out

    def test_seed_reproducibility(self, capsys):
        _, out_a, _ = run_cli(capsys, "sweep", "--n", "10000", "--p", "critical",
                              "--trials", "3", "--seed", "42")
        _, out_b, _ = run_cli(capsys, "sweep", "--n", "10000", "--p", "critical",
                              "--trials", "3", "--seed", "42")
        assert out_a == out_b

    def test_jsonl_out(self, capsys, tmp_path):
        path = tmp_path / "sweeps.jsonl"
        code, _, _ = run_cli(capsys, "sweep", "--n", "1000", "--p", "critical",
                             "--trials", "2", "--seed", "1", "--out", str(path))
        assert code == 0
        rows = [json.loads(s) for s in path.read_text().splitlines()]
        assert len(rows) == 2
        assert rows[0]["manifest"]["seed"] == 1
        assert rows[0]["manifest"]["p"] == 0.001

    def test_hist(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--n", "100", "--p", "0.005",
                               "--sizes", "--hist")
        assert code == 0
        assert "size histogram" in out


class TestTail:
    def test_pass_verdict_exit_zero(self, capsys):
        code, out, _ = run_cli(capsys, "tail", "--kind", "tail_c1", "--n", "2000",
                               "--p", "critical", "--A", "4", "--trials", "500",
                               "--seed", "3")
        assert code == 0
        assert "verdict: PASS" in out

    def test_report_file(self, capsys, tmp_path):
        path = tmp_path / "tail.jsonl"
        code, _, _ = run_cli(capsys, "tail", "--kind", "lower_c1", "--n", "10000",
                             "--p", "critical", "--delta", "0.01", "--trials", "300",
                             "--seed", "5", "--out", str(path))
        assert code == 0
        row = json.loads(path.read_text())
        assert row["spec"]["kind"] == "lower_c1"
        assert row["passed"] is True


class TestWalk:
    def test_gamma_mode(self, capsys):
        code, out, _ = run_cli(capsys, "walk", "--mode", "gamma", "--n", "10000",
                               "--p", "critical", "--H", "20", "--trials", "20000",
                               "--seed", "2")
        assert code == 0
        assert "P(S_gamma >= H)" in out and "verdict: PASS" in out

    def test_capped_mode(self, capsys):
        code, out, _ = run_cli(capsys, "walk", "--mode", "capped", "--n", "10000",
                               "--p", "critical", "--H", "20", "--trials", "20000",
                               "--seed", "2")
        assert code == 0
        assert "S_gamma*" in out

    def test_identity_mode(self, capsys):
        code, out, _ = run_cli(capsys, "walk", "--mode", "identity", "--n", "1000",
                               "--p", "critical", "--H", "10", "--trials", "50000",
                               "--seed", "4")
        assert code == 0
        assert "mean_S_gamma" in out and "quadratic" in out

    def test_coupling_mode(self, capsys):
        code, out, _ = run_cli(capsys, "walk", "--mode", "coupling", "--n", "1000",
                               "--p", "critical", "--H", "15", "--trials", "2000",
                               "--seed", "5")
        assert code == 0
        assert "PASS" in out

    def test_two_stage_requires_delta(self, capsys):
        code, _, err = run_cli(capsys, "walk", "--mode", "two-stage", "--n", "100000",
                               "--p", "critical", "--trials", "1000")
        assert code == 1
        assert "delta" in err


class TestOracle:
    def test_enumerate(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--mode", "enumerate", "--n", "3",
                               "--p", "1/3")
        assert code == 0
        assert "8/27" in out and "7/27" in out

    def test_crosscheck(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--mode", "crosscheck", "--n", "40",
                               "--p", "0.03", "--trials", "200", "--seed", "6")
        assert code == 0
        assert "0 mismatches" in out

    def test_sample_to_file(self, capsys, tmp_path):
        path = tmp_path / "graph.txt"
        code, out, _ = run_cli(capsys, "oracle", "--mode", "sample", "--n", "50",
                               "--p", "0.1", "--seed", "7", "--out", str(path))
        assert code == 0
        first = path.read_text().splitlines()[0]
        assert first.startswith("50 ")


class TestVerify:
    def test_quick_suite_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--quick", "--seed", "3",
                               "--threads", "2")
        assert code == 0
        assert "PASS" in out and "FAIL" not in out


class TestUsageErrors:
    def test_unknown_subcommand(self, capsys):
        code, _, err = run_cli(capsys, "frobnicate")
        assert code == 1

    def test_unknown_flag(self, capsys):
        code, _, err = run_cli(capsys, "sweep", "--n", "10", "--frobnicate")
        assert code == 1
        assert "usage" in err

    def test_no_subcommand_prints_help(self, capsys):
        code, out, _ = run_cli(capsys, )
        assert code == 1
        assert "sweep" in out and "verify" in out

    def test_p_and_lambda_exclusive(self, capsys):
        code, _, err = run_cli(capsys, "sweep", "--n", "100", "--p", "0.5",
                               "--lambda", "1.0")
        assert code == 1
