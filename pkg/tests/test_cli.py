import json
import subprocess
import sys

import pytest

from matchcert import compare_dual_policies, figure2_instance
from matchcert.cli import main

P4_TEXT = "p edge 4 3\ne 1 2 5\ne 2 3 1\ne 3 4 5\n"
TRIANGLE_TEXT = "p edge 3 3\ne 1 2 1\ne 1 3 2\ne 2 3 3\n"
NEGATIVE_TEXT = "p edge 3 2\ne 1 2 -5\ne 2 3 1\n"


@pytest.fixture
def p4_file(tmp_path):
    path = tmp_path / "p4.dimacs"
    path.write_text(P4_TEXT)
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolveCommand:
    def test_solve_verify_oracle(self, capsys, p4_file):
        code, out, err = run_cli(capsys, "solve", p4_file,
                                 "--verify", "--oracle-check")
        assert code == 0
        data = json.loads(out)
        assert data["status"] == "perfect-found"
        assert [s["weight"] for s in data["snapshots"]] == ["0", "1", "10"]
        assert data["verification"]["pass"] is True
        assert data["oracle_check"]["pass"] is True
        assert "perfect-found" in err

    def test_snapshots_file(self, capsys, tmp_path, p4_file):
        out_path = tmp_path / "run.json"
        code, out, _ = run_cli(capsys, "solve", p4_file,
                               "--snapshots", str(out_path))
        assert code == 0
        assert out_path.read_text() == out

    def test_perfect_infeasible_exit(self, capsys, tmp_path):
        path = tmp_path / "tri.dimacs"
        path.write_text(TRIANGLE_TEXT)
        code, out, _ = run_cli(capsys, "solve", str(path), "--mode", "perfect")
        assert code == 1
        assert json.loads(out)["status"] == "no-perfect-matching"

    def test_negative_weights_normalized(self, capsys, tmp_path):
        path = tmp_path / "neg.dimacs"
        path.write_text(NEGATIVE_TEXT)
        code, out, _ = run_cli(capsys, "solve", str(path), "--oracle-check")
        assert code == 0
        data = json.loads(out)
        assert data["normalization"]["shift"] == "5"
        assert data["oracle_check"]["pass"] is True

    def test_scripted_policy_from_file(self, capsys, tmp_path):
        fig2_path = tmp_path / "fig2.dimacs"
        from matchcert import format_instance
        fig2_path.write_text(format_instance(figure2_instance()))
        amounts = tmp_path / "amounts.txt"
        amounts.write_text("1, 1, 3\n")
        code, out, _ = run_cli(capsys, "solve", str(fig2_path),
                               "--policy", f"scripted={amounts}")
        assert code == 0
        data = json.loads(out)
        assert data["snapshots"][-1]["weight"] == "4"

    def test_beta_option(self, capsys, p4_file):
        code, out, _ = run_cli(capsys, "solve", p4_file, "--beta", "1/2")
        assert code == 0
        assert json.loads(out)["beta"] == "1/2"

    def test_input_error_exit(self, capsys, tmp_path):
        path = tmp_path / "bad.dimacs"
        path.write_text("p edge 2 1\ne 1 1 0\n")
        code, _, err = run_cli(capsys, "solve", str(path))
        assert code == 3
        assert "self-loop" in err

    def test_missing_file(self, capsys):
        code, _, _ = run_cli(capsys, "solve", "/nonexistent/g.dimacs")
        assert code == 3

    def test_byte_identical_output(self, capsys, p4_file):
        _, out1, _ = run_cli(capsys, "solve", p4_file, "--verify")
        _, out2, _ = run_cli(capsys, "solve", p4_file, "--verify")
        assert out1 == out2


class TestVerifyCommand:
    def test_round_trip(self, capsys, tmp_path, p4_file):
        run_path = tmp_path / "run.json"
        run_cli(capsys, "solve", p4_file, "--snapshots", str(run_path))
        code, out, _ = run_cli(capsys, "verify", p4_file, "--run", str(run_path))
        assert code == 0
        assert json.loads(out)["pass"] is True

    def test_corrupted_run_fails(self, capsys, tmp_path, p4_file):
        run_path = tmp_path / "run.json"
        run_cli(capsys, "solve", p4_file, "--snapshots", str(run_path))
        data = json.loads(run_path.read_text())
        data["snapshots"][1]["weight"] = "2"
        run_path.write_text(json.dumps(data))
        code, out, _ = run_cli(capsys, "verify", p4_file, "--run", str(run_path))
        assert code == 2
        assert json.loads(out)["pass"] is False

    def test_normalization_shift_respected(self, capsys, tmp_path):
        path = tmp_path / "neg.dimacs"
        path.write_text(NEGATIVE_TEXT)
        run_path = tmp_path / "run.json"
        run_cli(capsys, "solve", str(path), "--snapshots", str(run_path))
        code, out, _ = run_cli(capsys, "verify", str(path), "--run", str(run_path))
        assert code == 0
        assert json.loads(out)["pass"] is True


class TestCounterexampleCommand:
    def test_default_amounts(self, capsys):
        code, out, err = run_cli(capsys, "counterexample")
        assert code == 0
        data = json.loads(out)
        assert data["divergence"] == 4
        assert data["uniform"][-1] == {"k": 4, "weight": "3"}
        assert data["scripted"][-1] == {"k": 4, "weight": "4"}
        assert data["oracle_minima"][4] == "3"
        assert "divergence at k=4" in err

    def test_uniform_equivalent_amounts(self, capsys):
        code, out, _ = run_cli(capsys, "counterexample", "--amounts", "1,1,1")
        assert code == 0
        data = json.loads(out)
        assert data["divergence"] is None
        assert data["scripted"][-1] == {"k": 4, "weight": "3"}

    def test_infeasible_amounts_reported_not_fatal(self, capsys):
        code, out, _ = run_cli(capsys, "counterexample", "--amounts", "9,0,0")
        assert code == 0
        data = json.loads(out)
        assert data["scripted"] is None
        assert data["scripted_error"]
        assert data["uniform"][-1] == {"k": 4, "weight": "3"}


class TestReduceCommand:
    def test_doubled_output_parses(self, capsys, p4_file):
        code, out, _ = run_cli(capsys, "reduce", p4_file, "--doubled")
        assert code == 0
        from matchcert import parse_instance
        doubled = parse_instance(out)
        assert doubled.node_count == 8
        assert len(doubled.edges) == 10

    def test_auxiliary(self, capsys, tmp_path, p4_file):
        run_path = tmp_path / "run.json"
        run_cli(capsys, "solve", p4_file, "--snapshots", str(run_path))
        code, out, _ = run_cli(capsys, "reduce", p4_file,
                               "--auxiliary", f"{run_path}:1")
        assert code == 0
        data = json.loads(out)
        assert data["check"]["pass"] is True
        assert data["exposed"] == [1, 4]
        assert [m for m in data["matching"]] == [[1, 5], [2, 3], [4, 6]]
        from matchcert import parse_instance
        aux = parse_instance(data["instance"])
        assert aux.node_count == 6

    def test_auxiliary_missing_snapshot(self, capsys, tmp_path, p4_file):
        run_path = tmp_path / "run.json"
        run_cli(capsys, "solve", p4_file, "--snapshots", str(run_path))
        code, _, err = run_cli(capsys, "reduce", p4_file,
                               "--auxiliary", f"{run_path}:9")
        assert code == 3
        assert "no snapshot" in err


class TestScenarioReport:
    def test_p4_single_amount(self, p4):
        report = compare_dual_policies(p4, [1])
        assert report.divergence is None
        assert report.scripted_error is None
        assert report.scripted[-1] == (2, 10)
        assert report.oracle_minima == (0, 1, 10)

    def test_divergence_iff_suboptimal(self):
        report = compare_dual_policies(figure2_instance(), [1, 1, 3])
        scripted = dict(report.scripted)
        suboptimal = [k for k, w in scripted.items()
                      if w > report.oracle_minima[k]]
        assert report.divergence == min(suboptimal)


def test_module_entry_point(tmp_path):
    path = tmp_path / "p4.dimacs"
    path.write_text(P4_TEXT)
    proc = subprocess.run(
        [sys.executable, "-m", "matchcert", "solve", str(path), "--verify"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "perfect-found"
