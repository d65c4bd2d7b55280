import io as std_io
import json
import subprocess
import sys
from pathlib import Path

from kernelkit.cli import main

GOLDEN = Path(__file__).parent / "golden"

THREE_CYCLE_TEXT = "digraph 3\n0 1\n1 2\n2 0\n"
THREE_VERTEX_CD = "cdigraph 3\n0 1 r\n2 0 b\n"


def run_cli(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        assert monkeypatch is not None
        monkeypatch.setattr(sys, "stdin", std_io.StringIO(stdin))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestOracleCommands:
    def test_find_no_kernel_exits_one(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["oracle", "find", "-", "--format", "json"],
            stdin=THREE_CYCLE_TEXT,
            monkeypatch=monkeypatch,
        )
        assert code == 1
        assert json.loads(out) == {"exists": False, "witness": None}

    def test_find_kernel_exits_zero(self, capsys, tmp_path):
        path = tmp_path / "d.dg"
        path.write_text("digraph 4\n0 1\n1 2\n2 3\n3 0\n")
        code, out, _ = run_cli(capsys, ["oracle", "find", str(path), "--format", "json"])
        assert code == 0
        assert json.loads(out)["witness"] == [0, 2]

    def test_enumerate_counts(self, capsys, tmp_path):
        path = tmp_path / "d.dg"
        path.write_text("digraph 4\n0 1\n1 2\n2 3\n3 0\n")
        code, out, _ = run_cli(
            capsys, ["oracle", "enumerate", str(path), "--format", "json"]
        )
        assert code == 0
        assert json.loads(out) == {"count": 2, "kernels": [[0, 2], [1, 3]]}

    def test_check_kernel(self, capsys, tmp_path):
        path = tmp_path / "d.dg"
        path.write_text("digraph 4\n0 1\n1 2\n2 3\n3 0\n")
        code, out, _ = run_cli(
            capsys, ["oracle", "check", "--kernel", "1,3", str(path)]
        )
        assert code == 0
        code, _, _ = run_cli(
            capsys, ["oracle", "check", "--kernel", "0,1", str(path)]
        )
        assert code == 1

    def test_clique_acyclic_verdict(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["oracle", "clique-acyclic", "-", "--format", "json"],
            stdin=THREE_CYCLE_TEXT,
            monkeypatch=monkeypatch,
        )
        assert code == 1
        assert json.loads(out)["violating_clique"] == [0, 1, 2]

    def test_m_clique_acyclic(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["oracle", "m-clique-acyclic", "-", "--format", "json"],
            stdin="digraph 3\n0 1\n1 2\n2 0\n1 0\n2 1\n",
            monkeypatch=monkeypatch,
        )
        assert code == 0


class TestCounterexamplePipeline:
    def test_c7_into_oracle_find(self, capsys, monkeypatch):
        code, out, _ = run_cli(capsys, ["antihole", "c7"])
        assert code == 0
        code, out2, _ = run_cli(
            capsys,
            ["oracle", "find", "-", "--format", "json"],
            stdin=out,
            monkeypatch=monkeypatch,
        )
        assert code == 1
        assert json.loads(out2) == json.loads(
            (GOLDEN / "c7_oracle_find.json").read_text()
        )


class TestRedblueCommands:
    def test_check_chain(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["redblue", "check", "-", "--format", "json"],
            stdin="cdigraph 3\n0 1 b\n1 2 b\n",
            monkeypatch=monkeypatch,
        )
        assert code == 1
        assert json.loads(out)["violations"] == [
            {"rule": "blue-chain", "vertices": [0, 1, 2]}
        ]

    def test_solve_golden_trace(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["redblue", "solve", "-", "--format", "json"],
            stdin=THREE_VERTEX_CD,
            monkeypatch=monkeypatch,
        )
        assert code == 0
        assert json.loads(out) == json.loads(
            (GOLDEN / "three_vertex_chain_trace.json").read_text()
        )

    def test_solve_then_check_pipeline(self, capsys, monkeypatch, tmp_path):
        inst = tmp_path / "inst.cd"
        code, out, _ = run_cli(
            capsys, ["redblue", "gen", "ssw", "--n", "7", "--seed", "3"]
        )
        assert code == 0
        inst.write_text(out)
        code, solved, _ = run_cli(
            capsys, ["redblue", "solve", str(inst), "--format", "json"]
        )
        assert code == 0
        code, _, _ = run_cli(
            capsys,
            ["oracle", "check", "--kernel", "-", str(inst)],
            stdin=solved,
            monkeypatch=monkeypatch,
        )
        assert code == 0

    def test_solve_fixpoint(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["redblue", "solve-fixpoint", "-", "--format", "json"],
            stdin="cdigraph 3\n0 1 b\n1 2 b\n",
            monkeypatch=monkeypatch,
        )
        assert code == 0
        assert json.loads(out)["result"] == [0, 2]

    def test_conditions_violated_report(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["redblue", "solve", "-", "--format", "json"],
            stdin="cdigraph 3\n0 1 b\n1 2 b\n",
            monkeypatch=monkeypatch,
        )
        assert code == 1
        assert json.loads(out)["satisfied"] is False

    def test_gen_prints_seed(self, capsys):
        code, out, _ = run_cli(
            capsys, ["redblue", "gen", "ssw", "--n", "5", "--seed", "11"]
        )
        assert code == 0
        assert out.startswith("# seed 11\n")


class TestChordsCommands:
    def test_check_failing_cycle(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["chords", "check", "-", "--format", "json"],
            stdin=THREE_CYCLE_TEXT,
            monkeypatch=monkeypatch,
        )
        assert code == 1
        assert json.loads(out)["first_failing"] == [0, 1, 2]

    def test_solve(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["chords", "solve", "-", "--format", "json"],
            stdin="digraph 5\n0 1\n1 2\n2 3\n3 4\n4 0\n4 1\n0 2\n",
            monkeypatch=monkeypatch,
        )
        assert code == 0
        kernel = json.loads(out)["result"]
        assert kernel in ([1, 3], [2, 4])

    def test_budget_exit_code(self, capsys, monkeypatch):
        code, _, err = run_cli(
            capsys,
            ["chords", "check", "-", "--budget", "1"],
            stdin=THREE_CYCLE_TEXT,
            monkeypatch=monkeypatch,
        )
        assert code == 3

    def test_env_budget_override(self, capsys, monkeypatch):
        monkeypatch.setenv("KERNELKIT_BUDGET", "1")
        code, _, _ = run_cli(
            capsys,
            ["chords", "check", "-"],
            stdin=THREE_CYCLE_TEXT,
            monkeypatch=monkeypatch,
        )
        assert code == 3


class TestAntiholeCommands:
    def test_gen(self, capsys):
        code, out, _ = run_cli(capsys, ["antihole", "gen", "--n", "7"])
        assert code == 0
        assert out.startswith("graph 7\n")
        assert len(out.strip().splitlines()) == 15

    def test_verify_simple_c5(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["antihole", "verify-simple", "--n", "5", "--format", "json"],
        )
        assert code == 1
        payload = json.loads(out)
        assert payload["verdict"] == "counterexample"
        assert payload["counterexample"]["kind"] == "orientation"

    def test_search_witness_exhausted_on_k3(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["antihole", "search-witness", "-", "--format", "json"],
            stdin="graph 3\n0 1\n0 2\n1 2\n",
            monkeypatch=monkeypatch,
        )
        assert code == 0
        assert json.loads(out)["status"] == "exhausted"

    def test_search_witness_budget(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["antihole", "search-witness", "--n", "9", "--budget", "10", "--format", "json"],
        )
        assert code == 3
        assert json.loads(out)["status"] == "unknown"

    def test_find_near_sink_rejects_seven(self, capsys, monkeypatch):
        c7_orientation = subprocess_output_c7()
        code, _, err = run_cli(
            capsys,
            ["antihole", "find-near-sink", "-"],
            stdin=c7_orientation,
            monkeypatch=monkeypatch,
        )
        assert code == 2
        assert "at least 9" in err


def subprocess_output_c7() -> str:
    from kernelkit import Orientation, c7_counterexample, gen_antihole
    from kernelkit.io import serialize

    g, _ = gen_antihole(7)
    return serialize(Orientation.from_digraph(g, c7_counterexample()))


class TestPosetCommands:
    def test_max_chain(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["poset", "max-chain", "-", "--format", "json"],
            stdin="poset 3\n0 1\n1 2\n",
            monkeypatch=monkeypatch,
        )
        assert code == 0
        assert json.loads(out) == {"length": 4, "chain": [[], [0], [1], [2]]}

    def test_compare(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["poset", "compare", "-", "--a", "0", "--b", "1", "--format", "json"],
            stdin="poset 2\n0 1\n",
            monkeypatch=monkeypatch,
        )
        assert code == 0
        assert json.loads(out)["relation"] == "less"


class TestGraphConvert:
    def test_text_to_json_roundtrip(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["graph", "convert", "-", "--to", "json"],
            stdin=THREE_CYCLE_TEXT,
            monkeypatch=monkeypatch,
        )
        assert code == 0
        assert json.loads(out)["kind"] == "digraph"
        code, out2, _ = run_cli(
            capsys,
            ["graph", "convert", "-", "--to", "text"],
            stdin=out,
            monkeypatch=monkeypatch,
        )
        assert code == 0
        assert out2 == THREE_CYCLE_TEXT

    def test_dot_export(self, capsys, monkeypatch):
        code, out, _ = run_cli(
            capsys,
            ["graph", "convert", "-", "--to", "dot"],
            stdin=THREE_CYCLE_TEXT,
            monkeypatch=monkeypatch,
        )
        assert code == 0
        assert out.startswith("digraph G {")

    def test_parse_error_exit_code(self, capsys, monkeypatch):
        code, _, err = run_cli(
            capsys,
            ["graph", "convert", "-"],
            stdin="digraph 2\n0 5\n",
            monkeypatch=monkeypatch,
        )
        assert code == 2
        assert "line 2" in err


class TestConsoleEntry:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "kernelkit", "antihole", "c7"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.startswith("digraph 7\n")

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out.json"
        code, out, _ = run_cli(
            capsys,
            ["antihole", "c7", "--format", "json", "--output", str(target)],
        )
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["kind"] == "digraph"
