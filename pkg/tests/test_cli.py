# coding=utf-8
"""命令行：输出内容与退出码"""

import json

import pytest

from randmatch import __version__, theory
from randmatch.__main__ import main
from randmatch.graph import parse_graph_text

SQUARE = "bipartite 2 2\n0 0 1\n0 1 2\n1 0 3\n1 1 1\n"


@pytest.fixture(autouse=True)
def workspace(monkeypatch, tmp_path):
    for key in ("RANDMATCH_CONFIG", "RANDMATCH_SEED", "RANDMATCH_WORKERS", "RANDMATCH_OUTPUT_DIR", "DEBUG"):
        monkeypatch.delenv(key, raising=False)
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _graph_file(tmp_path, text, name="g.txt"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def _table_lines(out):
    return [line for line in out.splitlines() if not line.startswith("# ")]


class TestGenerate:
    def test_two_vertex_gnp(self, capsys):
        code, out, _ = _run(capsys, "generate", "--model", "gnp", "--n", "2", "--p", "1", "--seed", "7", "--quiet")
        assert code == 0
        g = parse_graph_text(out)
        assert g.n == 2
        assert g.edge_count == 1
        assert out.startswith("# artifact: randmatch\n")

    def test_deterministic_files(self, capsys, workspace):
        argv = ["generate", "--model", "gnnp", "--n", "20", "--p", "0.3", "--seed", "3", "--quiet"]
        assert main(argv + ["--out", "a.txt"]) == 0
        assert main(argv + ["--out", "b.txt"]) == 0
        assert (workspace / "a.txt").read_bytes() == (workspace / "b.txt").read_bytes()

    def test_invalid_probability(self, capsys):
        code, _, err = _run(capsys, "generate", "--model", "gnp", "--n", "4", "--p", "1.5", "--quiet")
        assert code == 4
        assert "❌" in err

    def test_special_vertex(self, capsys):
        code, out, _ = _run(capsys, "generate", "--model", "complete_bipartite", "--n", "3",
                            "--special-lambda", "0.5", "--quiet")
        assert code == 0
        g = parse_graph_text(out)
        assert (g.n_left, g.n_right, g.edge_count) == (3, 4, 12)

    def test_usage_error(self, capsys):
        code, _, _ = _run(capsys, "generate", "--n", "4")
        assert code == 4


class TestSolve:
    def test_square_instance(self, capsys, workspace):
        code, out, _ = _run(capsys, "solve", _graph_file(workspace, SQUARE), "--quiet")
        assert code == 0
        assert "cost: 2.0" in out
        assert "certificate: ok" in out

    def test_json_output(self, capsys, workspace):
        code, out, _ = _run(capsys, "solve", _graph_file(workspace, SQUARE), "--json", "--quiet")
        doc = json.loads(out)
        assert doc["cost"] == 2.0
        assert doc["matching"]["pairs"] == [[0, 0], [1, 1]]
        assert doc["certificate"]["valid"] is True

    def test_sequence_mode(self, capsys, workspace):
        code, out, _ = _run(capsys, "generate", "--model", "complete_bipartite", "--n", "4", "--quiet")
        path = _graph_file(workspace, out)
        code, out, _ = _run(capsys, "solve", path, "--mode", "sequence", "--rmax", "3", "--json", "--quiet")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["costs"]) == 3
        assert all(inc >= 0 for inc in doc["increments"])
        assert doc["costs"] == sorted(doc["costs"])

    def test_infeasible(self, capsys, workspace):
        path = _graph_file(workspace, "bipartite 2 2\n0 0 1\n1 0 1\n")
        code, _, err = _run(capsys, "solve", path, "--quiet")
        assert code == 2
        assert "❌ [NO_PERFECT_MATCHING]" in err

    def test_infeasible_sequence_reports_step(self, capsys, workspace):
        path = _graph_file(workspace, "bipartite 2 2\n0 0 1\n1 0 1\n")
        code, _, err = _run(capsys, "solve", path, "--mode", "sequence", "--quiet")
        assert code == 2
        assert "❌ [NO_MATCHING]" in err

    def test_json_output_carries_provenance(self, capsys, workspace):
        path = _graph_file(workspace, "bipartite 1 1\n0 0 1\n")
        code, out, _ = _run(capsys, "solve", path, "--json", "--seed", "3", "--quiet")
        assert code == 0
        doc = json.loads(out)
        assert doc["artifact"] == "randmatch"
        assert doc["version"] == __version__
        assert doc["config"]["command"] == "solve"
        assert doc["config"]["mode"] == "assignment"
        assert doc["config"]["seed"] == 3
        assert doc["generated_at"]

    def test_text_output_to_file_carries_provenance(self, capsys, workspace):
        path = _graph_file(workspace, SQUARE)
        code, _, _ = _run(capsys, "solve", path, "--out", "res.txt", "--quiet")
        assert code == 0
        text = (workspace / "res.txt").read_text(encoding="utf-8")
        assert text.startswith("# artifact: randmatch\n")
        assert f"# version: {__version__}\n" in text
        assert "cost: 2.0" in text

    def test_parse_error(self, capsys, workspace):
        code, _, err = _run(capsys, "solve", _graph_file(workspace, "bipartite 2 2\n0 5 1\n"), "--quiet")
        assert code == 3
        assert "2" in err

    def test_odd_general(self, capsys, workspace):
        code, _, _ = _run(capsys, "solve", _graph_file(workspace, "general 3\n0 1 1\n"), "--quiet")
        assert code == 4

    def test_mode_mismatch(self, capsys, workspace):
        code, _, _ = _run(capsys, "solve", _graph_file(workspace, SQUARE), "--mode", "general", "--quiet")
        assert code == 4

    def test_general_instance(self, capsys, workspace):
        path = _graph_file(workspace, "general 4\n0 1 1\n1 2 1\n0 2 1\n2 3 5\n")
        code, out, _ = _run(capsys, "solve", path, "--quiet")
        assert code == 0
        assert "cost: 6.0" in out


class TestExperiment:
    def test_run_reproduce_and_plot(self, capsys, workspace):
        code, out, _ = _run(capsys, "experiment", "parisi", "--n", "3", "--trials", "6", "--seed", "1",
                            "--out-dir", "out", "--quiet")
        assert code == 0
        assert "theory=1.3611111" in out
        first = workspace / "out" / "parisi.jsonl"
        assert first.exists()
        assert (workspace / "out" / "parisi.summary.json").exists()

        # 按结果文件中嵌入的配置重跑
        code, _, _ = _run(capsys, "experiment", str(first), "--out-dir", "out", "--stem", "again", "--quiet")
        assert code == 0
        strip = lambda path: [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]
        original, rerun = strip(first), strip(workspace / "out" / "again.jsonl")
        original[0].pop("generated_at")
        rerun[0].pop("generated_at")
        assert original == rerun

        code, out, _ = _run(capsys, "plotdata", "convergence", "out/parisi.summary.json", "--quiet")
        assert code == 0
        assert out.startswith("# artifact: randmatch\n")
        lines = _table_lines(out)
        assert lines[0] == "n,p,p_mean,p_se,theory,rel_dev"
        assert lines[1].startswith("3,1.0,")

    def test_config_file(self, capsys, workspace):
        (workspace / "exp.yaml").write_text(
            "experiment:\n"
            "  model: {model: complete_bipartite, n: 4}\n"
            "  trials: 5\n"
            "  quantity: membership\n"
            "  params: {r: 2}\n"
            "format: csv\n",
            encoding="utf-8",
        )
        code, out, _ = _run(capsys, "experiment", "exp.yaml", "--out-dir", "out", "--quiet")
        assert code == 0
        assert (workspace / "out" / "exp.csv").exists()
        assert out.startswith("member_0:")

    def test_unknown_experiment(self, capsys):
        code, _, err = _run(capsys, "experiment", "theorem9", "--quiet")
        assert code == 4
        assert "parisi" in err

    def test_missing_config_file(self, capsys):
        code, _, _ = _run(capsys, "experiment", "parisi", "--config", "missing.yaml", "--quiet")
        assert code == 4

    def test_plotdata_without_inputs(self, capsys):
        code, out, _ = _run(capsys, "plotdata", "increments", "--quiet")
        assert code == 0
        assert _table_lines(out) == ["r,empirical,se,theory,z"]
        assert any(line.startswith("# config: ") for line in out.splitlines())


class TestDiagnoseAndTheory:
    def test_diagnose_bipartite(self, capsys):
        code, out, _ = _run(capsys, "diagnose", "--model", "complete_bipartite", "--n", "30",
                            "--check-augmenting", "--pair-samples", "20", "--quiet")
        assert code == 0
        doc = json.loads(out)
        assert doc["r"] == 28
        assert doc["diameter"]["pairs"] == 20
        assert doc["augmenting_check"]["consistent"] is True
        assert doc["max_edge"]["p"] == 1.0

    def test_diagnose_general(self, capsys):
        code, out, _ = _run(capsys, "diagnose", "--model", "complete", "--n", "10", "--quiet")
        assert code == 0
        doc = json.loads(out)
        assert doc["r"] == 5
        assert doc["diagnostics"]["k"] == 20

    def test_diagnose_needs_instance(self, capsys):
        code, _, _ = _run(capsys, "diagnose", "--quiet")
        assert code == 4

    def test_theory(self, capsys):
        code, out, _ = _run(capsys, "theory", "--n", "20", "--r", "10", "--lambda", "0.01", "--quiet")
        assert code == 0
        values = json.loads(out)
        assert values["pnr"] == pytest.approx(0.6687714, abs=1e-7)
        assert values["zeta2"] == pytest.approx(1.6449341, abs=1e-7)
        assert values["pnr_finite_lambda"] == pytest.approx(values["pnr"], rel=0.05)

    def test_theory_parisi(self, capsys):
        _, out, _ = _run(capsys, "theory", "--n", "10", "--quiet")
        assert json.loads(out)["parisi_sum"] == pytest.approx(1.5497677, abs=1e-7)

    def test_theory_carries_provenance(self, capsys):
        _, out, _ = _run(capsys, "theory", "--n", "6", "--quiet")
        doc = json.loads(out)
        assert doc["config"] == {"command": "theory", "seed": 0, "n": 6, "p": 1.0, "r": None,
                                 "lambda": None, "tolerance": 1e-8}
        assert doc["version"] == __version__


class TestInternalErrors:
    def test_unexpected_exception_exits_1(self, capsys, monkeypatch):
        def broken(n):
            raise RuntimeError("boom")

        monkeypatch.setattr(theory, "parisi_sum", broken)
        code, out, err = _run(capsys, "theory", "--n", "4", "--quiet")
        assert code == 1
        assert out == ""
        assert "❌" in err
        assert "boom" in err

    def test_unwritable_output_exits_1(self, capsys, workspace):
        (workspace / "taken").mkdir()
        code, _, err = _run(capsys, "theory", "--n", "4", "--out", "taken", "--quiet")
        assert code == 1
        assert "❌" in err
