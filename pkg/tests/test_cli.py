import json
import subprocess
import sys

import pytest

from pairwalk import graph6
from pairwalk.cli import main, parse_graph, parse_state
from pairwalk.graphs import cycle, path
from pairwalk.transfer import Form, QuantumState


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestParsing:
    def test_named_and_graph6(self):
        assert parse_graph("named:cycle:4") == cycle(4)
        assert parse_graph("Bg") == path(3)

    def test_states(self):
        assert parse_state("0,3", Form.PAIR) == QuantumState.pair(0, 3)
        assert parse_state("2", Form.VERTEX) == QuantumState.vertex(2)


class TestAnalyze:
    def test_figure1(self, capsys):
        code, out, _ = run(capsys, "analyze", "--graph", "named:figure1", "--state", "0,3")
        assert code == 0
        report = json.loads(out)
        assert report["verdict"] == "pst"
        assert report["time"]["exact"] == "pi/2"
        assert {report["partner"]["a"], report["partner"]["b"]} == {4, 5}
        assert [s["exact"] for s in report["support"]] == ["2", "4"]

    def test_all_candidates(self, capsys):
        code, out, _ = run(capsys, "analyze", "--graph", "named:path:3", "--hamiltonian", "adjacency")
        assert code == 0
        reports = [json.loads(line) for line in out.splitlines()]
        assert [r["state"]["a"] for r in reports] == [0, 1, 2]
        assert [r["verdict"] for r in reports] == ["pst", "periodic", "pst"]

    @pytest.mark.parametrize("argv", [
        ["--graph", "named:path:3", "--state", "0,7"],
        ["--graph", "named:nosuch"],
        ["--graph", "!!!"],
        ["--graph", "named:path:3", "--state", "x"],
        ["--graph", "named:path:3", "--form", "vertex"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, _, err = run(capsys, "analyze", *argv)
        assert code == 1 and "error" in err

    def test_missing_required(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["analyze"])
        assert exc.value.code == 1

    def test_experimental_flag(self, capsys):
        code, out, _ = run(capsys, "analyze", "--graph", "named:path:3", "--form", "vertex",
                           "--state", "0", "--experimental")
        assert code == 0 and json.loads(out)["verdict"] in {"pst", "periodic", "none"}


class TestScan:
    def test_enumerated(self, capsys):
        code, out, _ = run(capsys, "scan", "--n", "5")
        assert code == 0
        assert out.splitlines()[1] == "5,laplacian,pair,edge_any,21,6,18"

    def test_input_file_with_bad_line(self, capsys, tmp_path):
        src = tmp_path / "g.g6"
        src.write_text("Cl\nnope\nBg\n")
        findings = tmp_path / "f.jsonl"
        code, out, err = run(capsys, "scan", "--input", str(src), "--findings", str(findings))
        assert code == 2
        assert f"{src}:2:" in err
        assert out.splitlines()[1:] == ["3,laplacian,pair,edge_any,1,1,1", "4,laplacian,pair,edge_any,1,1,1"]
        records = [json.loads(line) for line in findings.read_text().splitlines()]
        assert [r["graph"] for r in records] == ["Bg", "Cl"]

    def test_needs_source(self, capsys):
        assert run(capsys, "scan")[0] == 1

    def test_convention_and_hamiltonian(self, capsys):
        code, out, _ = run(capsys, "scan", "--n", "4", "--hamiltonian", "signless", "--convention", "all-pairs")
        assert code == 0
        assert out.splitlines()[1].startswith("4,signless,plus,all_pairs,6,")


class TestOtherCommands:
    def test_enumerate(self, capsys, tmp_path):
        out = tmp_path / "g6.txt"
        code, _, err = run(capsys, "enumerate", "--n", "5", "--connected-only", "-o", str(out))
        assert code == 0 and "21" in err
        lines = out.read_text().split()
        assert len(lines) == 21
        assert all(graph6.decode(s).is_connected() for s in lines)

    def test_curve(self, capsys, tmp_path):
        out = tmp_path / "c.csv"
        code, _, _ = run(capsys, "curve", "--graph", "named:path:3", "--state", "0,1", "--state2", "1,2",
                         "--tmax", "3.141592653589793", "--steps", "3", "-o", str(out))
        assert code == 0
        rows = out.read_text().splitlines()
        assert rows[0] == "t,fidelity"
        assert float(rows[2].split(",")[1]) == pytest.approx(1.0, abs=1e-9)

    def test_trees(self, capsys):
        code, out, _ = run(capsys, "trees", "--max-n", "4")
        assert code == 0
        pst = [line for line in out.splitlines() if ",pst," in line]
        assert pst == ['3,BW,pst,"pair(0,2)","pair(1,2)",pi/2',
                       '4,CL,pst,"pair(0,3)","pair(1,2)",pi/sqrt(2)']


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pairwalk.cli", "analyze", "--graph", "named:cycle:4",
                           "--state", "0,1"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["time"]["exact"] == "pi/2"
