import json
import pathlib

import pytest

from mpcskit.cli import main
from mpcskit.generators import gen_fig5
from mpcskit.graphio import write_edge_list

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture()
def fig5_path(tmp_path):
    p = tmp_path / "fig5.txt"
    p.write_text(write_edge_list(gen_fig5()))
    return str(p)


def test_analyze_human(fig5_path, capsys):
    assert main(["analyze", fig5_path]) == 0
    out = capsys.readouterr().out
    assert "n_l=2" in out and "n_s=15" in out
    assert "{6,7}" in out
    assert "complete=yes" in out
    assert "certified: yes" in out


def test_analyze_tree_mode(fig5_path, capsys):
    assert main(["analyze", fig5_path, "--mode", "tree"]) == 0
    out = capsys.readouterr().out
    assert "mode: tree" in out
    assert out.count("lambda=1") == 3


def test_analyze_json_round_trip(fig5_path, capsys):
    assert main(["analyze", fig5_path, "--json"]) == 0
    raw = capsys.readouterr().out
    doc = json.loads(raw)
    assert doc["version"] == "v1"
    assert doc["graph"]["n"] == 15
    assert len(doc["graph"]["edges"]) == 14
    sets = sorted(m["set"] for m in doc["mpcs"])
    assert sets[0] == [1, 3, 4, 6, 9, 10, 12, 14]
    assert sets[2] == [6, 7]
    assert doc["leaders"]["n_l"] == 2
    assert doc["leaders"]["n_s"] == 15
    assert doc["leaders"]["N1"] == {"num": 2, "den": 15}
    assert doc["leaders"]["min_sets_truncated"] is False
    assert doc["certified"] is True
    # stable serialization: parse and re-dump is byte-identical
    assert json.dumps(doc, indent=2, sort_keys=True) == raw.strip()


def test_analyze_trace_matches_golden(fig5_path, capsys):
    assert main(["analyze", fig5_path, "--mode", "tree", "--trace"]) == 0
    out = capsys.readouterr().out
    _, _, tail = out.partition("# trace\n")
    assert tail == (DATA / "fig5_trace.csv").read_text()


def test_analyze_exhaustive(fig5_path, capsys):
    assert main(["analyze", fig5_path, "--mode", "exhaustive"]) == 0
    out = capsys.readouterr().out
    assert "mode: exhaustive" in out and "n_l=2" in out


def test_analyze_csv(fig5_path, capsys):
    assert main(["analyze", fig5_path, "--csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "set,lambda,provenance"
    assert any(line.startswith("6 7,") for line in lines[1:])


def test_check_controllable(fig5_path, capsys):
    assert main(["check", fig5_path, "--leaders", "6,7"]) == 0
    assert capsys.readouterr().out.strip() == "controllable"


def test_check_obstruction(fig5_path, capsys):
    assert main(["check", fig5_path, "--leaders", "6,5"]) == 0
    out = capsys.readouterr().out
    assert "uncontrollable" in out
    assert "set={1,3,4,7,9,10,12,14}" in out


def test_check_json(fig5_path, capsys):
    assert main(["check", fig5_path, "--leaders", "6,5", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["controllable"] is False
    assert doc["obstruction"]["set"] == [1, 3, 4, 7, 9, 10, 12, 14]
    w = doc["obstruction"]["witness"]
    assert w[4] == 0.0 and w[5] == 0.0  # vanishes outside the set


def test_gen_output(tmp_path, capsys):
    out_file = tmp_path / "c2.txt"
    assert main(["gen", "cayley", "-g", "2", "-o", str(out_file)]) == 0
    text = out_file.read_text()
    assert text.splitlines()[0] == "n 10"
    assert main(["gen", "fig1"]) == 0
    assert "n 7" in capsys.readouterr().out


def test_gen_dot(capsys):
    assert main(["gen", "star", "-n", "4", "--format", "dot"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("graph G {") and "1 -- 4;" in out


def test_report_csv(capsys):
    assert main(["report", "cayley", "--gmax", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "family,g,n,n_l,n_s,N1,N2,certified,complete,flags"
    assert lines[1].startswith("cayley,1,4,2,3,1/2,")
    assert lines[3].startswith("cayley,3,22,6,64,3/11,8.5776e-04,true,true")


def test_report_dsfn_json(capsys):
    assert main(["report", "dsfn", "--gmax", "2", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    rows = doc["rows"]
    assert rows[0]["n_l"] == 1 and rows[1]["n_l"] == 3
    assert rows[1]["N1"] == {"num": 1, "den": 3}
    assert all(r["certified"] for r in rows)


def test_report_gate(capsys):
    assert main(["report", "cayley", "--gmax", "6"]) == 2
    assert main(["report", "cayley", "--gmax", "6", "--uncertified"]) == 0
    out = capsys.readouterr()
    assert "cayley,6,190,51," in out.out


def test_exit_usage_on_bad_args(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1


def test_exit_input_on_bad_file(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("1 2 3\n")
    assert main(["analyze", str(p)]) == 2
    assert main(["analyze", str(tmp_path / "missing.txt")]) == 2


def test_exit_input_on_disconnected(tmp_path, capsys):
    p = tmp_path / "two.txt"
    p.write_text("n 4\n1 2\n3 4\n")
    assert main(["analyze", str(p)]) == 2
    assert main(["analyze", str(p), "--per-component"]) == 0
    out = capsys.readouterr().out
    assert "component 1" in out and "component 2" in out


def test_exit_numeric_on_overflow(tmp_path, capsys):
    from mpcskit.generators import gen_cayley
    from mpcskit.graphio import write_edge_list as wel

    p = tmp_path / "c5.txt"
    p.write_text(wel(gen_cayley(5)))
    # exhaustive mode without a size cap is refused for n=94 (input error)
    assert main(["analyze", str(p), "--mode", "exhaustive"]) == 2
