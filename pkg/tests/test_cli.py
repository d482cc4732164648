import hashlib
import json
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from sizeramsey.cli import dispatch
from sizeramsey.codecs import read_graph, write_graph
from sizeramsey.graph import Graph


def _schema(name):
    return json.loads(resources.files("sizeramsey").joinpath("schemas", f"{name}.json").read_text())


def run(tmp_path, *argv):
    log = tmp_path / "results.jsonl"
    code, record = dispatch([*argv, "--log", str(log)])
    if record is not None:
        jsonschema.validate(record, _schema("run_record"))
        if record["result"] is not None:
            jsonschema.validate(record["result"], _schema(record["command"]))
    return code, record


@pytest.fixture
def files(tmp_path):
    for name, g in {"k5": Graph.complete(5), "k6": Graph.complete(6), "c7": Graph.cycle(7),
                    "p10": Graph.path(10), "k88": Graph.complete_bipartite(8, 8)}.items():
        write_graph(g, tmp_path / f"{name}.g6")
    return tmp_path


def test_ramsey(tmp_path, capsys):
    code, rec = run(tmp_path, "ramsey", "--red", "cycle:4", "--blue", "cycle:6", "--max", "12")
    assert code == 0 and capsys.readouterr().out.strip() == "7"
    assert rec["result"]["value"] == 7


def test_ramsey_not_found(tmp_path):
    code, _ = run(tmp_path, "ramsey", "--red", "cycle:4", "--blue", "cycle:4", "--max", "5")
    assert code == 1


def test_arrows_verdicts(files, capsys):
    code, rec = run(files, "arrows", "--in", str(files / "k5.g6"), "--red", "cycle:4", "--blue", "cycle:4")
    assert code == 1 and rec["result"]["verdict"] == "good-coloring"
    out = capsys.readouterr().out
    assert Path(out.split(": ")[1].strip()).exists()
    code, rec = run(files, "arrows", "--in", str(files / "k6.g6"), "--red", "cycle:4", "--blue", "cycle:4",
                    "--emit-cnf", str(files / "k6.cnf"))
    assert code == 0 and (files / "k6.cnf").read_bytes().startswith(b"p cnf 15 ")
    code, rec = run(files, "arrows", "--in", str(files / "k6.g6"), "--red", "cycle:4", "--blue", "cycle:4",
                    "--method", "cnf")
    assert code == 0 and rec["result"]["method"] == "cnf"


def test_exit_codes_for_errors(files):
    assert run(files, "arrows", "--in", str(files / "missing.g6"), "--red", "cycle:4", "--blue", "cycle:4")[0] == 2
    assert run(files, "arrows", "--in", str(files / "k5.g6"), "--red", "cycle:2", "--blue", "cycle:4")[0] == 2
    assert run(files, "arrows", "--in", str(files / "k6.g6"), "--red", "cycle:4", "--blue", "cycle:4",
               "--budget", "1")[0] == 3
    assert dispatch(["bogus"])[0] == 2
    assert dispatch(["ramsey"])[0] == 2


def test_construct_is_deterministic(tmp_path):
    outs = []
    for i in range(2):
        g6, rep = tmp_path / f"g{i}.g6", tmp_path / f"r{i}.json"
        code, rec = run(tmp_path, "construct", "--kind", "u_graph", "--n", "112", "--d", "2", "--out", str(g6),
                        "--report", str(rep))
        assert code == 0
        outs.append((g6.read_bytes(), rep.read_bytes(), json.dumps(rec["result"], sort_keys=True)))
    assert outs[0] == outs[1]
    assert read_graph(tmp_path / "g0.g6").order == 113


@pytest.mark.parametrize("argv", [
    ["--kind", "cycle_blowup", "--n", "64", "--d", "2", "--eta", "0.5"],
    ["--kind", "tree_closure", "--N", "7"],
    ["--kind", "nst", "--n", "33", "--t", "28", "--paths", "5"],
    ["--kind", "random_clique", "--N", "20", "--p", "0.2", "--clique", "3", "--seed", "4"],
])
def test_construct_kinds(tmp_path, argv):
    assert run(tmp_path, "construct", *argv)[0] == 0


def test_construct_ring(files):
    code, rec = run(files, "construct", "--kind", "ring", "--gadget", str(files / "k5.g6"), "--r", "2")
    assert code == 0 and rec["inputs"]


def test_witness_and_verify(files):
    w = files / "w.json"
    code, rec = run(files, "witness", "--mode", "min-degree", "--in", str(files / "c7.g6"), "--n", "6", "--d", "2",
                    "--out", str(w))
    assert code == 0 and rec["result"]["verified"]
    code, rec = run(files, "verify", "--witness", str(w), "--in", str(files / "c7.g6"))
    assert code == 0 and rec["result"]["passed"]
    data = json.loads(w.read_text())
    data["red_edges"] = []
    data["avoided"]["blue"] = "cycle:7"
    w.write_text(json.dumps(data))
    code, rec = run(files, "verify", "--witness", str(w))
    assert code == 1 and rec["result"]["color"] == "blue"
    code, _ = run(files, "witness", "--mode", "decomp", "--in", str(files / "p10.g6"), "--n", "10")
    assert code == 0
    code, _ = run(files, "witness", "--mode", "fact41", "--in", str(files / "k6.g6"), "--n", "5", "--d", "2")
    assert code == 1


def test_extract(tmp_path):
    sys_path, col = tmp_path / "sys.json", tmp_path / "col.json"
    assert run(tmp_path, "construct", "--kind", "nst", "--n", "33", "--t", "28", "--paths", "5",
               "--system-out", str(sys_path))[0] == 0
    col.write_text(json.dumps({"red_edges": [[2 * i, 2 * i + 1] for i in range(14)]}))
    code, rec = run(tmp_path, "extract", "--system", str(sys_path), "--coloring", str(col), "--d", "2")
    assert code == 0 and rec["result"]["length"] == 32
    col.write_text(json.dumps({"red_edges": [[0, 1], [1, 2], [2, 3], [0, 3]]}))
    code, rec = run(tmp_path, "extract", "--system", str(sys_path), "--coloring", str(col), "--d", "2")
    assert code == 1 and rec["result"]["red_cycle"]


def test_pair(files):
    base = ["pair", "--in", str(files / "k88.g6"), "--v1", "0-7", "--v2", "8-15"]
    assert run(files, *base, "--check", "regular", "--eps", "0.1")[0] == 0
    assert run(files, *base, "--check", "good")[0] == 0
    code, rec = run(files, *base, "--p", "1/2")
    assert code == 0 and rec["result"]["density"] == "2"
    code, rec = run(files, "pair", "--in", str(files / "p10.g6"), "--v1", "0,2,4", "--v2", "1,3,5",
                    "--check", "good")
    assert code == 1


def test_bounds(tmp_path):
    assert run(tmp_path, "bounds", "--kind", "interval", "--d", "2..8", "--n-max", "1024")[0] == 0
    code, rec = run(tmp_path, "bounds", "--kind", "cycle_blowup", "--d", "2", "--n", "64,128")
    assert code == 0 and len(rec["result"]["rows"]) == 6


def test_encode_sat(files):
    out = files / "k4.cnf"
    write_graph(Graph.complete(4), files / "k4.g6")
    code, rec = run(files, "encode-sat", "--in", str(files / "k4.g6"), "--red", "cycle:4", "--blue", "cycle:4",
                    "--out", str(out))
    assert code == 0 and out.read_bytes().startswith(b"p cnf 6 6\n")
    assert rec["outputs"][str(out)] == hashlib.sha256(out.read_bytes()).hexdigest()


def test_log_is_appended(tmp_path):
    run(tmp_path, "bounds", "--kind", "interval", "--d", "2", "--n", "128")
    run(tmp_path, "bounds", "--kind", "interval", "--d", "2", "--n", "128")
    lines = (tmp_path / "results.jsonl").read_text().splitlines()
    assert len(lines) == 2
    a, b = (json.loads(x) for x in lines)
    assert a["result"] == b["result"] and a["params"] == b["params"]


def test_env_default(tmp_path, monkeypatch):
    monkeypatch.setenv("SIZERAMSEY_LOG", str(tmp_path / "env.jsonl"))
    code, _ = dispatch(["bounds", "--kind", "interval", "--d", "2", "--n", "128"])
    assert code == 0 and (tmp_path / "env.jsonl").exists()
