import json

import pytest

from cimqig.cli import RunConfig, main
from cimqig.graphs_dags import cycle_graph, path_graph, quartet_tree, star_graph


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("g,count", [(quartet_tree(), 15), (star_graph(3), 5), (path_graph(7), 13)])
def test_meq_counts(tmp_path, capsys, g, count):
    code, out = run(["meq", write(tmp_path, "g.json", g.to_json())], capsys)
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1 and data["count"] == count


@pytest.mark.parametrize("g,size", [(path_graph(6), 5), (quartet_tree(), 12), (star_graph(4), 0)])
def test_tree_gb(tmp_path, capsys, g, size):
    code, out = run(["tree-gb", write(tmp_path, "t.json", g.to_json())], capsys)
    data = json.loads(out)
    assert code == 0 and data["certified"] and len(data["basis"]) == size


def test_tree_gb_text_uses_z_names(tmp_path, capsys):
    code, out = run(["tree-gb", write(tmp_path, "t.json", path_graph(6).to_json()), "--format", "text"], capsys)
    assert code == 0 and "z_{∅} z_{24} - z_{2} z_{4}" in out


def test_non_tree_exit_2(tmp_path, capsys):
    assert main(["tree-gb", write(tmp_path, "c.json", cycle_graph(5).to_json())]) == 2


def test_parse_error_exit_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert main(["meq", str(path)]) == 2


def test_budget_exit_3(tmp_path):
    assert main(["tree-gb", write(tmp_path, "t.json", path_graph(6).to_json()), "--budget", "10"]) == 3


def test_qi_gb(tmp_path, capsys):
    grid = {"r": 2, "s": 2, "pairs": [[1, 1], [1, 2], [2, 1], [2, 2]]}
    code, out = run(["qi-gb", write(tmp_path, "q.json", grid)], capsys)
    data = json.loads(out)
    assert code == 0 and len(data["binomials"]) == 1 and data["chordal_bipartite"]
    cubic = {"r": 3, "s": 3, "pairs": [[1, 1], [1, 2], [2, 2], [2, 3], [3, 1], [3, 3]]}
    code, out = run(["qi-gb", write(tmp_path, "c.json", cubic)], capsys)
    data = json.loads(out)
    assert len(data["binomials"]) == 1 and not data["chordal_bipartite"]


def test_imset_of_dag(tmp_path, capsys):
    code, out = run(["imset", write(tmp_path, "d.json", {"n": 3, "arcs": [[1, 3], [2, 3]]}), "--format", "text"], capsys)
    assert code == 0 and out.strip() == "{1,3} {2,3} {1,2,3}"


def test_cycle_commands(capsys):
    code, out = run(["cycle", "6", "--verify-only"], capsys)
    assert code == 0 and json.loads(out)["factorization"]
    code, out = run(["cycle", "6", "--force-iterated-order"], capsys)
    data = json.loads(out)
    assert code == 1 and data["status"] == "obstructed"
    assert "z_{24} z_{5} - z_{25} z_{4}" in [o["binomial"] for o in data["obstructions"]]
    code, out = run(["cycle", "6"], capsys)
    data = json.loads(out)
    assert code == (0 if data["status"] == "certified" else 1)


def test_verify_roundtrip_and_determinism(tmp_path, capsys):
    t = write(tmp_path, "t.json", quartet_tree().to_json())
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["tree-gb", t, "--output", str(out1)]) == 0
    assert main(["tree-gb", t, "--output", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    code, out = run(["verify", str(out1), str(out1), "--degree", "3"], capsys)
    assert code == 0 and json.loads(out)["certified"]
    data = json.loads(out1.read_text())
    data["basis_indices"] = data["basis_indices"][1:]
    broken = write(tmp_path, "broken.json", data)
    assert main(["verify", str(out1), broken]) == 1


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(degree_cap=0)
    with pytest.raises(ValueError):
        RunConfig(edge_strategy="random")
