import json

import pytest

from coxsagbi.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_psi_all_backends(capsys):
    code, rep = run_json(capsys, "psi", "--preset", "dp3-generic", "--degree", "3,2,2,2,2,2,2",
                         "--all-backends")
    assert code == 0 and rep["agreement"] == "ok"
    row = rep["results"][0]
    assert [row[b] for b in rep["backends"]] == [4, 4, 4]


def test_json_output_is_deterministic(capsys):
    argv = ("--json", "psi", "--preset", "cayley", "--grid", "r<=2,u<=1", "--all-backends")
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a == b


def test_psi_from_matrix_file(tmp_path, capsys):
    f = tmp_path / "A.json"
    f.write_text(json.dumps({"A": [[1, 0, 1], [0, 1, -1]]}))
    code, rep = run_json(capsys, "psi", "--matrix", str(f), "--degree", "2,1,1,2")
    assert code == 0 and rep["results"][0]["oracle"] == 1


def test_input_errors_exit_1(tmp_path, capsys):
    assert main(["psi", "--matrix", str(tmp_path / "missing.json"), "--degree", "1,1,1"]) == 1
    assert main(["psi", "--preset", "cayley", "--degree", "1,1,1"]) == 1
    capsys.readouterr()


def test_cross_check(capsys):
    code, rep = run_json(capsys, "cross-check", "--preset", "cayley", "--grid", "r<=1,u<=1")
    assert code == 0 and rep["agreement"] == "ok"


def test_facets_from_generators(tmp_path, capsys):
    f = tmp_path / "g.json"
    f.write_text(json.dumps({"generators": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}))
    code, rep = run_json(capsys, "facets", "--generators", str(f))
    assert code == 0 and rep["dim"] == 3 and len(rep["facets"]) == 3
    code, rep = run_json(capsys, "f-vector", "--preset", "type6")
    assert rep["f_vector"] == [16, 80, 180, 216, 148, 58, 12]


def test_gr25_commands(capsys):
    code, rep = run_json(capsys, "classify-gr25", "--metric", "1,1,2,3,2,3,4,1,2,1")
    assert code == 0 and rep["type"] == 6 and rep["sagbi"]
    code, rep = run_json(capsys, "sweep-gr25", "--bound", "3")
    assert code == 0 and rep["classes"] > 0


def test_sagbi_check_exit_codes(capsys):
    assert main(["sagbi-check", "--preset", "type7"]) == 2
    assert main(["sagbi-check", "--preset", "type7", "--allow-failure"]) == 0
    assert main(["sagbi-check", "--preset", "type1"]) == 0
    assert main(["--enable-markov", "sagbi-check", "--preset", "dp2-sagbi"]) == 3
    capsys.readouterr()


def test_tree_psi_and_verlinde(capsys):
    for tree in ("caterpillar:6", "snowflake"):
        code, rep = run_json(capsys, "tree-psi", "--tree", tree, "--degree", "2,1,1,1,1,1,1")
        assert code == 0 and rep["psi"] == 4
    code, rep = run_json(capsys, "verlinde", "--d", "4", "--l", "1/2")
    assert code == 0 and rep["value"] == 4
    assert main(["verlinde", "--d", "3", "--l", "1/2"]) == 1
    capsys.readouterr()


@pytest.mark.parametrize("extra,key,want", [(("--r", "2"), "psi", 6), (("--sum",), "sum_over_r", 15)])
def test_zonotopal(capsys, extra, key, want):
    code, rep = run_json(capsys, "zonotopal", "--v", "1,1,1,1", *extra)
    assert code == 0 and rep[key] == want
