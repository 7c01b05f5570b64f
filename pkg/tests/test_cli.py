import json

import pytest

from knotsquares import diagrams as dg
from knotsquares.cli import main
from knotsquares.plangraph import PlanarMultigraph


@pytest.fixture
def fig8(tmp_path):
    path = tmp_path / "fig8.json"
    path.write_text(dg.compile_rational([2, 2]).to_json())
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_twosquares(capsys):
    code, out, _ = run(capsys, "--json", "twosquares", "325")
    assert code == 0
    data = json.loads(out)
    assert data["r2"] == 6 and data["r2_0"] == 4 and [1, 18] in data["decompositions"]
    code, out, _ = run(capsys, "--json", "twosquares", "325", "--coprime")
    assert json.loads(out)["decompositions"] == [[1, 18], [6, 17]]


def test_realize_ok(capsys):
    code, out, _ = run(capsys, "--json", "realize", "29")
    data = json.loads(out)
    assert code == 0 and data["kind"] == "Rational" and data["claimed_det"] == 29
    assert set(data["transcript"]["methods"].values()) == {29}
    assert dg.goeritz_det(dg.LinkDiagram.from_dict(data["diagram"])) == 29


def test_realize_77(capsys):
    code, out, err = run(capsys, "realize", "77")
    assert code == 1 and out == ""
    assert "not a sum of two squares, witness 7" in err


@pytest.mark.parametrize("argv, code", [
    (["realize", "--square", "49"], 1),
    (["realize", "--square", "9"], 1),
    (["realize", "--square", "1"], 1),
    (["realize", "--rational", "49"], 1),
    (["realize", "4"], 2),
    (["realize", "--square", "15"], 2),
    (["realize", "abc"], 2),
    (["realize", "0"], 2),
])
def test_realize_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_realize_square(capsys):
    code, out, _ = run(capsys, "--json", "realize", "--square", "121")
    assert code == 0 and json.loads(out)["payload"]["catalog"] == "10_123"


def test_det(capsys, fig8):
    code, out, _ = run(capsys, "det", "--pd", fig8, "--method", "all")
    assert code == 0 and out.split()[0] == "5"
    code, out, _ = run(capsys, "--json", "det", "--pd", fig8)
    assert json.loads(out)["methods"] == {"goeritz": 5, "states": 5, "trees": 5}


def test_det_invalid(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"crossings": [{"id": 4, "arcs": [0, 1, 2, 3]}]}))
    code, _, err = run(capsys, "det", "--pd", str(bad))
    assert code == 2 and "crossing 4" in err
    code, _, _ = run(capsys, "det", "--pd", str(tmp_path / "missing.json"))
    assert code == 2


def test_det_budget(capsys, tmp_path):
    path = tmp_path / "big.json"
    path.write_text(dg.compile_rational([25]).to_json())
    assert run(capsys, "det", "--pd", str(path), "--method", "states")[0] == 1


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--det", "15", "--count")
    assert (code, out.strip()) == (0, "3")
    code, out, _ = run(capsys, "census", "--det", "65", "--achiral", "--count")
    assert out.strip() == "2"
    code, out, _ = run(capsys, "census", "--det", "15", "--list", "--format", "csv")
    assert out.splitlines()[0] == "p,representatives,achiral" and len(out.splitlines()) == 4
    code, out, _ = run(capsys, "census", "--det", "5", "--list")
    assert json.loads(out)[1]["representatives"] == [2, 3]
    assert run(capsys, "census", "--det", "8")[0] == 2


def test_selfdual(capsys, tmp_path):
    code, out, _ = run(capsys, "selfdual", "29")
    data = json.loads(out)
    assert code == 0 and data["spanning_trees"] == 29 and data["self_dual"]
    path = tmp_path / "g.json"
    path.write_text(json.dumps(data["graph"]))
    code, out, _ = run(capsys, "--json", "selfdual", "--check", str(path))
    assert code == 0 and json.loads(out)["tree_bound_ok"]
    assert run(capsys, "selfdual", "77")[0] == 1
    assert run(capsys, "selfdual")[0] == 2


def test_selfdual_check_negative(capsys, tmp_path):
    c3 = PlanarMultigraph(3, ((0, 1), (1, 2), (2, 0)), ((0, 5), (1, 2), (3, 4)))
    path = tmp_path / "c3.json"
    path.write_text(c3.to_json())
    code, out, _ = run(capsys, "selfdual", "--check", str(path))
    assert code == 1 and json.loads(out)["self_dual"] is False
    path.write_text('{"vertices": 2, "edges": [[0, 1]]}')
    assert run(capsys, "selfdual", "--check", str(path))[0] == 2


def test_alex(capsys):
    code, out, _ = run(capsys, "alex", "5", "2")
    assert code == 0 and out.splitlines()[0] == "-1:1 3:0 -1:-1"
    code, out, _ = run(capsys, "--json", "alex", "9", "2")
    data = json.loads(out)
    assert data["polynomial"] == "-2:1 5:0 -2:-1" and data["leading_coeff"] == data["formula_leading_coeff"] == -2
    assert run(capsys, "alex", "9", "3")[0] == 2


def test_chirality(capsys):
    code, out, _ = run(capsys, "chirality", "--det", "21")
    assert code == 0 and "nine" in out
    code, out, _ = run(capsys, "--json", "chirality", "--signed", "-7")
    assert json.loads(out)["verdict"] == "ChiralCertified"
    assert run(capsys, "chirality")[0] == 2
    assert run(capsys, "chirality", "--det", "10")[0] == 2


def test_bounds(capsys, fig8, tmp_path):
    code, out, _ = run(capsys, "--json", "bounds", "--pd", fig8)
    data = json.loads(out)
    assert code == 0 and data["crowell"] and data["achiral_bound"]
    kink = tmp_path / "kink.json"
    kink.write_text(dg.compile_rational([1]).to_json())
    assert run(capsys, "bounds", "--pd", str(kink))[0] == 2


def test_deterministic(capsys):
    assert run(capsys, "--json", "realize", "1105") == run(capsys, "--json", "realize", "1105")
