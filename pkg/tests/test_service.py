import json

import pytest
from fastapi.testclient import TestClient

from artifact.app import app
from artifact.cli import main
from artifact.graphs import standard_graph

client = TestClient(app)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_graph_info(capsys):
    code, out, _ = run_cli(capsys, "graph", "info", "std:1,1")
    assert code == 0
    data = json.loads(out)
    assert (data["genus"], data["boundary"], data["edges"]) == (1, 2, 4)


def test_graph_reduce_from_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(standard_graph(0, 2).to_json()))
    code, out, _ = run_cli(capsys, "graph", "reduce", str(path))
    assert code == 0
    assert json.loads(out)["standard"] == standard_graph(0, 2).to_json()


def test_graph_sum(capsys):
    code, out, _ = run_cli(capsys, "graph", "sum", "std:1,0", "std:1,0")
    assert code == 0 and json.loads(out)["genus"] == 2


def test_hopf_subcommands(capsys):
    code, out, _ = run_cli(capsys, "hopf", "check", "--builtin", "taft:3")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run_cli(capsys, "hopf", "pairs", "--builtin", "sweedler")
    assert [p["p"] for p in json.loads(out)["pairs"]] == ["h", "1"]
    code, out, _ = run_cli(capsys, "hopf", "integrals", "--builtin", "sweedler")
    assert json.loads(out)["distinguished_grouplike"] == "h"


def test_hopf_file(capsys, tmp_path):
    from artifact.hopf import builtin
    path = tmp_path / "h.json"
    path.write_text(json.dumps(builtin("group:Z3").to_json()))
    code, out, _ = run_cli(capsys, "hopf", "check", str(path))
    assert code == 0 and json.loads(out)["semisimple"]


def test_lattice_verify_prints_seed(capsys):
    code, out, _ = run_cli(capsys, "lattice", "verify", "--hopf", "builtin:sweedler",
                           "--graph", "std:1,0", "--seed", "5")
    data = json.loads(out)
    assert code == 0 and data["ok"] and data["seed"] == 5


def test_lattice_move(capsys):
    code, out, _ = run_cli(capsys, "lattice", "move", "--hopf", "sweedler", "--graph", "std:1,1",
                           "--word", '[["reverse", 2], ["swap", 1]]')
    assert code == 0 and json.loads(out)["ok"]


def test_protect_table_text(capsys):
    code, out, _ = run_cli(capsys, "--format", "table", "protect", "table")
    assert code == 0
    assert "Inf(k^g_chi)" in out
    assert len(out.strip().splitlines()) == 6


def test_protect_compute(capsys):
    code, out, _ = run_cli(capsys, "protect", "compute", "--hopf", "builtin:sweedler",
                           "--graph", "std:1,0", "--coeff", "unit-U")
    assert code == 0 and json.loads(out)["dim_bitensor"] == 16


def test_oracle_group(capsys):
    code, out, _ = run_cli(capsys, "protect", "oracle-group", "--group", "S3", "--genus", "1",
                           "--chi", "sign", "--lattice")
    data = json.loads(out)
    assert code == 0 and data["dim"] == data["lattice_dim"] == 8


def test_excision_and_bosonisation(capsys):
    code, out, _ = run_cli(capsys, "protect", "excision")
    assert code == 0 and json.loads(out)["dim_cbit"] == 0
    code, out, _ = run_cli(capsys, "protect", "reduce-bosonisation")
    assert code == 0 and json.loads(out)["dim_coH"] == 10


@pytest.mark.parametrize("argv", [
    ["graph", "info", "std:9"],
    ["graph", "info", "/nonexistent/graph.json"],
    ["hopf", "check", "--builtin", "group:Q8"],
    ["protect", "compute", "--hopf", "sweedler", "--graph", "std:1,0", "--pair", "7"],
    ["protect", "compute", "--hopf", "sweedler", "--graph", "std:1,0", "--coeff", "bogus"],
    ["lattice", "move", "--hopf", "sweedler", "--graph", "std:1,0", "--word", "not json"],
    ["nonsense"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, _ = run_cli(capsys, *argv)
    assert code == 2


def test_verification_failure_exits_1(capsys):
    # the expected torus table is not reproduced, so this criterion fails
    code, out, _ = run_cli(capsys, "--format", "table", "acceptance", "--only", "1")
    assert code == 1
    assert "[FAIL]  1" in out


def test_http_graph_info():
    r = client.post("/graph/info", json={"graph": "std:2,0"})
    assert r.status_code == 200 and r.json()["genus"] == 2


def test_http_inline_graph():
    r = client.post("/graph/info", json={"graph": standard_graph(0, 1).to_json()})
    assert r.status_code == 200 and r.json()["boundary"] == 2


def test_http_protect_table():
    r = client.post("/protect/table", json={})
    rows = {(x["g"], x["chi"]): x["dim_bitensor"] for x in r.json()["rows"]}
    assert rows[("1", "eps")] == 5


def test_http_errors():
    assert client.post("/graph/info", json={"graph": "std:0,0"}).status_code == 400
    assert client.post("/graph/info", json={}).status_code == 422
    assert client.get("/health").json() == {"status": "ok"}


def test_http_oracle():
    r = client.post("/protect/oracle-group", json={"group": "Z2", "genus": 1, "lattice": True})
    assert r.json() == {"dim": 4, "lattice_dim": 4, "ok": True}
