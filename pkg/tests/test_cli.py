import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lidcolor.cli import EXIT_DOMAIN, EXIT_NOT_LID, EXIT_OK, EXIT_USAGE, parse_grid, render_grid, run, to_dot
from lidcolor.graph import Graph, ProductLabeling, cycle_graph, path_graph, tensor_product
from lidcolor.verify import Coloring, lid_report


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data))
        return str(path)

    return write


def test_compute(capsys):
    assert run(["compute", "--family", "cart-cycle-cycle", "-m", "13", "-n", "17"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "4" and out[1].startswith("case:")


def test_compute_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "lidcolor.cli", "compute", "--family", "cycle", "-m", "7"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "5"


def test_compute_arity(capsys):
    assert run(["compute", "--family", "cycle", "-m", "7", "-n", "3"]) == EXIT_USAGE
    assert run(["compute", "--family", "cart-cycle-path", "-m", "7"]) == EXIT_USAGE
    assert run(["compute", "--family", "cycle", "-m", "2"]) == EXIT_DOMAIN


def test_usage_errors(capsys):
    assert run([]) == EXIT_USAGE
    assert run(["compute", "--family", "strong", "-m", "3"]) == EXIT_USAGE
    assert run(["verify", "--graph", "x"]) == EXIT_USAGE


def test_verify(files, capsys):
    g = files("g.json", cycle_graph(3).to_dict())
    good = files("good.json", {"colors": [1, 2, 3]})
    assert run(["verify", "--graph", g, "--coloring", good]) == EXIT_OK
    assert "lid: True" in capsys.readouterr().out
    p3 = files("p3.json", path_graph(3).to_dict())
    bad = files("bad.json", {"colors": [1, 2, 1]})
    assert run(["verify", "--graph", p3, "--coloring", bad, "--report", "json"]) == EXIT_NOT_LID
    rep = json.loads(capsys.readouterr().out)
    assert rep["is_lid"] is False and rep["bad_edges"] == [[0, 1], [1, 2]]


def test_verify_length_mismatch(files, capsys):
    g = files("g.json", cycle_graph(3).to_dict())
    c = files("c.json", {"colors": [1, 2]})
    assert run(["verify", "--graph", g, "--coloring", c]) == EXIT_DOMAIN


def test_malformed_file_reports_position(files, capsys):
    g = files("g.json", '{"n": 3,\n "edges": [[0, 1],, ]}')
    c = files("c.json", {"colors": [1, 2, 3]})
    assert run(["verify", "--graph", g, "--coloring", c]) == EXIT_DOMAIN
    err = capsys.readouterr().err
    assert "line 2" in err and "column" in err
    assert run(["verify", "--graph", files("h.json", {"n": 2, "edges": [[0, 5]]}), "--coloring", c]) == EXIT_DOMAIN
    assert run(["verify", "--graph", "/nonexistent.json", "--coloring", c]) == EXIT_DOMAIN


def test_one_based_indexing(files, capsys):
    g = files("g.json", {"n": 3, "edges": [[1, 2], [2, 3], [1, 3]]})
    c = files("c.json", {"colors": [1, 2, 3]})
    assert run(["--indexing", "1", "verify", "--graph", g, "--coloring", c]) == EXIT_OK
    assert run(["verify", "--graph", g, "--coloring", c]) == EXIT_DOMAIN


def test_exact_with_certificate(files, tmp_path, capsys):
    g = files("g.json", tensor_product(cycle_graph(3), cycle_graph(3))[0].to_dict())
    cert = tmp_path / "cert.json"
    assert run(["exact", "--graph", g, "--deterministic", "--certificate", str(cert)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "5"
    coloring = Coloring.from_dict(json.loads(cert.read_text()))
    rep = lid_report(tensor_product(cycle_graph(3), cycle_graph(3))[0], coloring)
    assert rep.is_lid and rep.colors_used == 5


def test_exact_prints_certificate_and_respects_limits(files, capsys):
    g = files("g.json", cycle_graph(5).to_dict())
    assert run(["exact", "--graph", g]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "5" and Coloring.from_dict(json.loads(out[1])).color_count == 5
    assert run(["exact", "--graph", g, "--max-k", "4"]) == EXIT_DOMAIN


def test_product(files, tmp_path):
    g = files("g.json", path_graph(2).to_dict())
    out = tmp_path / "p.json"
    assert run(["product", "--op", "cartesian", "--g", g, "--h", g, "--out", str(out)]) == EXIT_OK
    assert Graph.from_json(out.read_text()) == cycle_graph(4).relabel([0, 1, 3, 2])


def test_export_formats(files, tmp_path, capsys):
    g = files("g.json", cycle_graph(4).to_dict())
    c = files("c.json", {"colors": [1, 2, 1, 2]})
    assert run(["export", "--graph", g, "--coloring", c, "--format", "dot"]) == EXIT_OK
    dot = capsys.readouterr().out
    assert dot.startswith("graph G {") and "0 -- 1;" in dot and 'label="1:2"' in dot
    assert run(["export", "--graph", g, "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["graph"]["n"] == 4
    assert run(["export", "--graph", g, "--coloring", c, "--format", "grid", "--rows", "2"]) == EXIT_OK
    assert capsys.readouterr().out == "1 2\n1 2\n"
    assert run(["export", "--graph", g, "--format", "grid"]) == EXIT_USAGE
    assert run(["export", "--graph", g, "--coloring", c, "--format", "grid", "--rows", "3"]) == EXIT_DOMAIN


def test_construct(tmp_path, capsys):
    assert run(["construct", "--family", "tensor-cycle-cycle", "-m", "3", "-n", "3", "--grid"]) == EXIT_OK
    coloring, lab = parse_grid(capsys.readouterr().out)
    assert (lab.rows, lab.cols) == (3, 3)
    rep = lid_report(tensor_product(cycle_graph(3), cycle_graph(3))[0], coloring)
    assert rep.is_lid and rep.colors_used == 5
    out = tmp_path / "c.json"
    assert run(["construct", "--family", "cycle", "-m", "7", "--out", str(out)]) == EXIT_OK
    assert Coloring.from_dict(json.loads(out.read_text())).color_count == 5
    assert run(["construct", "--family", "cycle", "-m", "7", "--grid"]) == EXIT_USAGE


def test_dot_without_coloring():
    assert to_dot(path_graph(2)) == "graph G {\n  node [style=filled];\n  0;\n  1;\n  0 -- 1;\n}\n"


@given(st.integers(1, 6), st.integers(1, 6), st.data())
def test_grid_round_trip(rows, cols, data):
    colors = data.draw(st.lists(st.integers(1, 12), min_size=rows * cols, max_size=rows * cols))
    lab = ProductLabeling(rows, cols)
    coloring, back = parse_grid(render_grid(Coloring(colors), lab))
    assert coloring.colors == tuple(colors) and (back.rows, back.cols) == (rows, cols)
