import json
import subprocess
import sys

import pytest

from flipforge.cli import run
from flipforge.formats import tri_to_json_obj
from flipforge.generators import k4, lower4c, octahedron


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def tri_file(tmp_path):
    def write(t, name="in.json"):
        p = tmp_path / name
        p.write_text(json.dumps(tri_to_json_obj(t)))
        return str(p)

    return write


def test_gen_lower4c(capsys):
    code, out, _ = call(capsys, "gen", "--family", "lower4c", "--param", "1")
    obj = json.loads(out)
    assert code == 0 and obj["format"] == "tri-v1" and obj["n"] == 7


def test_hamflip_octahedron(capsys, tri_file):
    code, out, _ = call(capsys, "hamflip", tri_file(octahedron()))
    assert code == 0 and json.loads(out)["flips"] == []


def test_simflip4c_report(capsys, tri_file):
    code, out, _ = call(capsys, "simflip4c", tri_file(lower4c(1)))
    rep = json.loads(out)["report"]
    assert code == 0 and rep["size"] == 2 and rep["within_bound"] and rep["four_connected"]


def test_biarc_then_verify(capsys, tri_file, tmp_path):
    d = tmp_path / "d.json"
    code, _, _ = call(capsys, "biarc", tri_file(lower4c(2)), "-o", str(d))
    assert code == 0
    code, out, _ = call(capsys, "verify", str(d), "--check", "diagram")
    assert code == 0 and json.loads(out)["ok"]


def test_biarc_hamsub_svg(capsys, tri_file, tmp_path):
    svg = tmp_path / "d.svg"
    code, out, _ = call(capsys, "biarc", tri_file(lower4c(1)), "--mode", "hamsub", "--svg", str(svg))
    assert code == 0 and svg.read_text().startswith("<svg")
    assert "stats" in json.loads(out)


def test_biarc_edge_list(capsys, tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"n": 5, "edges": [[0, 1], [1, 2], [2, 3], [3, 4]]}))
    code, out, _ = call(capsys, "biarc", str(p))
    assert code == 0 and len(json.loads(out)["arcs"]) == 4


def test_planted_crossing(capsys, tmp_path):
    p = tmp_path / "d.json"
    p.write_text(
        json.dumps(
            {
                "spine": [{"id": v, "pos": [v, 1]} for v in range(4)],
                "arcs": [
                    {"edge": [0, 2], "pieces": [{"l": [0, 1], "r": [2, 1], "side": "above"}]},
                    {"edge": [1, 3], "pieces": [{"l": [1, 1], "r": [3, 1], "side": "above"}]},
                ],
            }
        )
    )
    code, _, err = call(capsys, "verify", str(p), "--check", "diagram")
    rep = json.loads(err)
    assert code == 2 and rep["report"]["rule"] == "crossing"
    code, _, _ = call(capsys, "render", str(p))
    assert code == 2
    code, out, _ = call(capsys, "render", str(p), "--force")
    assert code == 0 and out.count("<path") == 2


def test_verify_4connected(capsys, tri_file):
    assert call(capsys, "verify", tri_file(octahedron()), "--check", "4connected")[0] == 0
    assert call(capsys, "verify", tri_file(lower4c(1)), "--check", "4connected")[0] == 2


def test_verify_hamiltonian(capsys, tri_file, tmp_path):
    h = tmp_path / "h.json"
    call(capsys, "hamflip", tri_file(lower4c(2)), "-o", str(h))
    assert call(capsys, "verify", str(h), "--check", "hamiltonian")[0] == 0


def test_invalid_triangulation(capsys, tmp_path):
    obj = tri_to_json_obj(k4())
    obj["rotations"][0] = obj["rotations"][0][::-1]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(obj))
    code, _, err = call(capsys, "hamflip", str(p))
    assert code == 2 and json.loads(err)["error"] == "diagnostic"


def test_oracle_queries(capsys, tri_file):
    code, out, _ = call(capsys, "oracle", "minsim", tri_file(lower4c(1)))
    assert code == 0 and json.loads(out)["value"] == 2
    code, out, _ = call(capsys, "oracle", "enumerate", "--n", "7")
    assert json.loads(out)["classes"] == 5
    code, out, _ = call(capsys, "oracle", "flipdist", tri_file(k4(), "a.json"), tri_file(k4(), "b.json"))
    assert json.loads(out)["value"] == 0


def test_usage_errors(capsys):
    assert call(capsys, "bogus")[0] == 64
    assert call(capsys, "oracle", "enumerate")[0] == 64
    assert call(capsys, "oracle", "flipdist", "x.json")[0] == 64


def test_missing_file(capsys):
    code, _, err = call(capsys, "hamflip", "/nonexistent/file.json")
    assert code == 1 and json.loads(err)["error"] == "FileNotFoundError"


def test_provenance(capsys, tri_file):
    _, out, _ = call(capsys, "hamflip", tri_file(octahedron()))
    assert set(json.loads(out)["provenance"]) == {"version", "input_code"}


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "flipforge.cli", "gen", "--family", "k4"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["n"] == 4
