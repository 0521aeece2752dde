import json

import pytest

from flipforge.core import TriangulationError
from flipforge.formats import (
    dumps_tri,
    edges_from_json_obj,
    hamflip_to_json_obj,
    loads_tri,
    subdivision_from_json_obj,
    subdivision_to_json_obj,
    tri_from_json_obj,
    tri_to_json_obj,
)
from flipforge.fourconnect import four_connect
from flipforge.generators import checkerboard_demo, k4, lowerham, octahedron
from flipforge.hamiltonize import eliminate_dummies_subdivisions, hamflip
from flipforge.script import FlipScript, replay

from corpus import families


def test_tri_round_trip_bytes():
    for t in families():
        s = dumps_tri(t)
        assert dumps_tri(loads_tri(s)) == s
        assert loads_tri(s) == t


def test_key_order():
    assert list(tri_to_json_obj(k4())) == ["format", "n", "outer_face", "rotations"]


def test_from_faces():
    t = octahedron()
    obj = {"format": "tri-v1", "faces": [list(f) for f in sorted(t.face_set())], "outer_face": list(t.outer_face)}
    assert tri_from_json_obj(obj).face_set() == t.face_set()


def test_bad_format():
    with pytest.raises(TriangulationError):
        tri_from_json_obj({"format": "tri-v9", "rotations": []})
    with pytest.raises(TriangulationError):
        tri_from_json_obj({"format": "tri-v1", "n": 5, "rotations": [list(r) for r in k4().rotations]})


def test_edges_document():
    n, edges = edges_from_json_obj({"n": 4, "edges": [[1, 0], [2, 1]]})
    assert n == 4 and edges == [(0, 1), (1, 2)]


def test_hamflip_script_round_trip():
    t = checkerboard_demo()
    obj = json.loads(json.dumps(hamflip_to_json_obj(hamflip(t))))
    out = replay(t, FlipScript.from_json_obj(obj["script"]))
    assert out == tri_from_json_obj(obj["final"])


def test_subdivision_round_trip():
    t = lowerham(1)
    s = eliminate_dummies_subdivisions(t, four_connect(t))
    obj = subdivision_to_json_obj(s)
    again = subdivision_from_json_obj(json.loads(json.dumps(obj)))
    assert subdivision_to_json_obj(again) == obj
