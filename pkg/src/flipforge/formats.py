"""JSON readers and writers for triangulations, graphs and results."""

from __future__ import annotations

import json
from typing import Any

from .core import PlaneGraph, Triangulation, TriangulationError, canonical_code, edge
from .hamiltonize import HamCycle, HamFlipResult, SubdivisionResult

TRI_FORMAT = "tri-v1"


def dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))


def tri_to_json_obj(t: Triangulation) -> dict:
    return {
        "format": TRI_FORMAT,
        "n": t.n,
        "outer_face": list(t.outer_face),
        "rotations": [list(r) for r in t.rotations],
    }


def tri_from_json_obj(obj: dict) -> Triangulation:
    fmt = obj.get("format", TRI_FORMAT)
    if fmt != TRI_FORMAT:
        raise TriangulationError(f"unsupported format {fmt!r}")
    if "rotations" in obj:
        rot = [tuple(int(x) for x in r) for r in obj["rotations"]]
        if "n" in obj and obj["n"] != len(rot):
            raise TriangulationError(f"n = {obj['n']} but {len(rot)} rotations given")
        return Triangulation(rot, tuple(obj.get("outer_face") or _first_face(rot)))
    if "faces" in obj:
        faces = [tuple(int(x) for x in f) for f in obj["faces"]]
        return Triangulation.from_faces(faces, tuple(obj.get("outer_face") or faces[0]))
    raise TriangulationError("expected 'rotations' or 'faces'")


def _first_face(rot) -> tuple[int, int, int]:
    u = 0
    v = rot[0][0]
    return (u, v, rot[v][rot[v].index(u) - 1])


def dumps_tri(t: Triangulation) -> str:
    return dumps(tri_to_json_obj(t))


def loads_tri(s: str) -> Triangulation:
    return tri_from_json_obj(json.loads(s))


def graph_to_json_obj(g: PlaneGraph) -> dict:
    return {"n": g.n, "rotations": [list(r) for r in g.rotations]}


def edges_from_json_obj(obj: dict) -> tuple[int, list[tuple[int, int]]]:
    """Vertex count and edge list from a tri-v1 document or ``{"n":..,"edges":[..]}``."""
    if "edges" in obj:
        edges = sorted({edge(int(a), int(b)) for a, b in obj["edges"]})
        n = int(obj.get("n", 1 + max((max(e) for e in edges), default=-1)))
        return n, edges
    t = tri_from_json_obj(obj)
    return t.n, t.edges()


def code_hex(t: Triangulation | PlaneGraph) -> str:
    return canonical_code(t).hex()


def hamflip_to_json_obj(r: HamFlipResult) -> dict:
    return {
        "flips": [list(rec.removed) for rec in r.flips],
        "script": r.script.to_json_obj(),
        "final": tri_to_json_obj(r.final),
        "cycle": list(r.cycle.order),
    }


def subdivision_to_json_obj(s: SubdivisionResult) -> dict:
    return {
        "subdivided": [list(e) for e in s.subdivided],
        "subdivision_vertex": [[e[0], e[1], x] for e, x in sorted(s.subdivision_vertex.items())],
        "subdivided_graph": graph_to_json_obj(s.subdivided_graph),
        "witness": graph_to_json_obj(s.witness),
        "witness_only": [list(e) for e in s.witness_only],
        "cycle": list(s.cycle.order),
    }


def subdivision_from_json_obj(obj: dict) -> SubdivisionResult:
    return SubdivisionResult(
        [edge(*e) for e in obj["subdivided"]],
        PlaneGraph([tuple(r) for r in obj["witness"]["rotations"]]),
        HamCycle(tuple(obj["cycle"])),
        PlaneGraph([tuple(r) for r in obj["subdivided_graph"]["rotations"]]),
        [edge(*e) for e in obj["witness_only"]],
        {edge(a, b): x for a, b, x in obj["subdivision_vertex"]},
    )


__all__ = [
    "TRI_FORMAT",
    "code_hex",
    "dumps",
    "dumps_tri",
    "edges_from_json_obj",
    "graph_to_json_obj",
    "hamflip_to_json_obj",
    "loads_tri",
    "subdivision_from_json_obj",
    "subdivision_to_json_obj",
    "tri_from_json_obj",
    "tri_to_json_obj",
]
