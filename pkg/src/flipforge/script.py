"""Replayable records of flip, dummy-flip and subdivision steps."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .core import (
    PlaneGraph,
    PreconditionError,
    Triangulation,
    edge,
    flip,
    insert_vertex,
    subdivide_edge,
    tri,
)


@dataclass(frozen=True)
class FlipOp:
    edge: tuple[int, int]
    created: tuple[int, int]

    def to_json_obj(self) -> dict:
        return {"op": "flip", "edge": list(self.edge), "created": list(self.created)}


@dataclass(frozen=True)
class DummyOp:
    face: tuple[int, int, int]
    vertex: int
    flips: tuple[FlipOp, ...]

    def to_json_obj(self) -> dict:
        return {
            "op": "dummy",
            "face": list(self.face),
            "vertex": self.vertex,
            "flips": [f.to_json_obj() for f in self.flips],
        }


@dataclass(frozen=True)
class SubdivideOp:
    edge: tuple[int, int]
    vertex: int

    def to_json_obj(self) -> dict:
        return {"op": "subdivide", "edge": list(self.edge), "vertex": self.vertex}


Op = Union[FlipOp, DummyOp, SubdivideOp]


@dataclass
class FlipScript:
    steps: list[Op] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def flip_count(self) -> int:
        return sum(isinstance(s, FlipOp) for s in self.steps)

    @property
    def dummy_count(self) -> int:
        return sum(isinstance(s, DummyOp) for s in self.steps)

    def to_json_obj(self) -> dict:
        return {"format": "flipscript-v1", "steps": [s.to_json_obj() for s in self.steps]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FlipScript":
        return cls([_op_from(s) for s in obj["steps"]])


def _op_from(s: dict) -> Op:
    kind = s["op"]
    if kind == "flip":
        return FlipOp(edge(*s["edge"]), edge(*s["created"]))
    if kind == "dummy":
        return DummyOp(tri(*s["face"]), int(s["vertex"]), tuple(_op_from(f) for f in s["flips"]))  # type: ignore[misc]
    if kind == "subdivide":
        return SubdivideOp(edge(*s["edge"]), int(s["vertex"]))
    raise ValueError(f"unknown script op {kind!r}")


def replay(t: Triangulation, script: FlipScript) -> Triangulation | PlaneGraph:
    """Apply every step, checking that each flip creates the recorded edge."""
    g: Triangulation | PlaneGraph = t
    for k, op in enumerate(script.steps):
        if isinstance(op, SubdivideOp):
            if op.vertex != g.n:
                raise PreconditionError(f"step {k}: subdivision vertex {op.vertex} ≠ next id {g.n}")
            g = subdivide_edge(g, op.edge)
            continue
        if not isinstance(g, Triangulation):
            raise PreconditionError(f"step {k}: flips cannot follow a subdivision")
        if isinstance(op, DummyOp):
            if op.vertex != g.n:
                raise PreconditionError(f"step {k}: dummy vertex {op.vertex} ≠ next id {g.n}")
            g = insert_vertex(g, op.face)
            for f in op.flips:
                g = _apply_flip(g, f, k)
        else:
            g = _apply_flip(g, op, k)
    return g


def _apply_flip(t: Triangulation, op: FlipOp, k: int) -> Triangulation:
    out, rec = flip(t, op.edge, k)
    if rec.created != op.created:
        raise PreconditionError(f"step {k}: flipping {op.edge} created {rec.created}, script says {op.created}")
    return out
