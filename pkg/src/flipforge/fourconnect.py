"""Flipping a triangulation to 4-connectivity.

Two strategies live here.  :func:`sim_flip_set` returns one simultaneous
flip set taken from a Tait class.  :func:`four_connect` runs the sequential
block-tree algorithm that mixes ordinary flips with dummy flips and audits
the free-edge invariants after every step.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import fourblock as fb
from .core import (
    Edge,
    FlipRecord,
    PreconditionError,
    Triangulation,
    TriangulationError,
    edge,
    edges_on_separating_triangles,
    flip,
    flip_apexes,
    insert_vertex,
    is_four_connected,
    separating_triangles,
    tri,
    triangle_triples,
    validate,
)
from .script import DummyOp, FlipOp, FlipScript
from .tait import CLASSES, TaitPartition, partition

log = logging.getLogger(__name__)


class TooSmallError(TriangulationError):
    pass


class CheckerboardError(TriangulationError):
    pass


class ConnectorViolation(TriangulationError):
    """A connector taken from the input's Tait classes is not a dual matching of the current graph."""


class InvariantViolation(AssertionError):
    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace


# -- simultaneous flip ------------------------------------------------------------


def _check_flip_set(t: Triangulation, F: set[Edge]) -> None:
    """Every triangle meets ``F`` at most once and every edge of ``F`` is flippable."""
    for a, b, c in triangle_triples(t):
        if sum(e in F for e in (edge(a, b), edge(a, c), edge(b, c))) > 1:
            raise PreconditionError(f"triangle {(a, b, c)} meets two edges of the flip set")
    created = set()
    for e in sorted(F):
        c, d = flip_apexes(t, e)
        if c == d or t.has_edge(c, d):
            raise PreconditionError(f"edge {e} is not flippable")
        if edge(c, d) in created:
            raise PreconditionError(f"edge {edge(c, d)} would be created twice")
        created.add(edge(c, d))


def sim_flip_set(t: Triangulation, p: TaitPartition | None = None) -> set[Edge]:
    """A simultaneously flippable edge set whose flip leaves no separating triangle."""
    if t.n < 6:
        raise TooSmallError(f"no 4-connected triangulation on {t.n} < 6 vertices")
    trapped = edges_on_separating_triangles(t)
    if not trapped:
        return set()
    p = p or partition(t)
    cands = [{e for e in trapped if p.class_of[e] == k} for k in CLASSES]
    best = min(range(3), key=lambda k: (len(cands[k]), k))
    F = cands[best]
    _check_flip_set(t, F)
    return F


# -- sequential algorithm: data ----------------------------------------------------


@dataclass(frozen=True)
class Connector:
    edges: frozenset[Edge]
    source_class: str
    touches_boundary: bool


@dataclass(frozen=True)
class DummyRecord:
    face: tuple[int, int, int]
    vertex: int
    flips: tuple[FlipRecord, FlipRecord, FlipRecord]


@dataclass(frozen=True)
class NodeReport:
    node: int
    role: str  # singleton | leaf | interior
    f: int
    d: int
    n_i: int
    free: int
    required: int
    ok: bool
    pni_ok: bool


@dataclass(frozen=True)
class InvariantReport:
    nodes: tuple[NodeReport, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok and r.pni_ok for r in self.nodes)

    def failures(self) -> list[NodeReport]:
        return [r for r in self.nodes if not (r.ok and r.pni_ok)]


@dataclass(frozen=True)
class StepTrace:
    node: int
    kind: str  # connector_flip | checkerboard
    flips: tuple[FlipRecord, ...]
    dummy: DummyRecord | None
    invariant_report: InvariantReport


@dataclass
class FourConnectResult:
    final: Triangulation
    trace: list[StepTrace] = field(default_factory=list)
    f_total: int = 0
    d_total: int = 0
    dummy_vertices: list[tuple[int, tuple[int, int, int]]] = field(default_factory=list)
    script: FlipScript = field(default_factory=FlipScript)
    partition: TaitPartition | None = None
    dummy_faces: dict[int, frozenset] = field(default_factory=dict)

    @property
    def original_flips(self) -> list[Edge]:
        """Ordinary flips, in order (edges of the input graph)."""
        return [s.edge for s in self.script.steps if isinstance(s, FlipOp)]


# -- invariants --------------------------------------------------------------------


def audit_invariants(bt: fb.FourBlockTree, uncredited: frozenset[Edge] | None = None) -> InvariantReport:
    """Check F1-F3 and the size bound on every node.

    ``uncredited`` are the outer-face edges of the input; the root's interior
    edges are counted against them rather than against its current outer face,
    which moves when an outer edge is flipped.
    """
    reps = []
    single = len(bt) == 1
    counts = None if single else fb.free_edge_counts(bt, uncredited or None)
    for nd in bt.nodes:
        f, d = nd.flips_used, nd.dummies_used
        if single:
            role = "singleton"
            free = 3 * bt.host.n - 6  # no separating triangle is left, so every edge is free
            need = 6 * f + 15 * d + 3
            ok = free >= need
        elif bt.is_leaf(nd.id):
            role = "leaf"
            free = counts[nd.id]
            need = 6 * f + 15 * d + 3
            ok = nd.parent is None or free >= need
        else:
            role = "interior"
            free = counts[nd.id]
            need = 6 * f + 15 * d + 1
            ok = (f == 0 and d == 0) or free >= need
        pni = single or nd.interior_size >= 2 * f + 5 * d + 1
        reps.append(NodeReport(nd.id, role, f, d, nd.interior_size, free, need, ok, pni))
    return InvariantReport(tuple(reps))


# -- sequential algorithm: steps ------------------------------------------------


def optimal_connector(bt: fb.FourBlockTree, i: int, p: TaitPartition) -> Connector:
    tris = bt.child_triangles(i)
    if not tris:
        raise TriangulationError(f"node {i} has no children")
    if fb.is_checkerboard(bt, i):
        raise CheckerboardError(f"the child triangles of node {i} form a checkerboard")
    incident = {e for s in tris for e in fb._tri_edges(s)}
    boundary = set(bt.nodes[i].boundary_edges)
    options = []
    for k, name in enumerate(CLASSES):
        M = frozenset(e for e in incident if p.class_of.get(e) == name)
        options.append((len(M), not (M & boundary), k, M))
    size, no_boundary, k, M = min(options, key=lambda o: o[:3])
    _verify_connector(bt, i, M)
    return Connector(M, CLASSES[k], not no_boundary)


def _verify_connector(bt: fb.FourBlockTree, i: int, M: frozenset[Edge]) -> None:
    t = bt.host
    for s in bt.child_triangles(i):
        hit = [e for e in fb._tri_edges(s) if e in M]
        if len(hit) != 1:
            raise ConnectorViolation(f"child triangle {s} meets the connector in {hit}")
    for e in M:
        if not t.has_edge(*e):
            raise ConnectorViolation(f"connector edge {e} is not in the current graph")
    try:
        _check_flip_set(t, set(M))
    except PreconditionError as exc:
        raise ConnectorViolation(str(exc)) from exc


def dummy_flip(t: Triangulation, face, check: bool = True) -> tuple[Triangulation, DummyRecord]:
    """Stack a vertex into ``face`` and flip the three edges of ``face``."""
    f = tri(*face)
    if f not in t.face_set():
        raise PreconditionError(f"{f} is not a face")
    trapped = edges_on_separating_triangles(t)
    for e in fb._tri_edges(f):
        if e not in trapped:
            raise PreconditionError(f"edge {e} of {f} lies on no separating triangle")
    before = set(separating_triangles(t)) if check else None
    v = t.n
    g = insert_vertex(t, f)
    recs = []
    for k, e in enumerate(fb._tri_edges(f)):
        g, rec = flip(g, e, k)
        recs.append(rec)
    if check:
        after = set(separating_triangles(g))
        assert validate(g) is None, "dummy flip produced an invalid triangulation"
        assert after <= before, f"dummy flip created separating triangles {sorted(after - before)}"
        assert len(after) <= len(before) - 3 or not before, "dummy flip destroyed fewer than three triangles"
    return g, DummyRecord(f, v, tuple(recs))  # type: ignore[arg-type]


def predummy_choice(bt: fb.FourBlockTree, i: int) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """Faces ``(F, H)`` for the checkerboard step of node ``i``."""
    if not fb.is_checkerboard(bt, i):
        raise fb.NotCheckerboardError(f"node {i} is not a checkerboard")
    Ti = bt.nodes[i].boundary
    Tset = set(bt.child_triangles(i))
    faces = [f for f in bt.block_faces(i) if f != Ti]
    edges_of = {f: set(fb._tri_edges(f)) for f in faces}
    outer = set(fb._tri_edges(Ti))
    by_edge: dict[Edge, list] = {}
    for f in faces:
        for e in edges_of[f]:
            by_edge.setdefault(e, []).append(f)

    def nbrs(f):
        return {g for e in edges_of[f] for g in by_edge[e] if g != f}

    near_outer = sorted(f for f in faces if edges_of[f] & outer)
    for F in sorted(faces):
        if F in Tset or len(nbrs(F) & Tset) != 3:
            continue
        adj = nbrs(F)
        for H in near_outer:
            if H != F and H not in adj:
                return F, H
    raise AssertionError(f"no (F, H) pair in checkerboard node {i}")  # pragma: no cover


def faces_at(t: Triangulation, v: int) -> frozenset[tuple[int, int, int]]:
    r = t.rotations[v]
    return frozenset(tri(v, r[k - 1], r[k]) for k in range(len(r)))


def _flip_checked(t: Triangulation, e: Edge, original: frozenset[Edge], k: int):
    trapped = edges_on_separating_triangles(t)
    if e not in trapped:
        raise InvariantViolation(f"edge {e} lies on no separating triangle when flipped")
    if e not in original:
        raise InvariantViolation(f"edge {e} is not an edge of the input")
    return flip(t, e, k)


def four_connect(t: Triangulation, p: TaitPartition | None = None) -> FourConnectResult:
    if t.n < 6:
        raise TooSmallError(f"no 4-connected triangulation on {t.n} < 6 vertices")
    n0 = t.n
    p = p or partition(t)
    original = frozenset(t.edges())
    uncredited = frozenset(fb._tri_edges(tri(*t.outer_face)))
    bt = fb.build(t)
    res = FourConnectResult(t, partition=p)
    step = 0
    while len(bt) > 1:
        i = fb.penultimate_nodes(bt)[0]
        host = bt.host
        seps_before = set(separating_triangles(host))
        flips: list[FlipRecord] = []
        dummy = None
        if fb.is_checkerboard(bt, i):
            kind = "checkerboard"
            F, H = predummy_choice(bt, i)
            common = set(fb._tri_edges(H)) & set(bt.nodes[i].boundary_edges)
            (ce,) = common
            D = p.class_of.get(ce)
            if D is None:
                raise InvariantViolation(f"edge {ce} has no class in the input partition", res.trace)
            for e in fb._tri_edges(F):
                if e not in original:
                    raise InvariantViolation(f"dummy-flipped edge {e} is not an edge of the input", res.trace)
            host, dummy = dummy_flip(host, F)
            dummy_host = host
            res.script.steps.append(
                DummyOp(F, dummy.vertex, tuple(FlipOp(r.removed, r.created) for r in dummy.flips))
            )
            Fedges = set(fb._tri_edges(F))
            pending = []
            for s in sorted(bt.child_triangles(i)):
                if set(fb._tri_edges(s)) & Fedges:
                    continue
                (e,) = [x for x in fb._tri_edges(s) if p.class_of.get(x) == D]
                pending.append(e)
            for e in sorted(set(pending)):
                host, rec = _flip_checked(host, e, original, step)
                flips.append(rec)
            d = 1
        else:
            kind = "connector_flip"
            M = optimal_connector(bt, i, p)
            for e in sorted(M.edges):
                host, rec = _flip_checked(host, e, original, step)
                flips.append(rec)
            d = 0
        for r in flips:
            res.script.steps.append(FlipOp(r.removed, r.created))
        seps_after = set(separating_triangles(host))
        if not seps_after <= seps_before:
            raise InvariantViolation(f"step {step} created separating triangles {sorted(seps_after - seps_before)}", res.trace)
        bt = fb.rebuild_after(bt, host, fb.StepCarry(i, len(flips), d))
        report = audit_invariants(bt, uncredited)
        res.trace.append(StepTrace(i, kind, tuple(flips), dummy, report))
        if not report.ok:
            raise InvariantViolation(f"step {step}: invariant failure {report.failures()}", res.trace)
        res.f_total += len(flips)
        res.d_total += d
        if dummy is not None:
            res.dummy_vertices.append((dummy.vertex, dummy.face))
            res.dummy_faces[dummy.vertex] = faces_at(dummy_host, dummy.vertex)
        log.debug("step %d node %d %s f=%d d=%d", step, i, kind, len(flips), d)
        step += 1
    res.final = bt.host
    for v, fs in res.dummy_faces.items():
        if faces_at(res.final, v) != fs:
            raise InvariantViolation(f"faces around dummy vertex {v} changed after its creation", res.trace)
    if not is_four_connected(res.final):
        raise InvariantViolation("final triangulation is not 4-connected", res.trace)
    if 2 * (res.f_total + 2 * res.d_total) > n0 - 3:
        raise InvariantViolation(f"f + 2d = {res.f_total + 2 * res.d_total} exceeds (n-3)/2", res.trace)
    return res
