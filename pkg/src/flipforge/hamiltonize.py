"""Hamiltonian cycles and the removal of dummy vertices.

After :func:`~flipforge.fourconnect.four_connect` the host is 4-connected and
therefore Hamiltonian.  Each dummy vertex ``v`` sits in a hexagon
``a, x_ab, b, x_bc, c, x_ca`` where ``abc`` is the face it was stacked into;
the cycle passes ``u - v - w`` and that detour is replaced either by flips
of edges of ``abc`` or by subdividing them.
"""

from __future__ import annotations

import os
import random
import sys
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx

from .core import (
    Edge,
    FlipRecord,
    PlaneGraph,
    PreconditionError,
    Triangulation,
    TriangulationError,
    add_edge_in_face,
    edge,
    flip,
    insert_vertex,
    is_four_connected,
    subdivide_edge,
    tri,
    validate,
)
from .fourconnect import FourConnectResult, four_connect
from .script import FlipOp

DEFAULT_BUDGET = 2_000_000


def default_budget() -> int:
    """Search cap; ``FLIPFORGE_BUDGET`` overrides it."""
    return int(os.environ.get("FLIPFORGE_BUDGET", DEFAULT_BUDGET))


class NotFourConnectedError(TriangulationError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class HamCycle:
    order: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.order)

    def edges(self) -> list[Edge]:
        k = len(self.order)
        return [edge(self.order[i], self.order[(i + 1) % k]) for i in range(k)]

    def neighbours(self, v: int) -> tuple[int, int]:
        i = self.order.index(v)
        return self.order[i - 1], self.order[(i + 1) % len(self.order)]


def verify_cycle(g: Triangulation | PlaneGraph | nx.Graph, h: HamCycle) -> str | None:
    """``None`` if ``h`` is a Hamiltonian cycle of ``g``, else the reason it is not."""
    n = g.number_of_nodes() if isinstance(g, nx.Graph) else g.n
    if sorted(h.order) != list(range(n)):
        return f"cycle visits {len(set(h.order))} distinct of {n} vertices ({len(h.order)} entries)"
    has = g.has_edge
    for u, v in h.edges():
        if not has(u, v):
            return f"cycle edge {(u, v)} is missing"
    return None


@dataclass
class HamFlipResult:
    flips: list[FlipRecord]
    final: Triangulation
    cycle: HamCycle
    four_connect: FourConnectResult | None = None
    cases: list["DummyCase"] = field(default_factory=list)

    @property
    def script(self):
        from .script import FlipScript

        return FlipScript([FlipOp(r.removed, r.created) for r in self.flips])


@dataclass
class SubdivisionResult:
    subdivided: list[Edge]
    witness: PlaneGraph
    cycle: HamCycle
    subdivided_graph: PlaneGraph
    witness_only: list[Edge] = field(default_factory=list)
    subdivision_vertex: dict[Edge, int] = field(default_factory=dict)
    cases: list["DummyCase"] = field(default_factory=list)


# -- Hamiltonian cycle search ----------------------------------------------------


def _adjlists(g) -> list[list[int]]:
    if isinstance(g, nx.Graph):
        return [sorted(g.adj[v]) for v in range(g.number_of_nodes())]
    return [sorted(r) for r in g.rotations]


def _posa(adj: list[list[int]], budget: int, seed: int) -> list[int] | None:
    """Rotation-extension search; returns a cycle order or ``None``."""
    n = len(adj)
    nbrset = [set(a) for a in adj]
    rng = random.Random(seed)
    path = [0]
    on = [False] * n
    on[0] = True
    pos = {0: 0}
    for _ in range(budget):
        x = path[-1]
        free = [y for y in adj[x] if not on[y]]
        if free:
            y = min(free, key=lambda z: (sum(not on[w] for w in adj[z]), z))
            on[y] = True
            pos[y] = len(path)
            path.append(y)
            continue
        if len(path) == n and path[0] in nbrset[x]:
            return path
        # rotate: pick a path neighbour y of x; the vertex after y becomes the new end
        cands = [y for y in adj[x] if on[y] and y != path[-2]] if len(path) > 1 else []
        if not cands:
            path.reverse()
            pos = {v: i for i, v in enumerate(path)}
            continue
        if len(path) == n:
            good = [y for y in cands if path[pos[y] + 1] in nbrset[path[0]]]
            if good:
                cands = good
        else:
            good = [y for y in cands if any(not on[w] for w in adj[path[pos[y] + 1]])]
            if good:
                cands = good
        y = rng.choice(cands)
        i = pos[y]
        tail = path[i + 1 :]
        tail.reverse()
        path[i + 1 :] = tail
        for k in range(i + 1, len(path)):
            pos[path[k]] = k
        if rng.random() < 0.05:
            path.reverse()
            pos = {v: k for k, v in enumerate(path)}
    return None


def _backtrack(adj: list[list[int]], budget: int) -> list[int] | None:
    """Exhaustive search with forced-move and degree pruning."""
    n = len(adj)
    if n < 3:
        return None
    on = [False] * n
    avail = [len(a) for a in adj]  # neighbours still usable: unvisited, the start or the end
    path = [0]
    on[0] = True
    nodes = 0

    def choices(x: int) -> list[int] | None:
        forced = [y for y in adj[x] if not on[y] and avail[y] <= 2]
        if len(forced) > 1:
            return None
        if forced:
            return forced
        return sorted((y for y in adj[x] if not on[y]), key=lambda y: (avail[y], y))

    def enter(x: int, y: int) -> bool:
        # x stops being an endpoint (unless it is the start)
        ok = True
        if x != 0:
            for z in adj[x]:
                avail[z] -= 1
                if not on[z] and z != y and avail[z] < 2:
                    ok = False
        on[y] = True
        path.append(y)
        return ok

    def leave(x: int, y: int) -> None:
        path.pop()
        on[y] = False
        if x != 0:
            for z in adj[x]:
                avail[z] += 1

    def rec() -> bool:
        nonlocal nodes
        x = path[-1]
        if len(path) == n:
            return 0 in adj[x]
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"Hamiltonian search exceeded {budget} nodes")
        if not any(not on[z] for z in adj[0]):
            return False
        cs = choices(x)
        if not cs:
            return False
        for y in cs:
            ok = enter(x, y)
            if ok and rec():
                return True
            leave(x, y)
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 1000))
    try:
        return list(path) if rec() else None
    finally:
        sys.setrecursionlimit(limit)


def find_ham_cycle(g, budget: int | None = None, seed: int = 0) -> HamCycle | None:
    """Deterministic search for a Hamiltonian cycle; ``None`` if none exists."""
    budget = budget or default_budget()
    adj = _adjlists(g)
    n = len(adj)
    if n > 12:
        for s in range(seed, seed + 4):
            order = _posa(adj, 50 * n + 2000, s)
            if order is not None:
                return HamCycle(tuple(order))
    order = _backtrack(adj, budget)
    return None if order is None else HamCycle(tuple(order))


def ham_cycle_4connected(t: Triangulation, budget: int | None = None) -> HamCycle:
    if not is_four_connected(t):
        raise NotFourConnectedError(f"{t!r} is not 4-connected")
    h = find_ham_cycle(t, budget)
    if h is None:  # pragma: no cover - 4-connected planar graphs are Hamiltonian
        raise SearchBudgetExceeded("no Hamiltonian cycle found in a 4-connected triangulation")
    assert verify_cycle(t, h) is None
    return h


# -- dummy elimination: cases ----------------------------------------------------


@dataclass(frozen=True)
class DummyCase:
    """How the cycle passes a dummy vertex: ``distance`` between ``u`` and ``w`` around it,
    and the edges of the stacked face to flip or subdivide, in order."""

    vertex: int
    u: int
    w: int
    distance: int
    edges: tuple[Edge, ...]


def classify_dummy(rot_v: Sequence[int], face: Sequence[int], u: int, w: int, v: int = -1) -> DummyCase:
    """Decide which edges of ``face`` carry the detour ``u - v - w``.

    ``rot_v`` is the six-cycle around the dummy vertex, alternating between
    corners of ``face`` and the apexes across its edges.
    """
    if len(rot_v) != 6:
        raise PreconditionError(f"dummy vertex {v} has degree {len(rot_v)}, expected 6")
    corners = set(face)
    if u not in rot_v or w not in rot_v:
        raise PreconditionError(f"{u} and {w} are not both neighbours of dummy vertex {v}")
    i, j = rot_v.index(u), rot_v.index(w)
    dist = min((i - j) % 6, (j - i) % 6)
    assert 1 <= dist <= 3

    def crossed(k: int) -> Edge:
        # apex at position k lies across the edge of its two rotation neighbours
        return edge(rot_v[k - 1], rot_v[(k + 1) % 6])

    if dist == 1:
        return DummyCase(v, u, w, 1, ())
    if dist == 3:
        k = i if u not in corners else j
        return DummyCase(v, u, w, 3, (crossed(k),))
    if u in corners:
        # two corners: the face edge joining them is still present
        return DummyCase(v, u, w, 2, ())
    # two apexes: flip the edge crossed by v-w first, then the one crossed by u-v
    return DummyCase(v, u, w, 2, (crossed(j), crossed(i)))


# -- flip route ------------------------------------------------------------------


def eliminate_dummies_flips(original: Triangulation, r: FourConnectResult, h: HamCycle) -> HamFlipResult:
    if verify_cycle(r.final, h) is not None:
        raise PreconditionError(f"not a Hamiltonian cycle of the 4-connected host: {verify_cycle(r.final, h)}")
    g = original
    flips: list[FlipRecord] = []
    for e in r.original_flips:
        try:
            g, rec = flip(g, e, len(flips))
        except TriangulationError as exc:  # pragma: no cover - guarded by the no-new-edge invariant
            raise PreconditionError(f"replaying flip of {e} failed: {exc}") from exc
        flips.append(rec)
    order = list(h.order)
    cases = []
    for v, face in r.dummy_vertices:
        u, w = h.neighbours(v)
        case = classify_dummy(r.final.rotations[v], face, u, w, v)
        cases.append(case)
        for e in case.edges:
            g, rec = flip(g, e, len(flips))
            flips.append(rec)
        if not g.has_edge(u, w):  # pragma: no cover - case analysis guarantees the edge
            raise PreconditionError(f"dummy {v}: edge {edge(u, w)} missing after {case}")
        order.remove(v)
    cycle = HamCycle(tuple(order))
    err = verify_cycle(g, cycle)
    if err is not None:  # pragma: no cover
        raise PreconditionError(f"rewritten cycle is invalid: {err}")
    return HamFlipResult(flips, g, cycle, r, cases)


def brute_ham_cycle(t) -> HamCycle | None:
    return find_ham_cycle(t, budget=10**7)


def hamflip(t: Triangulation, budget: int | None = None) -> HamFlipResult:
    """At most floor((n-3)/2) flips that make ``t`` Hamiltonian, with the cycle."""
    diag = validate(t)
    if diag is not None:
        raise TriangulationError(str(diag))
    if t.n < 6:
        h = brute_ham_cycle(t)
        assert h is not None
        return HamFlipResult([], t, h, None)
    r = four_connect(t)
    h = ham_cycle_4connected(r.final, budget)
    res = eliminate_dummies_flips(t, r, h)
    bound = (t.n - 3) // 2
    if len(res.flips) > bound:  # pragma: no cover - would refute the flip bound
        raise AssertionError(f"{len(res.flips)} flips exceed floor((n-3)/2) = {bound}")
    return res


# -- subdivision route -----------------------------------------------------------


def _augment(g: PlaneGraph, subdivision: set[int]) -> tuple[PlaneGraph, list[Edge]]:
    """Triangulate every face that contains subdivision vertices.

    One vertex: join it to the opposite corner.  Two: join them, then close
    the leftover quadrilateral with a chord at the first.  Three: join all.
    """
    added: list[Edge] = []
    for walk in g.face_walks():
        ss = [x for x in walk if x in subdivision]
        if not ss:
            continue
        L = len(walk)
        if len(ss) == 1:
            i = walk.index(ss[0])
            chords = [(ss[0], walk[(i + 2) % L])]
        elif len(ss) == 2:
            s1, s2 = ss
            if (walk.index(s2) - walk.index(s1)) % L != 2:
                s1, s2 = s2, s1
            far = walk[(walk.index(s2) + 1) % L]
            chords = [(s1, s2), (s1, far)]
        else:
            chords = [(ss[0], ss[1]), (ss[1], ss[2]), (ss[2], ss[0])]
        faces = [walk]
        for a, b in chords:
            f = next(f for f in faces if a in f and b in f and len(f) > 3)
            g = add_edge_in_face(g, f, f.index(a), f.index(b))
            added.append(edge(a, b))
            faces.remove(f)
            faces += [g.walk_from(a, b), g.walk_from(b, a)]
    return g, added


def _repair_chords(t: Triangulation, chords: list[Edge], subdivision: set[int]) -> tuple[Triangulation, list[Edge]]:
    """Flip quadrilateral chords that lie on a separating triangle."""
    out = []
    for e in chords:
        a, b = e
        if (a in subdivision) == (b in subdivision) or not t.has_edge(a, b):
            out.append(e)
            continue
        if len(t.adjacency[a] & t.adjacency[b]) > 2:
            c, d = t.left_apex(a, b), t.left_apex(b, a)
            if not t.has_edge(c, d):
                t, rec = flip(t, e)
                out.append(rec.created)
                continue
        out.append(e)
    return t, out


def _as_triangulation(g: PlaneGraph) -> Triangulation:
    faces = sorted(tri(*w) for w in g.face_walks())
    t = Triangulation(g.rotations, faces[0])
    diag = validate(t)
    if diag is not None:  # pragma: no cover
        raise PreconditionError(f"augmented graph is not a triangulation: {diag}")
    return t


def eliminate_dummies_subdivisions(
    original: Triangulation, r: FourConnectResult, budget: int | None = None, seed: int = 0
) -> SubdivisionResult:
    n = original.n
    flipped = sorted(set(r.original_flips))
    g: PlaneGraph = original.to_plane_graph()
    sub_vertex: dict[Edge, int] = {}
    for e in flipped:
        sub_vertex[e] = g.n
        g = subdivide_edge(g, e)
    subs = set(sub_vertex.values())
    g, aug = _augment(g, subs)
    base = _as_triangulation(g)  # subdivided input plus augmentation edges
    base, aug = _repair_chords(base, aug, subs)
    plus = base
    dummy_map: dict[int, int] = {}
    for v, face in r.dummy_vertices:
        dummy_map[v] = plus.n
        plus = insert_vertex(plus, face)
        for e in sorted({edge(face[0], face[1]), edge(face[0], face[2]), edge(face[1], face[2])}):
            plus, _ = flip(plus, e)
    if not is_four_connected(plus):
        raise PreconditionError("the subdivided and dummy-flipped graph is not 4-connected")
    hp = find_ham_cycle(plus, budget, seed)
    if hp is None:  # pragma: no cover
        raise SearchBudgetExceeded("no Hamiltonian cycle in the 4-connected augmented graph")

    W = nx.Graph()
    W.add_nodes_from(range(base.n))
    W.add_edges_from(base.edges())
    witness_only = set(aug)
    next_id = plus.n
    order = list(hp.order)
    cases = []
    for v, face in r.dummy_vertices:
        pv = dummy_map[v]
        u, w = hp.neighbours(pv)
        case = classify_dummy(plus.rotations[pv], face, u, w, pv)
        cases.append(case)
        i = order.index(pv)
        if not case.edges:
            order[i : i + 1] = []
            continue
        chain = []
        for e in case.edges:
            s = next_id
            next_id += 1
            W.remove_edge(*e)
            W.add_edges_from([(e[0], s), (e[1], s)])
            sub_vertex[e] = s
            chain.append((e, s))
        # the detour runs u -> (crossed edge of u) -> ... -> w; case.edges lists the w side first
        chain.reverse() if case.distance == 2 else None
        path = [s for _, s in chain]
        if order[i - 1] != u:
            path.reverse()
        prev = order[i - 1]
        for s in path:
            W.add_edge(prev, s)
            witness_only.add(edge(prev, s))
            prev = s
        nxt = order[(i + 1) % len(order)]
        W.add_edge(prev, nxt)
        witness_only.add(edge(prev, nxt))
        order[i : i + 1] = path
    # dummy ids are gone: relabel so the witness uses dense ids
    keep = sorted(set(order))
    assert keep == sorted(W.nodes), "witness vertex set mismatch"
    mapping = {x: k for k, x in enumerate(keep)}
    Wr = nx.relabel_nodes(W, mapping)
    cycle = HamCycle(tuple(mapping[x] for x in order))
    ok, emb = nx.check_planarity(Wr)
    if not ok:
        raise PreconditionError("witness graph is not planar")
    err = verify_cycle(Wr, cycle)
    if err is not None:
        raise PreconditionError(f"witness cycle invalid: {err}")
    rot = [list(reversed(list(emb.neighbors_cw_order(v)))) if Wr.degree(v) else [] for v in range(Wr.number_of_nodes())]
    witness = PlaneGraph(rot)
    wonly = sorted(edge(mapping[a], mapping[b]) for a, b in witness_only if Wr.has_edge(mapping[a], mapping[b]))
    sub_map = {e: mapping[s] for e, s in sub_vertex.items()}
    subdivided = sorted(sub_map)
    # the subdivided input: original edges minus subdivided ones, plus the two halves of each
    edges = [e for e in original.edges() if e not in sub_map]
    for e, s in sub_map.items():
        edges += [edge(e[0], s), edge(e[1], s)]
    sg = PlaneGraph.from_edges(n + len(sub_map), edges)
    return SubdivisionResult(subdivided, witness, cycle, sg, wonly, sub_map, cases)
