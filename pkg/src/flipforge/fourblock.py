"""Rooted 4-block trees of triangulations.

Every separating triangle ``S`` splits the host into an outside and an
inside.  A vertex belongs to the block of the innermost separating triangle
that contains it (or to the root block if none does); each block also owns
its boundary triangle.  Node 0 is the root, the block holding the outer
face; the other ids follow the sorted boundary triples.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable

from .core import Edge, Triangulation, TriangulationError, edge, separating_triangles, tri

FREE = "free"
SINGLY = "singly_trapped"
DOUBLY = "doubly_trapped"
OUTER = "outer"


class SingletonTreeError(TriangulationError):
    pass


class NotCheckerboardError(TriangulationError):
    pass


@dataclass(frozen=True)
class BlockNode:
    id: int
    boundary: tuple[int, int, int]
    vertices: tuple[int, ...]
    parent: int | None
    children: tuple[int, ...] = ()
    flips_used: int = 0
    dummies_used: int = 0

    @property
    def interior_size(self) -> int:
        return len(self.vertices) - 3

    @property
    def boundary_edges(self) -> tuple[Edge, Edge, Edge]:
        a, b, c = self.boundary
        return (edge(a, b), edge(a, c), edge(b, c))


@dataclass(frozen=True)
class StepCarry:
    """Which node a step operated on and what it spent there."""

    node: int
    flips: int = 0
    dummies: int = 0


@dataclass(frozen=True)
class FourBlockTree:
    host: Triangulation
    nodes: tuple[BlockNode, ...]
    _by_boundary: dict = field(default_factory=dict, compare=False, repr=False)

    root = 0

    def __len__(self) -> int:
        return len(self.nodes)

    def node(self, i: int) -> BlockNode:
        return self.nodes[i]

    def is_leaf(self, i: int) -> bool:
        return not self.nodes[i].children

    def node_with_boundary(self, s: Iterable[int]) -> int | None:
        return self._by_boundary.get(tri(*s))

    def child_triangles(self, i: int) -> list[tuple[int, int, int]]:
        return [self.nodes[c].boundary for c in self.nodes[i].children]

    def block_rotations(self, i: int) -> dict[int, tuple[int, ...]]:
        vs = set(self.nodes[i].vertices)
        return {v: tuple(w for w in self.host.rotations[v] if w in vs) for v in self.nodes[i].vertices}

    def block_edges(self, i: int) -> list[Edge]:
        rot = self.block_rotations(i)
        return sorted((u, v) for u, r in rot.items() for v in r if u < v)

    def block_faces(self, i: int) -> list[tuple[int, int, int]]:
        out = set()
        for u, r in self.block_rotations(i).items():
            prev = r[-1]
            for v in r:
                out.add(tri(u, v, prev))
                prev = v
        return sorted(out)

    def block(self, i: int) -> tuple[Triangulation, tuple[int, ...]]:
        """Block ``i`` relabelled to ``0..k-1``, plus the host id of each local id."""
        vs = self.nodes[i].vertices
        local = {v: j for j, v in enumerate(vs)}
        rot = self.block_rotations(i)
        return (
            Triangulation([[local[w] for w in rot[v]] for v in vs], [local[v] for v in self.nodes[i].boundary]),
            vs,
        )

    def depth(self, i: int) -> int:
        d = 0
        while self.nodes[i].parent is not None:
            i = self.nodes[i].parent
            d += 1
        return d

    def to_json_obj(self) -> dict:
        return {
            "nodes": [
                {
                    "id": nd.id,
                    "boundary": list(nd.boundary),
                    "vertices": list(nd.vertices),
                    "parent": nd.parent,
                    "children": list(nd.children),
                    "f": nd.flips_used,
                    "d": nd.dummies_used,
                }
                for nd in self.nodes
            ]
        }


# -- construction -------------------------------------------------------------


def _smaller_side(t: Triangulation, s: tuple[int, int, int]) -> set[int]:
    """One component of ``t - s``, found by searching both sides in lockstep."""
    a, b, c = s
    r = t.rotations[a]
    i, j = r.index(b), r.index(c)
    if i > j:
        i, j = j, i
    arc1 = r[i + 1 : j]
    arc2 = r[j + 1 :] + r[:i]
    blocked = set(s)
    seen = [set(arc1), set(arc2)]
    queues = [deque(arc1), deque(arc2)]
    adj = t.rotations
    while True:
        for k in (0, 1):
            q = queues[k]
            if not q:
                return seen[k]
            x = q.popleft()
            for y in adj[x]:
                if y not in blocked and y not in seen[k]:
                    seen[k].add(y)
                    q.append(y)


def interior(t: Triangulation, s: tuple[int, int, int]) -> set[int]:
    """Vertices strictly inside separating triangle ``s`` (the side away from the outer face)."""
    side = _smaller_side(t, s)
    probe = next(v for v in t.outer_face if v not in s)
    if probe not in side:
        return side
    return set(range(t.n)) - side - set(s)


def build(t: Triangulation) -> FourBlockTree:
    seps = separating_triangles(t)
    inner = {s: interior(t, s) for s in seps}
    home: list[tuple[int, int, int] | None] = [None] * t.n
    # larger interiors first so that the innermost triangle wins
    for s in sorted(seps, key=lambda s: (-len(inner[s]), s)):
        for v in inner[s]:
            home[v] = s
    ids = {s: k + 1 for k, s in enumerate(sorted(seps))}

    def depth_key(s):
        return len(inner[s])

    parent_of: dict[tuple[int, int, int], int] = {}
    for s in seps:
        cands = [home[x] for x in s if home[x] is not None]
        parent_of[s] = ids[min(cands, key=depth_key)] if cands else 0
    members: list[list[int]] = [[] for _ in range(len(seps) + 1)]
    for v in range(t.n):
        members[0 if home[v] is None else ids[home[v]]].append(v)
    for s in seps:
        members[ids[s]].extend(s)
    children: list[list[int]] = [[] for _ in range(len(seps) + 1)]
    for s in sorted(seps):
        children[parent_of[s]].append(ids[s])
    nodes = [BlockNode(0, tri(*t.outer_face), tuple(sorted(members[0])), None, tuple(children[0]))]
    for s in sorted(seps):
        k = ids[s]
        nodes.append(BlockNode(k, s, tuple(sorted(members[k])), parent_of[s], tuple(children[k])))
    return FourBlockTree(t, tuple(nodes), {nd.boundary: nd.id for nd in nodes[1:]})


def with_counters(bt: FourBlockTree, counters: dict[int, tuple[int, int]]) -> FourBlockTree:
    nodes = tuple(
        replace(nd, flips_used=counters.get(nd.id, (0, 0))[0], dummies_used=counters.get(nd.id, (0, 0))[1])
        for nd in bt.nodes
    )
    return FourBlockTree(bt.host, nodes, bt._by_boundary)


CHECK_REBUILD = False  # tests switch this on to compare against a full build


def rebuild_after(bt: FourBlockTree, t2: Triangulation, carry: StepCarry | None = None) -> FourBlockTree:
    """Decompose ``t2`` and carry counters over from ``bt``.

    An old node whose boundary is still a separating triangle keeps its
    identity; any other node has merged into its nearest surviving ancestor.
    The step's own flips and dummy flips are charged to the node that
    ``carry.node`` merged into.  Vertices added by the step are placed in
    that node as well.
    """
    seps2 = separating_triangles(t2)
    new = _merged(bt, t2, seps2, carry)
    if new is None or CHECK_REBUILD:
        full = build(t2)
        if new is not None and new.nodes != full.nodes:
            raise AssertionError("incremental 4-block tree differs from a full build")
        new = full

    def image(j: int) -> int:
        while j != 0:
            k = new.node_with_boundary(bt.nodes[j].boundary)
            if k is not None:
                return k
            j = bt.nodes[j].parent
        return 0

    sums: dict[int, list[int]] = {}
    for nd in bt.nodes:
        acc = sums.setdefault(image(nd.id), [0, 0])
        acc[0] += nd.flips_used
        acc[1] += nd.dummies_used
    if carry is not None:
        acc = sums.setdefault(image(carry.node), [0, 0])
        acc[0] += carry.flips
        acc[1] += carry.dummies
    return with_counters(new, {k: (v[0], v[1]) for k, v in sums.items()})


def homes(bt: FourBlockTree) -> list[int]:
    """The node each vertex is interior to (root for the outer face)."""
    home = [0] * bt.host.n
    for nd in bt.nodes[1:]:
        for v in nd.vertices:
            if v not in nd.boundary:
                home[v] = nd.id
    return home


def _merged(bt: FourBlockTree, t2: Triangulation, seps2, carry: StepCarry | None) -> FourBlockTree | None:
    """The tree of ``t2`` when it only lost separating triangles; ``None`` otherwise.

    Edges never cross a triangle, so a vertex stays on its side of every
    surviving separating triangle and its new home is the nearest surviving
    ancestor of its old one.
    """
    old = bt.nodes
    keep = set(seps2)
    if not keep <= set(bt._by_boundary):
        return None
    if t2.n > bt.host.n and carry is None:
        return None

    def image(j: int) -> int:
        while j != 0 and old[j].boundary not in keep:
            j = old[j].parent
        return j

    ids = {s: k + 1 for k, s in enumerate(sorted(keep))}

    def new_id(j: int) -> int:
        return 0 if j == 0 else ids[old[j].boundary]

    home = [new_id(image(h)) for h in homes(bt)]
    if t2.n > bt.host.n:
        home += [new_id(image(carry.node))] * (t2.n - bt.host.n)
    members: list[list[int]] = [[] for _ in range(len(keep) + 1)]
    for v, h in enumerate(home):
        members[h].append(v)
    parent = {0: None}
    children: list[list[int]] = [[] for _ in range(len(keep) + 1)]
    for s in sorted(keep):
        j = bt._by_boundary[s]
        k = ids[s]
        members[k].extend(s)
        parent[k] = new_id(image(old[j].parent))
        children[parent[k]].append(k)
    nodes = [BlockNode(0, tri(*t2.outer_face), tuple(sorted(members[0])), None, tuple(children[0]))]
    for s in sorted(keep):
        k = ids[s]
        nodes.append(BlockNode(k, s, tuple(sorted(members[k])), parent[k], tuple(children[k])))
    return FourBlockTree(t2, tuple(nodes), {nd.boundary: nd.id for nd in nodes[1:]})


def free_edge_counts(bt: FourBlockTree, uncredited: frozenset[Edge] | None = None) -> list[int]:
    """``free_edge_count`` for every node in one pass over the host edges.

    An edge is free exactly when it lies on no separating triangle, and it
    then belongs to the deeper of its endpoints' home blocks.  With
    ``uncredited`` the root counts its outer edges too, except those listed.
    """
    t = bt.host
    home = homes(bt)
    depth = [0] * len(bt)
    for nd in bt.nodes:
        d, j = 0, nd.id
        while bt.nodes[j].parent is not None:
            j = bt.nodes[j].parent
            d += 1
        depth[nd.id] = d
    trapped = set()
    for s in separating_triangles(t):
        trapped.update(_tri_edges(s))
    outer = set(_tri_edges(tri(*t.outer_face)))
    counts = [0] * len(bt)
    for u, v in t.edges():
        if (u, v) in trapped:
            continue
        hu, hv = home[u], home[v]
        k = hu if depth[hu] >= depth[hv] else hv
        if k == 0:
            if uncredited is None:
                if (u, v) in outer:
                    continue
            elif (u, v) in uncredited:
                continue
        counts[k] += 1
    return counts


# -- queries --------------------------------------------------------------------


def penultimate_nodes(bt: FourBlockTree) -> list[int]:
    if len(bt) < 2:
        raise SingletonTreeError("the 4-block tree has a single node")
    return [nd.id for nd in bt.nodes if nd.children and all(bt.is_leaf(c) for c in nd.children)]


def classify_edges(bt: FourBlockTree, i: int) -> dict[Edge, str]:
    outer = set(bt.nodes[i].boundary_edges)
    hits: dict[Edge, int] = {}
    for a, b, c in bt.child_triangles(i):
        for e in (edge(a, b), edge(a, c), edge(b, c)):
            hits[e] = hits.get(e, 0) + 1
    out = {}
    for e in bt.block_edges(i):
        if e in outer:
            out[e] = OUTER
        else:
            out[e] = (FREE, SINGLY, DOUBLY)[hits.get(e, 0)]
    return out


def is_checkerboard(bt: FourBlockTree, i: int) -> bool:
    if bt.is_leaf(i):
        return False
    return all(k in (OUTER, SINGLY) for k in classify_edges(bt, i).values())


def free_edge_count(bt: FourBlockTree, i: int, interior_only: bool = True) -> int:
    """Edges of block ``i`` on no separating triangle of the host."""
    kinds = classify_edges(bt, i)
    n = sum(k == FREE for k in kinds.values())
    if not interior_only and bt.nodes[i].parent is None:
        # outer edges of the root are free when they lie on no child triangle
        trapped = {e for s in bt.child_triangles(i) for e in _tri_edges(s)}
        n += sum(1 for e, k in kinds.items() if k == OUTER and e not in trapped)
    return n


def _tri_edges(s: tuple[int, int, int]) -> tuple[Edge, Edge, Edge]:
    a, b, c = s
    return (edge(a, b), edge(a, c), edge(b, c))


def glue(bt: FourBlockTree) -> Triangulation:
    """The represented graph: union of all blocks glued along shared triangles."""
    faces = set()
    for i in range(len(bt)):
        child = set(bt.child_triangles(i))
        for f in bt.block_faces(i):
            if f in child or (bt.nodes[i].parent is not None and f == bt.nodes[i].boundary):
                continue
            faces.add(f)
    return Triangulation.from_faces(sorted(faces), bt.host.outer_face)
