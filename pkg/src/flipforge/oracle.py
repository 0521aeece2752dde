"""Exhaustive ground truth for small triangulations.

Everything here is exponential and guarded by caps.  Counters of explored
candidates are compared against a budget (``FLIPFORGE_BUDGET`` overrides the
default); exceeding it raises instead of returning a truncated answer.
"""

from __future__ import annotations

import builtins
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable

import networkx as nx

from .bookembed import (
    ArcDiagram,
    ConflictGraphError,
    _as_nx,
    _two_colour,
    augment_to_triangulation,
    page_assignment,
)
from .core import (
    Edge,
    PlaneGraph,
    PreconditionError,
    Triangulation,
    TriangulationError,
    canonical_code,
    check_simultaneous,
    edge,
    flip,
    flip_apexes,
    is_four_connected,
    separating_triangles,
    simultaneous_flip,
    subdivide_edge,
)
from .generators import stacked_random
from .hamiltonize import HamCycle, SearchBudgetExceeded, _backtrack, default_budget

MAX_ENUM_N = 10
MAX_SIMFLIP_N = 12
MAX_SUBHAM_N = 9
MAX_BIARC_N = 8
INFINITY = math.inf


class OracleBudgetError(SearchBudgetExceeded):
    pass


def _cap(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise OracleBudgetError(f"{what} is capped at n={limit}, got n={n}")


class _Counter:
    def __init__(self, budget: int | None, what: str):
        self.left = budget or default_budget()
        self.what = what

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise OracleBudgetError(f"{self.what} exceeded its budget")


# -- reference isomorphism code ---------------------------------------------------


def reference_code(t: Triangulation | PlaneGraph) -> str:
    """Second isomorphism key: DFS relabelling from every dart, minimum sorted face list.

    Independent of :func:`flipforge.core.canonical_code`; both must induce the
    same classes.
    """
    n = t.n
    best = None
    for mirrored in (False, True):
        rot = [tuple(reversed(r)) if mirrored else tuple(r) for r in t.rotations]
        for s in range(n):
            for first in rot[s]:
                label = _dfs_labels(rot, s, first)
                key = sorted(
                    _norm_face(label[u], label[v], label[w])
                    for u in range(n)
                    for v, w in zip(rot[u], rot[u][1:] + rot[u][:1])
                )
                if best is None or key < best:
                    best = key
    faces = sorted(set(best or []))
    return f"{n}:" + ";".join(f"{a},{b},{c}" for a, b, c in faces)


def _dfs_labels(rot, s: int, first: int) -> list[int]:
    label = [-1] * len(rot)
    label[s] = 0
    nxt = 1
    stack = [(s, _from(rot[s], first))]
    while stack:
        x, it = stack[-1]
        for y in it:
            if label[y] < 0:
                label[y] = nxt
                nxt += 1
                stack.append((y, _from(rot[y], x)))
                break
        else:
            stack.pop()
    return label


def _from(r: tuple[int, ...], anchor: int):
    i = r.index(anchor)
    return iter(r[i:] + r[:i])


def _norm_face(a: int, b: int, c: int) -> tuple[int, int, int]:
    # rotate the oriented triple so the smallest label comes first
    m = min(a, b, c)
    if m == a:
        return (a, b, c)
    if m == b:
        return (b, c, a)
    return (c, a, b)


# -- flip graph ---------------------------------------------------------------


@dataclass
class FlipGraphIndex:
    """Isomorphism classes of triangulations on ``n`` vertices and the flips between them."""

    n: int
    nodes: tuple = ()
    reps: dict = field(default_factory=dict, repr=False)
    adjacency: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def distances_from(self, code) -> dict:
        dist = {code: 0}
        q = deque([code])
        while q:
            x = q.popleft()
            for y in sorted(self.adjacency[x]):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        return dist

    def diameter(self) -> int:
        return max(max(self.distances_from(c).values()) for c in self.nodes)


def enumerate_triangulations(n: int, code: Callable = canonical_code) -> FlipGraphIndex:
    """All triangulations on ``n`` vertices up to isomorphism, by BFS over flips."""
    if n < 4:
        raise TriangulationError("triangulations need at least 4 vertices")
    _cap(n, MAX_ENUM_N, "enumeration")
    start = stacked_random(n - 4, 0)
    c0 = code(start)
    reps = {c0: start}
    adj: dict = {c0: set()}
    q = deque([c0])
    while q:
        c = q.popleft()
        t = reps[c]
        for e in t.edges():
            a, b = flip_apexes(t, e)
            if a == b or t.has_edge(a, b):
                continue
            t2, _ = flip(t, e)
            c2 = code(t2)
            if c2 not in reps:
                reps[c2] = t2
                adj[c2] = set()
                q.append(c2)
            if c2 != c:
                adj[c].add(c2)
                adj[c2].add(c)
    nodes = tuple(sorted(reps))
    return FlipGraphIndex(n, nodes, reps, {k: frozenset(v) for k, v in adj.items()})


enumerate = enumerate_triangulations  # noqa: A001


def flip_distance(a: Triangulation, b: Triangulation, index: FlipGraphIndex | None = None) -> int:
    """Fewest flips turning ``a`` into some triangulation isomorphic to ``b``.

    Flips commute with relabelling, so the search runs on isomorphism classes.
    """
    if a.n != b.n:
        raise TriangulationError("flip distance needs equal vertex counts")
    index = index or enumerate_triangulations(a.n)
    ca, cb = canonical_code(a), canonical_code(b)
    if ca == cb:
        return 0
    return index.distances_from(ca)[cb]


MAX_LABELLED_N = 8


def _edge_bit(n: int, u: int, v: int) -> int:
    if u > v:
        u, v = v, u
    return 1 << (u * n + v)


def _labelled_bfs(t: Triangulation, target: int | None = None) -> tuple[int, int]:
    """Layered BFS over labelled triangulations keyed by edge set.

    A triangulation is 3-connected, so its graph fixes its faces and the edge
    set identifies the labelled triangulation.  Returns ``(eccentricity,
    states)``, or ``(distance, states)`` once ``target`` is reached.
    """
    n = t.n
    start = 0
    for u, v in t.edges():
        start |= _edge_bit(n, u, v)
    if target == start:
        return 0, 1
    seen = {start}
    layer = [(start, t.rotations)]
    depth = 0
    while layer:
        nxt = []
        for mask, rot in layer:
            for a in range(n):
                ra = rot[a]
                k = len(ra)
                for i in range(k):
                    b = ra[i]
                    if b < a:
                        continue
                    d = ra[i - 1]  # apex left of b -> a
                    rb = rot[b]
                    c = rb[rb.index(a) - 1]  # apex left of a -> b
                    if c == d or mask & _edge_bit(n, c, d):
                        continue
                    m2 = (mask & ~_edge_bit(n, a, b)) | _edge_bit(n, c, d)
                    if m2 in seen:
                        continue
                    seen.add(m2)
                    if m2 == target:
                        return depth + 1, len(seen)
                    r2 = list(rot)
                    r2[a] = tuple(x for x in ra if x != b)
                    r2[b] = tuple(x for x in rb if x != a)
                    rc = rot[c]
                    j = rc.index(a) + 1
                    r2[c] = rc[:j] + (d,) + rc[j:]
                    rd = rot[d]
                    j = rd.index(b) + 1
                    r2[d] = rd[:j] + (c,) + rd[j:]
                    nxt.append((m2, tuple(r2)))
        if not nxt:
            break
        depth += 1
        layer = nxt
    if target is not None:
        raise TriangulationError("target is not reachable by flips")
    return depth, len(seen)


def labelled_flip_distance(a: Triangulation, b: Triangulation) -> int:
    """Fewest flips turning ``a`` into ``b`` with labels kept (same edge set)."""
    if a.n != b.n:
        raise TriangulationError("flip distance needs equal vertex counts")
    _cap(a.n, MAX_LABELLED_N, "labelled flip search")
    target = 0
    for u, v in b.edges():
        target |= _edge_bit(b.n, u, v)
    return _labelled_bfs(a, target)[0]


def labelled_flip_diameter(n: int, index: FlipGraphIndex | None = None) -> int:
    """Largest labelled flip distance between triangulations on ``n`` vertices.

    Relabelling preserves distances, so the eccentricity of one
    representative per isomorphism class covers every pair.
    """
    _cap(n, MAX_LABELLED_N, "labelled flip search")
    index = index or enumerate_triangulations(n)
    return max(_labelled_bfs(index.reps[c])[0] for c in index.nodes)


# -- simultaneous flips ----------------------------------------------------------


def min_simflip_to_4connected(t: Triangulation, budget: int | None = None) -> int | float:
    """Smallest valid simultaneous flip set whose result is 4-connected (``INFINITY`` if none)."""
    _cap(t.n, MAX_SIMFLIP_N, "simultaneous-flip search")
    if t.n < 6:
        return INFINITY
    seps = separating_triangles(t)
    if not seps:
        return 0
    edges = t.edges()
    hits = []
    for u, v in edges:
        mask = 0
        for j, s in builtins.enumerate(seps):
            if u in s and v in s:
                mask |= 1 << j
        hits.append(mask)
    faces = [(_face_of(t, u, v), _face_of(t, v, u)) for u, v in edges]
    full = (1 << len(seps)) - 1
    top = max(bin(h).count("1") for h in hits)
    counter = _Counter(budget, "simultaneous-flip search")

    def valid(F: list[Edge]) -> bool:
        try:
            check_simultaneous(t, F)
        except PreconditionError:
            return False
        out, _ = simultaneous_flip(t, F)
        return is_four_connected(out)

    def search(k: int, start: int, chosen: list[int], used: set, hit: int) -> bool:
        if len(chosen) == k:
            counter.tick()
            return hit == full and valid([edges[i] for i in chosen])
        slots = k - len(chosen)
        if bin(full & ~hit).count("1") > slots * top:
            return False
        for i in range(start, len(edges)):
            f1, f2 = faces[i]
            if f1 in used or f2 in used:
                continue
            chosen.append(i)
            used.add(f1)
            used.add(f2)
            if search(k, i + 1, chosen, used, hit | hits[i]):
                return True
            chosen.pop()
            used.discard(f1)
            used.discard(f2)
        return False

    for k in range(1, len(edges) + 1):
        if search(k, 0, [], set(), 0):
            return k
    return INFINITY


def _face_of(t: Triangulation, u: int, v: int) -> tuple[int, int, int]:
    return tuple(sorted((u, v, t.left_apex(u, v))))  # type: ignore[return-value]


# -- subhamiltonicity and biarcs ---------------------------------------------------


def is_subhamiltonian(g, budget: int | None = None) -> tuple[bool, ArcDiagram | None]:
    """Whether some cyclic order puts every edge on one of two pages; the witness drawing if so.

    Vertex 0 is fixed first and the orientation is fixed, so ``(n-1)!/2``
    orders are tried at most.
    """
    h = _as_nx(g)
    n = h.number_of_nodes()
    _cap(n, MAX_SUBHAM_N, "subhamiltonicity search")
    edges = sorted(edge(*e) for e in h.edges)
    if n <= 3:
        order = tuple(range(n))
        return True, page_assignment(h, HamCycle(order)) if n == 3 else None
    if not nx.check_planarity(h)[0]:
        return False, None
    # in a plane graph any Hamiltonian cycle splits the chords into inside and outside
    adj = [sorted(h.adj[v]) for v in range(n)]
    counter = _Counter(budget, "subhamiltonicity search")
    found = _backtrack(adj, counter.left)
    if found is not None:
        return True, page_assignment(h, HamCycle(tuple(found)))
    for perm in itertools.permutations(range(1, n)):
        if perm[0] > perm[-1]:
            continue
        counter.tick()
        order = (0,) + perm
        if _two_pages(order, edges):
            return True, page_assignment(h, HamCycle(order))
    return False, None


def _two_pages(order, edges) -> bool:
    pos = {v: i for i, v in builtins.enumerate(order)}
    n = len(order)
    chords = []
    for u, v in edges:
        a, b = sorted((pos[u], pos[v]))
        if b - a != 1 and not (a == 0 and b == n - 1):
            chords.append((a, b, (u, v)))
    try:
        _two_colour(chords)
    except ConflictGraphError:
        return False
    return True


def min_biarcs(g, budget: int | None = None) -> int:
    """Fewest edges whose subdivision leaves a subhamiltonian graph.

    For a maximal planar input the subdivided graph has a unique embedding,
    so its planar supergraphs are exactly the chord completions of the faces
    around subdivision vertices; each completion is tested for a Hamiltonian
    cycle.  Other inputs fall back to order enumeration.
    """
    h = _as_nx(g)
    n = h.number_of_nodes()
    _cap(n, MAX_BIARC_N, "biarc minimisation")
    edges = sorted(edge(*e) for e in h.edges)
    counter = _Counter(budget, "biarc minimisation")
    maximal = n >= 4 and len(edges) == 3 * n - 6
    if maximal:
        base = augment_to_triangulation(h)[0].to_plane_graph()
    for k in range(len(edges) + 1):
        for S in itertools.combinations(edges, k):
            counter.tick()
            if maximal:
                if _completion_hamiltonian(base, S, counter):
                    return k
            elif is_subhamiltonian(_subdivided_nx(n, edges, S), counter.left)[0]:
                return k
    raise AssertionError("subdividing every edge always gives a subhamiltonian graph")  # pragma: no cover


def _subdivided_nx(n: int, edges, S) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(n + len(S)))
    drop = set(S)
    h.add_edges_from(e for e in edges if e not in drop)
    for j, (u, v) in builtins.enumerate(S):
        h.add_edges_from([(u, n + j), (v, n + j)])
    return h


def _completion_hamiltonian(base: PlaneGraph, S, counter: _Counter) -> bool:
    g = base
    for e in S:
        g = subdivide_edge(g, e)
    subs = set(range(base.n, g.n))
    adj = [set(r) for r in g.rotations]
    options = []
    for walk in g.face_walks():
        if len(walk) > 3 and subs & set(walk):
            options.append(_maximal_chord_sets(walk, adj))
    for combo in itertools.product(*options):
        chords = [c for part in combo for c in part]
        if len(set(chords)) != len(chords):
            continue
        counter.tick()
        a2 = [set(x) for x in adj]
        for u, v in chords:
            a2[u].add(v)
            a2[v].add(u)
        if _backtrack([sorted(x) for x in a2], counter.left) is not None:
            return True
    return False


def _maximal_chord_sets(walk, adj) -> list[list[Edge]]:
    L = len(walk)
    cand = []
    for i in range(L):
        for j in range(i + 2, L):
            if i == 0 and j == L - 1:
                continue
            u, v = walk[i], walk[j]
            if u != v and v not in adj[u]:
                cand.append((i, j))

    def cross(p, q):
        (a, b), (c, d) = p, q
        return a < c < b < d or c < a < d < b

    sets = []
    for r in range(len(cand), -1, -1):
        for sub in itertools.combinations(cand, r):
            if any(cross(p, q) for p, q in itertools.combinations(sub, 2)):
                continue
            if any(set(sub) < s for s in sets):
                continue
            sets.append(set(sub))
    return [sorted(edge(walk[i], walk[j]) for i, j in s) for s in sets]

__all__ = [
    "INFINITY",
    "FlipGraphIndex",
    "OracleBudgetError",
    "enumerate",
    "enumerate_triangulations",
    "flip_distance",
    "is_subhamiltonian",
    "labelled_flip_diameter",
    "labelled_flip_distance",
    "min_biarcs",
    "min_simflip_to_4connected",
    "reference_code",
]
