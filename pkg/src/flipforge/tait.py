"""Four-colourings and the induced partition of edges into three perfect dual matchings."""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .core import Diagnostic, Edge, Triangulation, TriangulationError, edge, triangle_triples

CLASSES = ("D1", "D2", "D3")

_PAIR_CLASS = {
    frozenset((1, 2)): "D1",
    frozenset((3, 4)): "D1",
    frozenset((1, 3)): "D2",
    frozenset((2, 4)): "D2",
    frozenset((1, 4)): "D3",
    frozenset((2, 3)): "D3",
}


class ImproperColoringError(TriangulationError):
    pass


class ColoringSearchExhausted(RuntimeError):
    """Raised only if every strategy fails; indicates a bug for planar input."""


@dataclass(frozen=True)
class VertexColoring:
    colors: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.colors[v]


@dataclass(frozen=True)
class TaitPartition:
    class_of: Mapping[Edge, str]

    def __post_init__(self):
        object.__setattr__(self, "class_of", MappingProxyType(dict(self.class_of)))

    def classes(self) -> dict[str, list[Edge]]:
        out: dict[str, list[Edge]] = {k: [] for k in CLASSES}
        for e, k in self.class_of.items():
            out[k].append(e)
        for k in out:
            out[k].sort()
        return out

    def edges_of(self, k: str) -> list[Edge]:
        return self.classes()[k]

    def to_json_obj(self) -> dict:
        return {"classes": {k: [list(e) for e in v] for k, v in self.classes().items()}}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TaitPartition":
        out = {}
        for k, es in obj["classes"].items():
            for u, v in es:
                out[edge(u, v)] = k
        return cls(out)


# -- colouring ----------------------------------------------------------------


def _smallest_last(adj: list[frozenset[int]]) -> list[int]:
    n = len(adj)
    deg = [len(a) for a in adj]
    buckets: dict[int, set[int]] = {}
    for v in range(n):
        buckets.setdefault(deg[v], set()).add(v)
    removed = [False] * n
    order = []
    d = 0
    for _ in range(n):
        d = max(0, d - 1)
        while not buckets.get(d):
            d += 1
        v = min(buckets[d])
        buckets[d].remove(v)
        removed[v] = True
        order.append(v)
        for w in adj[v]:
            if not removed[w]:
                buckets[deg[w]].remove(w)
                deg[w] -= 1
                buckets.setdefault(deg[w], set()).add(w)
    order.reverse()
    return order


def _kempe_chain(adj, col, start: int, a: int, b: int) -> list[int]:
    chain = [start]
    seen = {start}
    i = 0
    while i < len(chain):
        x = chain[i]
        i += 1
        for y in sorted(adj[x]):
            if y not in seen and col[y] in (a, b):
                seen.add(y)
                chain.append(y)
    return chain


def _kempe_free(adj, col, v: int) -> int:
    """Recolour Kempe chains around ``v`` until a colour is free; 0 if that fails."""
    nbrs = sorted(adj[v])
    for a in range(1, 5):
        for b in range(a + 1, 5):
            for u in nbrs:
                if col[u] != a:
                    continue
                chain = _kempe_chain(adj, col, u, a, b)
                for x in chain:
                    col[x] = b if col[x] == a else a
                used = {col[w] for w in nbrs}
                free = next((c for c in range(1, 5) if c not in used), 0)
                if free:
                    return free
                for x in chain:
                    col[x] = b if col[x] == a else a
    return 0


def _dsatur(adj: list[frozenset[int]], budget: int) -> list[int] | None:
    n = len(adj)
    col = [0] * n
    nodes = 0

    def pick() -> int:
        best, key = -1, None
        for v in range(n):
            if col[v]:
                continue
            k = (len({col[w] for w in adj[v]} - {0}), len(adj[v]), -v)
            if key is None or k > key:
                best, key = v, k
        return best

    def rec(left: int) -> bool:
        nonlocal nodes
        if left == 0:
            return True
        nodes += 1
        if nodes > budget:
            return False
        v = pick()
        used = {col[w] for w in adj[v]}
        for c in range(1, 5):
            if c not in used:
                col[v] = c
                if rec(left - 1):
                    return True
        col[v] = 0
        return False

    return col if rec(n) else None


def four_color(t: Triangulation, budget: int = 2_000_000) -> VertexColoring:
    """Deterministic proper 4-colouring.

    Greedy over a smallest-last order, with Kempe-chain repairs at dead ends;
    DSATUR backtracking is the fallback if a repair ever fails.
    """
    adj = t.adjacency
    col = [0] * t.n
    for v in _smallest_last(adj):
        used = {col[w] for w in adj[v]}
        c = next((c for c in range(1, 5) if c not in used), 0)
        if not c:
            c = _kempe_free(adj, col, v)
        if not c:
            break
        col[v] = c
    else:
        return _checked(t, col)
    res = _dsatur(adj, budget)
    if res is None:
        raise ColoringSearchExhausted(f"4-colouring search exceeded {budget} nodes")
    return _checked(t, res)


def _checked(t: Triangulation, col: list[int]) -> VertexColoring:
    c = VertexColoring(tuple(col))
    bad = improper_edge(t, c)
    if bad is not None:  # pragma: no cover - internal consistency guard
        raise ColoringSearchExhausted(f"internal colouring error at edge {bad}")
    return c


def improper_edge(t: Triangulation, c: VertexColoring) -> Edge | None:
    if len(c.colors) != t.n:
        return (-1, -1)
    for v in range(t.n):
        if c.colors[v] not in (1, 2, 3, 4):
            return (v, v)
    for u, v in t.edges():
        if c.colors[u] == c.colors[v]:
            return (u, v)
    return None


# -- partition ----------------------------------------------------------------


def tait_partition(t: Triangulation, c: VertexColoring) -> TaitPartition:
    bad = improper_edge(t, c)
    if bad is not None:
        raise ImproperColoringError(f"colouring is improper at {bad}")
    col = c.colors
    return TaitPartition({(u, v): _PAIR_CLASS[frozenset((col[u], col[v]))] for u, v in t.edges()})


def partition(t: Triangulation) -> TaitPartition:
    return tait_partition(t, four_color(t))


def verify_partition(t: Triangulation, p: TaitPartition) -> Diagnostic | None:
    cls = p.class_of
    edges = t.edges()
    for e in edges:
        if e not in cls:
            return Diagnostic("unclassified edge", f"edge {e} has no class")
        if cls[e] not in CLASSES:
            return Diagnostic("unknown class", f"edge {e} has class {cls[e]!r}")
    es = set(edges)
    for e in cls:
        if e not in es:
            return Diagnostic("foreign edge", f"{e} is not an edge of the triangulation")
    faces = t.face_set()
    for a, b, c in triangle_triples(t):
        ks = sorted(cls[x] for x in (edge(a, b), edge(a, c), edge(b, c)))
        if ks != list(CLASSES):
            kind = "face" if (a, b, c) in faces else "separating triangle"
            return Diagnostic("triangle hit", f"{kind} {(a, b, c)} has classes {ks}")
    return None
