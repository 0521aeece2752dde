"""Embedded maximal planar graphs as rotation systems, and combinatorial flips.

A :class:`Triangulation` stores, for every vertex, its neighbours in
counterclockwise order.  The face to the left of the dart ``u -> v`` is
``(u, v, w)`` where ``w`` precedes ``u`` in the rotation of ``v``.  All
objects are immutable; every operation returns a new value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import kernels

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Normalised (sorted) edge key."""
    return (u, v) if u < v else (v, u)


def tri(a: int, b: int, c: int) -> tuple[int, int, int]:
    return tuple(sorted((a, b, c)))  # type: ignore[return-value]


class TriangulationError(ValueError):
    """Base class for invalid-input errors raised by this package."""


class UnknownEdgeError(TriangulationError):
    pass


class NotFlippableError(TriangulationError):
    def __init__(self, e: Edge, obstruction: str):
        super().__init__(f"edge {e} is not flippable: {obstruction}")
        self.edge = e
        self.obstruction = obstruction


class PreconditionError(TriangulationError):
    pass


@dataclass(frozen=True)
class Diagnostic:
    """Why a structure failed validation; falsy-free stand-in for 'not ok'."""

    rule: str
    detail: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.detail}"


@dataclass(frozen=True, order=True)
class Triangle:
    vertices: tuple[int, int, int]
    kind: str = "facial"

    @property
    def edges(self) -> tuple[Edge, Edge, Edge]:
        a, b, c = self.vertices
        return (edge(a, b), edge(a, c), edge(b, c))


@dataclass(frozen=True)
class FlipRecord:
    removed: Edge
    created: Edge
    step_index: int = 0


class PlaneGraph:
    """A (not necessarily maximal) embedded planar graph.

    Used for subdivisions, augmentation inputs and Hamiltonian witnesses.
    Rotations may be empty for isolated vertices.
    """

    __slots__ = ("n", "rotations", "_adj")

    def __init__(self, rotations: Sequence[Sequence[int]]):
        self.rotations: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rotations)
        self.n = len(self.rotations)
        self._adj = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "PlaneGraph":
        """Graph without a meaningful embedding (rotations in id order)."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls([sorted(s) for s in nbrs])

    @property
    def adjacency(self) -> list[frozenset[int]]:
        if self._adj is None:
            self._adj = [frozenset(r) for r in self.rotations]
        return self._adj

    def edges(self) -> list[Edge]:
        return sorted({edge(u, v) for u, r in enumerate(self.rotations) for v in r})

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adjacency[u]

    def walk_from(self, u: int, v: int) -> tuple[int, ...]:
        """Boundary walk of the face to the left of the dart ``u -> v``."""
        walk = []
        a, b = u, v
        while True:
            walk.append(a)
            r = self.rotations[b]
            a, b = b, r[r.index(a) - 1]
            if (a, b) == (u, v):
                return tuple(walk)

    def face_walks(self) -> list[tuple[int, ...]]:
        """Boundary walks of all faces (dart-based; valid for connected graphs)."""
        pos = [{w: i for i, w in enumerate(r)} for r in self.rotations]
        seen: set[tuple[int, int]] = set()
        walks = []
        for u in range(self.n):
            for v in self.rotations[u]:
                if (u, v) in seen:
                    continue
                walk = []
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    walk.append(a)
                    rb = self.rotations[b]
                    w = rb[(pos[b][a] - 1) % len(rb)]
                    a, b = b, w
                walks.append(tuple(walk))
        return walks

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneGraph) and self.rotations == other.rotations

    def __hash__(self) -> int:
        return hash(self.rotations)

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={len(self.edges())})"


class Triangulation:
    """Labelled maximal planar graph with a fixed embedding and outer face."""

    __slots__ = ("n", "rotations", "outer_face", "_adj", "_faces", "_tris", "_code")

    def __init__(self, rotations: Sequence[Sequence[int]], outer_face: Sequence[int]):
        self.rotations: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rotations)
        self.n = len(self.rotations)
        self.outer_face: tuple[int, ...] = tuple(sorted(outer_face))
        self._adj = None
        self._faces = None
        self._tris = None
        self._code = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_faces(cls, faces: Iterable[Sequence[int]], outer_face: Sequence[int] | None = None) -> "Triangulation":
        """Rebuild rotations from a face list (orientations need not agree)."""
        faces = [tuple(f) for f in faces]
        if not faces:
            raise TriangulationError("empty face list")
        n = 1 + max(max(f) for f in faces)
        by_edge: dict[Edge, list[int]] = {}
        for i, f in enumerate(faces):
            if len(f) != 3 or len(set(f)) != 3:
                raise TriangulationError(f"face {f} is not a triangle")
            for j in range(3):
                by_edge.setdefault(edge(f[j], f[(j + 1) % 3]), []).append(i)
        for e, fs in by_edge.items():
            if len(fs) != 2:
                raise TriangulationError(f"edge {e} lies on {len(fs)} faces, expected 2")
        # propagate a consistent orientation: neighbours traverse a shared edge oppositely
        first = min(range(len(faces)), key=lambda i: tri(*faces[i]))
        oriented: dict[int, tuple[int, int, int]] = {first: faces[first]}
        stack = [first]
        while stack:
            i = stack.pop()
            f = oriented[i]
            for j in range(3):
                a, b = f[j], f[(j + 1) % 3]
                for k in by_edge[edge(a, b)]:
                    if k == i:
                        continue
                    g = faces[k]
                    c = next(x for x in g if x != a and x != b)
                    want = (b, a, c)
                    if k in oriented:
                        if _rotate_to(oriented[k], b) != want:
                            raise TriangulationError("face list is not orientable")
                    else:
                        oriented[k] = want
                        stack.append(k)
        if len(oriented) != len(faces):
            raise TriangulationError("face list is disconnected")
        succ: list[dict[int, int]] = [dict() for _ in range(n)]
        for x, y, z in oriented.values():
            # face (x, y, z): z immediately precedes x in the rotation of y
            succ[y][z] = x
            succ[z][x] = y
            succ[x][y] = z
        rotations = []
        for v in range(n):
            s = succ[v]
            if not s:
                raise TriangulationError(f"vertex {v} is on no face")
            start = min(s)
            cyc = [start]
            nxt = s[start]
            while nxt != start:
                cyc.append(nxt)
                nxt = s[nxt]
                if len(cyc) > len(s):
                    raise TriangulationError(f"vertex {v} has a non-disk neighbourhood")
            if len(cyc) != len(s):
                raise TriangulationError(f"vertex {v} has a pinched neighbourhood")
            rotations.append(cyc)
        if outer_face is None:
            outer_face = min(tri(*f) for f in faces)
        return cls(rotations, outer_face)

    # -- cached views -----------------------------------------------------

    @property
    def adjacency(self) -> list[frozenset[int]]:
        if self._adj is None:
            self._adj = [frozenset(r) for r in self.rotations]
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adjacency[u]

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in sorted(self.rotations[u]) if u < v]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def pred(self, v: int, u: int) -> int:
        """Neighbour of ``v`` preceding ``u`` in counterclockwise order."""
        r = self.rotations[v]
        return r[r.index(u) - 1]

    def succ(self, v: int, u: int) -> int:
        r = self.rotations[v]
        i = r.index(u) + 1
        return r[i if i < len(r) else 0]

    def left_apex(self, u: int, v: int) -> int:
        """Third vertex of the face to the left of the dart ``u -> v``."""
        return self.pred(v, u)

    def face_walk(self, face: Sequence[int]) -> tuple[int, int, int]:
        """Orient a facial vertex triple as a face walk ``(x, y, z)``."""
        a, b, c = face
        if self.left_apex(a, b) == c:
            return (a, b, c)
        if self.left_apex(a, c) == b:
            return (a, c, b)
        raise TriangulationError(f"{tuple(face)} is not a face")

    def face_set(self) -> frozenset[tuple[int, int, int]]:
        if self._faces is None:
            # faces around u are consecutive neighbour pairs; record each at its minimum
            out = set()
            for u, r in enumerate(self.rotations):
                prev = r[-1]
                for v in r:
                    if u < v and u < prev:
                        out.add((u, v, prev) if v < prev else (u, prev, v))
                    prev = v
            self._faces = frozenset(out)
        return self._faces

    def csr(self) -> tuple[list[int], list[int]]:
        offsets = [0]
        flat: list[int] = []
        for r in self.rotations:
            flat.extend(r)
            offsets.append(len(flat))
        return offsets, flat

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Triangulation)
            and self.rotations == other.rotations
            and set(self.outer_face) == set(other.outer_face)
        )

    def __hash__(self) -> int:
        return hash((self.rotations, frozenset(self.outer_face)))

    def __repr__(self) -> str:
        return f"Triangulation(n={self.n}, outer_face={self.outer_face})"

    def to_plane_graph(self) -> PlaneGraph:
        return PlaneGraph(self.rotations)


def _rotate_to(f: Sequence[int], first: int) -> tuple[int, ...]:
    i = list(f).index(first)
    return tuple(f[i:]) + tuple(f[:i])


# -- validation -------------------------------------------------------------


def validate(t: Triangulation) -> Diagnostic | None:
    """Return ``None`` if ``t`` is a valid triangulation, else the first violation."""
    n = t.n
    if n < 4:
        return Diagnostic("vertex-count", f"n = {n} < 4")
    for v, r in enumerate(t.rotations):
        for w in r:
            if not (0 <= w < n):
                return Diagnostic("vertex-id", f"vertex {v} lists unknown neighbour {w}")
            if w == v:
                return Diagnostic("simple", f"loop at vertex {v}")
        if len(set(r)) != len(r):
            return Diagnostic("simple", f"parallel edges at vertex {v}")
    adj = t.adjacency
    for v, r in enumerate(t.rotations):
        for w in r:
            if v not in adj[w]:
                return Diagnostic("mutual", f"edge {v}-{w} listed only at {v}")
    m = sum(len(r) for r in t.rotations) // 2
    if m != 3 * n - 6:
        return Diagnostic("edge-count", f"edge count {m} ≠ 3·{n}−6")
    for v, r in enumerate(t.rotations):
        if len(r) < 3:
            return Diagnostic("degree", f"vertex {v} has degree {len(r)} < 3")
    pos = [{w: i for i, w in enumerate(r)} for r in t.rotations]
    seen: set[tuple[int, int]] = set()
    nfaces = 0
    faces = set()
    for u in range(n):
        for v in t.rotations[u]:
            if (u, v) in seen:
                continue
            walk = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                walk.append(a)
                rb = t.rotations[b]
                a, b = b, rb[(pos[b][a] - 1) % len(rb)]
                if len(walk) > 3:
                    break
            if len(walk) != 3 or (a, b) != (u, v):
                return Diagnostic("non-triangular-face", f"face walk from dart {u}->{v} is {walk}...")
            nfaces += 1
            faces.add(tri(*walk))
    if nfaces != 2 * n - 4 or len(faces) != nfaces:
        return Diagnostic("face-count", f"{nfaces} faces ≠ 2·{n}−4")
    if len(t.outer_face) != 3 or tri(*t.outer_face) not in faces:
        return Diagnostic("outer-face", f"outer face {t.outer_face} is not a face")
    return None


def faces(t: Triangulation) -> list[Triangle]:
    return [Triangle(f, "facial") for f in sorted(t.face_set())]


# -- flips ------------------------------------------------------------------


def _require_edge(t: Triangulation, e: Sequence[int]) -> Edge:
    u, v = e
    if not t.has_edge(u, v):
        raise UnknownEdgeError(f"edge {edge(u, v)} is not in the triangulation")
    return edge(u, v)


def flip_apexes(t: Triangulation, e: Sequence[int]) -> tuple[int, int]:
    """Opposite vertices ``(c, d)`` of the two faces incident to ``e``."""
    a, b = _require_edge(t, e)
    return t.left_apex(a, b), t.left_apex(b, a)


def is_flippable(t: Triangulation, e: Sequence[int]) -> bool:
    c, d = flip_apexes(t, e)
    return c != d and not t.has_edge(c, d)


def flip(t: Triangulation, e: Sequence[int], step_index: int = 0) -> tuple[Triangulation, FlipRecord]:
    """Replace edge ``ab`` by ``cd`` where ``abc`` and ``bad`` are its faces."""
    a, b = _require_edge(t, e)
    c = t.left_apex(a, b)
    d = t.left_apex(b, a)
    if c == d:
        raise NotFlippableError((a, b), "both faces share the apex (c = d)")
    if t.has_edge(c, d):
        raise NotFlippableError((a, b), f"edge {edge(c, d)} already present")
    rot = list(t.rotations)
    rot[a] = tuple(x for x in rot[a] if x != b)
    rot[b] = tuple(x for x in rot[b] if x != a)
    rot[c] = _insert_after(rot[c], a, d)
    rot[d] = _insert_after(rot[d], b, c)
    outer = t.outer_face
    if a in outer and b in outer:
        old = set(outer)
        cands = [f for f in (tri(a, d, c), tri(d, b, c)) if len(old & set(f)) >= 2]
        outer = min(cands)
    return Triangulation(rot, outer), FlipRecord((a, b), edge(c, d), step_index)


def _insert_after(r: tuple[int, ...], anchor: int, new: int) -> tuple[int, ...]:
    i = r.index(anchor)
    return r[: i + 1] + (new,) + r[i + 1 :]


def insert_vertex(t: Triangulation, face: Sequence[int]) -> Triangulation:
    """Stack a new vertex (id ``t.n``) into a face and join it to the face's corners."""
    x, y, z = t.face_walk(face)
    v = t.n
    rot = list(t.rotations)
    rot[y] = _insert_after(rot[y], z, v)
    rot[z] = _insert_after(rot[z], x, v)
    rot[x] = _insert_after(rot[x], y, v)
    rot.append((x, y, z))
    outer = t.outer_face
    if tri(*face) == tri(*outer):
        outer = min(tri(x, y, v), tri(y, z, v), tri(z, x, v))
    return Triangulation(rot, outer)


def simultaneous_flip(t: Triangulation, F: Iterable[Sequence[int]]) -> tuple[Triangulation, list[FlipRecord]]:
    """Flip a set of edges at once; see :func:`check_simultaneous` for the conditions."""
    Fs = sorted({_require_edge(t, e) for e in F})
    check_simultaneous(t, Fs)
    out = t
    records = []
    for i, e in enumerate(Fs):
        if not is_flippable(out, e):
            raise PreconditionError(f"edge {e} became unflippable during the sequential flip")
        out, rec = flip(out, e, i)
        records.append(rec)
    return out, records


def check_simultaneous(t: Triangulation, F: Sequence[Edge]) -> None:
    created = {}
    Fset = set(F)
    for e in F:
        c, d = flip_apexes(t, e)
        if c == d or t.has_edge(c, d):
            raise PreconditionError(f"edge {e} is not flippable")
        cd = edge(c, d)
        if cd in created:
            raise PreconditionError(f"edges {created[cd]} and {e} would both create {cd}")
        created[cd] = e
    for f in t.face_set():
        a, b, c = f
        hit = [x for x in (edge(a, b), edge(a, c), edge(b, c)) if x in Fset]
        if len(hit) > 1:
            raise PreconditionError(f"facial triangle {f} is incident to {hit}")


# -- triangles and connectivity ---------------------------------------------


def triangle_triples(t: Triangulation) -> list[tuple[int, int, int]]:
    if t._tris is None:
        offsets, flat = t.csr()
        t._tris = kernels.triangles(t.n, offsets, flat)
    return t._tris


def all_triangles(t: Triangulation) -> list[Triangle]:
    fs = t.face_set()
    return [Triangle(x, "facial" if x in fs else "separating") for x in triangle_triples(t)]


def separating_triangles(t: Triangulation) -> list[tuple[int, int, int]]:
    fs = t.face_set()
    return [x for x in triangle_triples(t) if x not in fs]


def edges_on_separating_triangles(t: Triangulation) -> set[Edge]:
    out: set[Edge] = set()
    for a, b, c in separating_triangles(t):
        out.update((edge(a, b), edge(a, c), edge(b, c)))
    if t.n >= 4:
        assert len(out) <= max(0, 2 * t.n - 7), "edge bound violated"
    return out


def is_four_connected(t: Triangulation) -> bool:
    return t.n >= 6 and not separating_triangles(t)


def subdivide_edge(g: Triangulation | PlaneGraph, e: Sequence[int]) -> PlaneGraph:
    """Replace ``e`` by a path through a new vertex with id ``g.n``."""
    u, v = e
    if not g.has_edge(u, v):
        raise UnknownEdgeError(f"edge {edge(u, v)} is not in the graph")
    s = g.n
    rot = list(g.rotations)
    rot[u] = tuple(s if x == v else x for x in rot[u])
    rot[v] = tuple(s if x == u else x for x in rot[v])
    rot.append((u, v))
    return PlaneGraph(rot)


def add_edge_in_face(g: PlaneGraph, walk: Sequence[int], i: int, j: int) -> PlaneGraph:
    """Draw a chord between positions ``i`` and ``j`` of a face walk of ``g``."""
    k = len(walk)
    u, w = walk[i], walk[j]
    if u == w or g.has_edge(u, w):
        raise PreconditionError(f"chord {edge(u, w)} would be a loop or parallel edge")
    rot = list(g.rotations)
    rot[u] = _insert_after(rot[u], walk[(i + 1) % k], w)
    rot[w] = _insert_after(rot[w], walk[(j + 1) % k], u)
    return PlaneGraph(rot)


def canonical_code(t: Triangulation | PlaneGraph) -> bytes:
    """Isomorphism key for embedded maps, up to relabelling and reflection."""
    if isinstance(t, Triangulation):
        if t._code is None:
            offsets, flat = t.csr()
            t._code = kernels.canonical_code(t.n, offsets, flat)
        return t._code
    offsets = [0]
    flat: list[int] = []
    for r in t.rotations:
        flat.extend(r)
        offsets.append(len(flat))
    return kernels.canonical_code(t.n, offsets, flat)


def relabel(t: Triangulation, perm: Sequence[int]) -> Triangulation:
    """Rename vertex ``v`` to ``perm[v]``."""
    rot: list[tuple[int, ...]] = [()] * t.n
    for v, r in enumerate(t.rotations):
        rot[perm[v]] = tuple(perm[w] for w in r)
    return Triangulation(rot, tuple(perm[v] for v in t.outer_face))


def mirror(t: Triangulation) -> Triangulation:
    return Triangulation([tuple(reversed(r)) for r in t.rotations], t.outer_face)
