"""Named triangulation families and seeded random triangulations."""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass

from .core import (
    Triangulation,
    TriangulationError,
    edge,
    edges_on_separating_triangles,
    flip_apexes,
    insert_vertex,
    tri,
)

FAMILIES = (
    "k4",
    "octahedron",
    "wheel5",
    "stacked_random",
    "edgebound",
    "lower4c",
    "lowerham",
    "checkerboard_demo",
)


class InvalidParamError(TriangulationError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    param: int = 0
    seed: int = 0


def k4() -> Triangulation:
    """Tetrahedron with outer face (0, 1, 2) and centre 3."""
    return Triangulation([(1, 3, 2), (2, 3, 0), (0, 3, 1), (2, 0, 1)], (0, 1, 2))


def octahedron() -> Triangulation:
    # antipodal pairs {0,3}, {1,4}, {2,5}; a face takes one vertex from each pair
    faces = [(a, b, c) for a in (0, 3) for b in (1, 4) for c in (2, 5)]
    return Triangulation.from_faces(faces, (0, 1, 2))


def wheel5() -> Triangulation:
    """The n=5 triangulation: equator 0, 1, 2 with apexes 3 and 4."""
    faces = [(0, 1, 3), (1, 2, 3), (0, 2, 3), (0, 1, 4), (1, 2, 4), (0, 2, 4)]
    return Triangulation.from_faces(faces, (0, 1, 3))


def stack(t: Triangulation, faces) -> Triangulation:
    for f in faces:
        t = insert_vertex(t, f)
    return t


class _Builder:
    """Rotation lists edited in place, so long random runs avoid a copy per step."""

    def __init__(self, t: Triangulation):
        self.rot = [list(r) for r in t.rotations]
        self.adj = [set(r) for r in t.rotations]
        self.outer = tuple(t.outer_face)

    def apex(self, u: int, v: int) -> int:
        r = self.rot[v]
        return r[r.index(u) - 1]

    def insert(self, face) -> int:
        a, b, c = face
        x, y, z = (a, b, c) if self.apex(a, b) == c else (a, c, b)
        v = len(self.rot)
        for p, q in ((y, z), (z, x), (x, y)):
            r = self.rot[p]
            r.insert(r.index(q) + 1, v)
            self.adj[p].add(v)
        self.rot.append([x, y, z])
        self.adj.append({x, y, z})
        if tri(*face) == tri(*self.outer):
            self.outer = min(tri(x, y, v), tri(y, z, v), tri(z, x, v))
        return v

    def flip(self, a: int, b: int) -> tuple[int, int] | None:
        c, d = self.apex(a, b), self.apex(b, a)
        if c == d or d in self.adj[c]:
            return None
        self.rot[a].remove(b)
        self.rot[b].remove(a)
        self.adj[a].discard(b)
        self.adj[b].discard(a)
        for p, q, w in ((c, a, d), (d, b, c)):
            r = self.rot[p]
            r.insert(r.index(q) + 1, w)
            self.adj[p].add(w)
        if a in self.outer and b in self.outer:
            old = set(self.outer)
            self.outer = min(f for f in (tri(a, d, c), tri(d, b, c)) if len(old & set(f)) >= 2)
        return edge(c, d)

    def freeze(self) -> Triangulation:
        return Triangulation(self.rot, self.outer)


def stacked_random(i: int, seed: int = 0) -> Triangulation:
    """K4 followed by ``i`` insertions into faces chosen by a seeded RNG."""
    _need(i >= 0, "stacked_random", i)
    rng = random.Random(seed)
    b = _Builder(k4())
    fl = sorted(k4().face_set())
    for _ in range(i):
        f = fl.pop(rng.randrange(len(fl)))
        v = b.insert(f)
        x, y, z = f
        for g in ((x, y, v), (x, z, v), (y, z, v)):
            bisect.insort(fl, g)
    return b.freeze()


def edgebound(k: int) -> Triangulation:
    """n = 6 + k with exactly 2n - 7 edges on separating triangles."""
    _need(k >= 0, "edgebound", k)
    t = stack(k4(), [(0, 1, 2)])
    t = insert_vertex(t, (0, 1, 4))
    for _ in range(k):
        marked = edges_on_separating_triangles(t)
        for f in sorted(t.face_set()):
            a, b, c = f
            if sum(e in marked for e in (edge(a, b), edge(a, c), edge(b, c))) == 1:
                t = insert_vertex(t, f)
                break
        else:  # pragma: no cover - the invariant guarantees a candidate
            raise AssertionError("no face with exactly one marked edge")
    return t


def lower4c(i: int) -> Triangulation:
    """K4 where the three faces across the edges of the outer face are stacked ``i`` times."""
    _need(i >= 0, "lower4c", i)
    t = k4()
    f0 = t.outer_face
    for _ in range(i):
        a, b, c = f0
        for x, y in ((a, b), (b, c), (a, c)):
            apex = next(z for z in flip_apexes(t, (x, y)) if z not in f0)
            t = insert_vertex(t, (x, y, apex))
    return t


def lowerham(i: int) -> Triangulation:
    """Stacked base on t = i + 4 vertices with every face stellated; n = 3i + 8."""
    _need(i >= 1, "lowerham", i)
    base = k4()
    for _ in range(i):
        base = insert_vertex(base, max(base.face_set()))
    return stack(base, sorted(base.face_set()))


def lowerham_independent_set(i: int) -> list[int]:
    t = i + 4
    return list(range(t, 3 * i + 8))


def checkerboard_demo() -> Triangulation:
    """Octahedron with the four faces of the colour class opposite the outer face stellated."""
    return stack(octahedron(), [(1, 2, 3), (0, 2, 4), (0, 1, 5), (3, 4, 5)])


def generate(spec: FamilySpec) -> Triangulation:
    fam, i = spec.family, spec.param
    if fam == "k4":
        return k4()
    if fam == "octahedron":
        return octahedron()
    if fam == "wheel5":
        return wheel5()
    if fam == "checkerboard_demo":
        return checkerboard_demo()
    if fam == "stacked_random":
        return stacked_random(i, spec.seed)
    if fam == "edgebound":
        return edgebound(i)
    if fam == "lower4c":
        return lower4c(i)
    if fam == "lowerham":
        return lowerham(i)
    raise InvalidParamError(f"unknown family {fam!r}; choose from {', '.join(FAMILIES)}")


def random_by_flip_walk(n: int, steps: int, seed: int) -> Triangulation:
    """Stacked start followed by ``steps`` flips, each uniform over the valid ones."""
    _need(n >= 4, "random_by_flip_walk", n)
    rng = random.Random(seed)
    t = stacked_random(n - 4, seed)
    if n < 5:
        return t
    b = _Builder(t)
    edges = t.edges()
    where = {e: k for k, e in enumerate(edges)}
    for _ in range(steps):
        # rejection sampling is uniform over flippable edges; fall back to a full scan
        for _ in range(32):
            k = rng.randrange(len(edges))
            new = b.flip(*edges[k])
            if new is not None:
                break
        else:
            ok = [k for k, e in enumerate(edges) if _flippable(b, e)]
            if not ok:
                continue
            k = rng.choice(ok)
            new = b.flip(*edges[k])
        del where[edges[k]]
        edges[k] = new
        where[new] = k
    return b.freeze()


def _flippable(b: _Builder, e) -> bool:
    c, d = b.apex(*e), b.apex(e[1], e[0])
    return c != d and d not in b.adj[c]


def _need(ok: bool, family: str, param: int) -> None:
    if not ok:
        raise InvalidParamError(f"parameter {param} out of range for {family}")


__all__ = [
    "FAMILIES",
    "FamilySpec",
    "InvalidParamError",
    "checkerboard_demo",
    "edgebound",
    "generate",
    "k4",
    "lower4c",
    "lowerham",
    "lowerham_independent_set",
    "octahedron",
    "random_by_flip_walk",
    "stacked_random",
    "wheel5",
]
