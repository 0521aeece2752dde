"""Canonical orderings, monotone biarc diagrams and page assignments.

An arc diagram places the vertices on a horizontal spine and draws each edge
as a chain of halfcircles, each above or below the spine.  One halfcircle is
a proper arc; two on opposite sides form a biarc whose middle point is an
extra spine point.  All positions are exact rationals.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx

from .core import Diagnostic, Edge, PlaneGraph, Triangulation, TriangulationError, edge, flip_apexes, validate
from .hamiltonize import HamCycle, SubdivisionResult

ABOVE = "above"
BELOW = "below"


class NonPlanarError(TriangulationError):
    pass


class ConflictGraphError(TriangulationError):
    """Chords of the spine order cannot be split between two pages."""


class InvariantBroken(AssertionError):
    pass


# -- data model ---------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalStep:
    """Insertion of ``vertex``: its earlier neighbours run from ``left`` to ``right`` on the contour."""

    vertex: int
    left: int
    right: int
    span: int  # r - l
    split: int | None = None  # w_f when the refined rule applies


@dataclass(frozen=True)
class CanonicalOrdering:
    order: tuple[int, ...]
    steps: tuple[CanonicalStep, ...] = ()

    def rank(self) -> list[int]:
        r = [0] * len(self.order)
        for i, v in enumerate(self.order):
            r[v] = i
        return r


@dataclass(frozen=True)
class SpinePoint:
    pos: Fraction
    vertex: int | None = None
    sub: str | None = None


@dataclass(frozen=True)
class Piece:
    left: Fraction
    right: Fraction
    side: str


@dataclass(frozen=True)
class BiarcStats:
    proper_above: int = 0
    proper_below: int = 0
    biarcs_downup: int = 0
    biarcs_other: int = 0

    @property
    def biarcs(self) -> int:
        return self.biarcs_downup + self.biarcs_other

    @property
    def total(self) -> int:
        return self.proper_above + self.proper_below + self.biarcs

    def to_json_obj(self) -> dict:
        return {
            "proper_above": self.proper_above,
            "proper_below": self.proper_below,
            "biarcs_downup": self.biarcs_downup,
            "biarcs_other": self.biarcs_other,
        }


@dataclass
class ArcDiagram:
    spine: tuple[SpinePoint, ...]
    arcs: dict[Edge, tuple[Piece, ...]]
    ordering: CanonicalOrdering | None = field(default=None, compare=False, repr=False)

    def positions(self) -> dict[int, Fraction]:
        return {p.vertex: p.pos for p in self.spine if p.vertex is not None}

    def vertex_order(self) -> list[int]:
        return [p.vertex for p in self.spine if p.vertex is not None]

    def stats(self) -> BiarcStats:
        pos = self.positions()
        counts = [0, 0, 0, 0]
        for (u, v), pieces in self.arcs.items():
            if len(pieces) == 1:
                counts[0 if pieces[0].side == ABOVE else 1] += 1
                continue
            lo = u if pos[u] < pos[v] else v
            first, last = (pieces[0], pieces[-1]) if _touches(pieces[0], pos[lo]) else (pieces[-1], pieces[0])
            downup = len(pieces) == 2 and first.side == BELOW and last.side == ABOVE
            counts[2 if downup else 3] += 1
        return BiarcStats(*counts)

    def to_json_obj(self) -> dict:
        spine = []
        for p in self.spine:
            item: dict = {"id": p.vertex} if p.vertex is not None else {"sub": p.sub}
            item["pos"] = _frac_json(p.pos)
            spine.append(item)
        arcs = [
            {
                "edge": list(e),
                "pieces": [{"l": _frac_json(q.left), "r": _frac_json(q.right), "side": q.side} for q in ps],
            }
            for e, ps in sorted(self.arcs.items())
        ]
        return {"spine": spine, "arcs": arcs}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "ArcDiagram":
        spine = tuple(
            SpinePoint(Fraction(*p["pos"]), p.get("id"), p.get("sub")) for p in obj["spine"]
        )
        arcs = {
            edge(*a["edge"]): tuple(
                Piece(Fraction(*q["l"]), Fraction(*q["r"]), q["side"]) for q in a["pieces"]
            )
            for a in obj["arcs"]
        }
        return cls(spine, arcs)


def _frac_json(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def _touches(p: Piece, x: Fraction) -> bool:
    return p.left == x or p.right == x


# -- structure and plane-ness -------------------------------------------------


def _ranked(d: ArcDiagram) -> tuple[dict[Fraction, int], Diagnostic | None]:
    pos = [p.pos for p in d.spine]
    if any(a >= b for a, b in zip(pos, pos[1:])):
        return {}, Diagnostic("spine-order", "spine positions are not strictly increasing")
    return {x: i for i, x in enumerate(pos)}, None


def check_structure(d: ArcDiagram) -> Diagnostic | None:
    return _check_structure(d, *_ranked(d))[1]


def _check_structure(d: ArcDiagram, rank: dict[Fraction, int], bad: Diagnostic | None):
    # returns the pieces as integer spine ranks so callers avoid Fraction arithmetic
    if bad is not None:
        return None, bad
    vrank = {p.vertex: rank[p.pos] for p in d.spine if p.vertex is not None}
    out: dict[Edge, list[tuple[int, int, str]]] = {}
    for e, pieces in d.arcs.items():
        if not pieces:
            return None, Diagnostic("arc", f"edge {e} has no pieces")
        if any(u not in vrank for u in e):
            return None, Diagnostic("arc", f"edge {e} has an endpoint off the spine")
        qs = []
        for q in pieces:
            l, r = rank.get(q.left), rank.get(q.right)
            if l is None or r is None:
                return None, Diagnostic("piece", f"edge {e} has a piece ending off the spine {q}")
            if l >= r or q.side not in (ABOVE, BELOW):
                return None, Diagnostic("piece", f"edge {e} has a malformed piece {q}")
            qs.append((l, r, q.side))
        # walk the chain from one end vertex to the other
        a, b = vrank[e[0]], vrank[e[1]]
        here = a if a in qs[0][:2] else b
        if here not in qs[0][:2]:
            return None, Diagnostic("arc", f"edge {e} does not start at a vertex")
        for l, r, _ in qs:
            if here != l and here != r:
                return None, Diagnostic("arc", f"edge {e} has a gap at {d.spine[here].pos}")
            here = r if l == here else l
        if here not in (a, b):
            return None, Diagnostic("arc", f"edge {e} does not end at a vertex")
        out[e] = qs
    return out, None


def verify_plane(d: ArcDiagram) -> Diagnostic | None:
    """``None`` when no two same-side halfcircles cross; otherwise the first crossing pair."""
    arcs, bad = _check_structure(d, *_ranked(d))
    if bad is not None:
        return bad
    owner: dict[int, set] = {}
    for e, qs in arcs.items():
        for l, r, _ in qs:
            owner.setdefault(l, set()).add(e)
            owner.setdefault(r, set()).add(e)
    for x, es in owner.items():
        v = d.spine[x].vertex
        if v is None:
            if len(es) != 1:
                return Diagnostic("crossing", f"transition point {d.spine[x].pos} is shared by {sorted(es)}")
        else:
            foreign = [e for e in es if v not in e]
            if foreign:
                return Diagnostic("crossing", f"edge {foreign[0]} touches vertex {v}")
    P = [p.pos for p in d.spine]
    for side in (ABOVE, BELOW):
        items = sorted(
            ((l, -r, e) for e, qs in arcs.items() for l, r, sd in qs if sd == side),
        )
        stack: list[tuple[int, int, Edge]] = []
        for l, r, e in items:
            r = -r
            while stack and stack[-1][1] <= l:
                stack.pop()
            if stack and r > stack[-1][1]:
                top = stack[-1]
                return Diagnostic(
                    "crossing",
                    f"{side} pieces of {top[2]} [{P[top[0]]}, {P[top[1]]}] and {e} [{P[l]}, {P[r]}] interleave",
                )
            stack.append((l, r, e))
    return None


# -- augmentation -------------------------------------------------------------


def _as_nx(g) -> nx.Graph:
    if isinstance(g, nx.Graph):
        return g
    if isinstance(g, (Triangulation, PlaneGraph)):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
        return h
    edges = [tuple(e) for e in g]
    h = nx.Graph()
    h.add_edges_from(edges)
    return h


def augment_to_triangulation(g) -> tuple[Triangulation, list[Edge]]:
    """Add edges until ``g`` is maximal planar; returns the triangulation and the added edges.

    Accepts a Triangulation, a PlaneGraph, a networkx graph on ``0..n-1`` or
    an edge list.  Each face is closed by ear chords, preferring the ear at
    its lowest-id vertex.
    """
    if isinstance(g, Triangulation):
        return g, []
    h = _as_nx(g)
    n = h.number_of_nodes()
    if sorted(h.nodes) != list(range(n)):
        raise TriangulationError("vertices must be 0..n-1")
    if n < 3:
        raise TriangulationError("augmentation needs at least 3 vertices")
    if any(u == v for u, v in h.edges):
        raise TriangulationError("self-loops are not allowed")
    added: list[Edge] = []
    h = nx.Graph(h)
    comps = sorted(min(c) for c in nx.connected_components(h))
    for c in comps[1:]:
        h.add_edge(comps[0], c)
        added.append(edge(comps[0], c))
    if isinstance(g, PlaneGraph) and not added and _is_embedding(g):
        rot = [list(r) for r in g.rotations]
    else:
        ok, emb = nx.check_planarity(h)
        if not ok:
            raise NonPlanarError("graph is not planar")
        rot = [list(reversed(list(emb.neighbors_cw_order(v)))) for v in range(n)]
    adj = [set(r) for r in rot]
    walks = PlaneGraph([tuple(r) for r in rot]).face_walks()
    for walk in walks:
        L = list(walk)
        while len(L) > 3:
            k = len(L)
            start = L.index(min(L))
            for off in range(k):
                i = (start + off) % k
                a, b, c = L[i], L[(i + 1) % k], L[(i + 2) % k]
                if a != c and c not in adj[a]:
                    break
            else:  # pragma: no cover - simple plane graphs always have an ear
                raise TriangulationError(f"cannot triangulate face {walk}")
            after = L[(i + 3) % k]
            _insert_after(rot[a], b, c)
            _insert_after(rot[c], after, a)
            adj[a].add(c)
            adj[c].add(a)
            added.append(edge(a, c))
            del L[(i + 1) % k]
    faces = sorted(_faces_of(rot))
    t = Triangulation([tuple(r) for r in rot], faces[0])
    diag = validate(t)
    if diag is not None:  # pragma: no cover
        raise TriangulationError(f"augmentation failed: {diag}")
    return t, sorted(added)


def _is_embedding(g: PlaneGraph) -> bool:
    # Euler's formula for a connected graph: the rotations describe a plane map
    return len(g.face_walks()) == len(g.edges()) - g.n + 2


def _insert_after(r: list[int], anchor: int, new: int) -> None:
    r.insert(r.index(anchor) + 1, new)


def _faces_of(rot: list[list[int]]) -> set[tuple[int, int, int]]:
    out = set()
    for u, r in enumerate(rot):
        prev = r[-1]
        for v in r:
            out.add(tuple(sorted((u, v, prev))))
            prev = v
    return out


# -- canonical ordering ---------------------------------------------------------


def canonical_ordering(t: Triangulation) -> CanonicalOrdering:
    """Canonical ordering whose first triangle is the outer face.

    ``v1 < v2 < v3`` are the outer face; vertices are peeled from the far
    side of edge ``v1 v2`` inward, one chord-free contour vertex at a time.
    """
    n = t.n
    v1, v2, v3 = t.outer_face
    if n == 3:
        return CanonicalOrdering((v1, v2, v3))
    rot = t.rotations
    c, d = flip_apexes(t, (v1, v2))
    far = d if c == v3 else c
    removed = [False] * n
    outer = [False] * n
    chords = [0] * n
    nxt = {v1: v2, v2: far, far: v1}
    prv = {v2: v1, far: v2, v1: far}
    for v in (v1, v2, far):
        outer[v] = True
    stack = [far]
    rev: list[int] = []
    while len(rev) < n - 3:
        x = stack.pop()
        if removed[x] or not outer[x] or chords[x] or x in (v1, v2):
            continue
        rev.append(x)
        removed[x] = True
        outer[x] = False
        a, b = prv[x], nxt[x]
        r = rot[x]
        ia, ib = r.index(a), r.index(b)
        k = len(r)
        # the arc from b to a (ccw) or a to b that holds unremoved vertices
        arc_ba = [r[(ib + s) % k] for s in range(1, (ia - ib) % k)]
        arc_ab = [r[(ia + s) % k] for s in range(1, (ib - ia) % k)]
        if any(not removed[y] for y in arc_ba):
            new = list(reversed(arc_ba))
        elif any(not removed[y] for y in arc_ab):
            new = arc_ab
        else:
            new = []
        if not new:
            chords[a] -= 1
            chords[b] -= 1
            nxt[a], prv[b] = b, a
        else:
            chain = [a] + new + [b]
            for p, q in zip(chain, chain[1:]):
                nxt[p], prv[q] = q, p
            for j, u in enumerate(new):
                nbr_cycle = (chain[j], chain[j + 2])
                for y in rot[u]:
                    if outer[y] and y not in nbr_cycle:
                        chords[u] += 1
                        chords[y] += 1
                outer[u] = True
        for y in [a, b] + new:
            if not chords[y]:
                stack.append(y)
    order = (v1, v2, v3) + tuple(reversed(rev))
    return CanonicalOrdering(order, _steps(t, order))


def _steps(t: Triangulation, order: Sequence[int]) -> tuple[CanonicalStep, ...]:
    rank = [0] * t.n
    for i, v in enumerate(order):
        rank[v] = i
    v1, v2, v3 = order[:3]
    right = {v1: v3, v3: v2}
    left = {v3: v1, v2: v3}
    steps = []
    for i in range(3, len(order)):
        v = order[i]
        block = _earlier_block(t.rotations[v], rank, i)
        if right.get(block[0]) != block[1]:
            block.reverse()
        for p, q in zip(block, block[1:]):
            if right.get(p) != q:
                raise InvariantBroken(f"neighbours of {v} are not consecutive on the contour")
        lo, hi = block[0], block[-1]
        right[lo], left[v], right[v], left[hi] = v, lo, hi, v
        steps.append(CanonicalStep(v, lo, hi, len(block) - 1))
    return tuple(steps)


def _earlier_block(r: Sequence[int], rank: list[int], i: int) -> list[int]:
    """Earlier neighbours of a vertex in rotation order, as one contiguous run."""
    k = len(r)
    early = [rank[y] < i for y in r]
    if all(early):
        # last vertex: the gap sits where v1 and v2 meet
        s = next(j for j in range(k) if {rank[r[j]], rank[r[j - 1]]} == {0, 1})
        return [r[(s + j) % k] for j in range(k)]
    s = next(j for j in range(k) if early[j] and not early[j - 1])
    out = []
    while early[s % k]:
        out.append(r[s % k])
        s += 1
    if len(out) != sum(early):
        raise InvariantBroken("earlier neighbours are not contiguous in the rotation")
    return out


def verify_canonical_ordering(t: Triangulation, co: CanonicalOrdering) -> Diagnostic | None:
    """Check the defining properties of a canonical ordering directly, step by step."""
    n = t.n
    order = list(co.order)
    if sorted(order) != list(range(n)):
        return Diagnostic("permutation", "order is not a permutation of the vertices")
    rank = [0] * n
    for i, v in enumerate(order):
        rank[v] = i
    v1, v2 = order[0], order[1]
    # the face beyond v1 v2 plays the unbounded face
    faces = t.face_set() - {tuple(sorted((v1, v2, order[-1])))}
    for i in range(3, n + 1):
        inside = {v for v in order[:i]}
        g = nx.Graph()
        g.add_nodes_from(inside)
        g.add_edges_from((u, v) for u, v in t.edges() if u in inside and v in inside)
        if not nx.is_biconnected(g):
            return Diagnostic("biconnected", f"G_{i} is not biconnected")
        inner = [f for f in faces if all(x in inside for x in f)]
        seen: dict[Edge, int] = {}
        for a, b, c in inner:
            for e in (edge(a, b), edge(a, c), edge(b, c)):
                seen[e] = seen.get(e, 0) + 1
        boundary = [e for e in g.edges if seen.get(edge(*e), 0) != 2]
        cyc = nx.Graph(boundary)
        k = cyc.number_of_nodes()
        if not (k == len(boundary) and nx.is_connected(cyc) and all(dd == 2 for _, dd in cyc.degree)):
            return Diagnostic("contour", f"C_{i} is not a simple cycle")
        if g.number_of_edges() != 3 * i - 3 - k:
            return Diagnostic("triangulated", f"G_{i} is not internally triangulated")
        if not cyc.has_edge(v1, v2):
            return Diagnostic("base-edge", f"v1 v2 is not on C_{i}")
        if i < n:
            w = order[i]
            nb = [y for y in t.adjacency[w] if y in inside]
            if any(y not in cyc for y in nb) or len(nb) < 2:
                return Diagnostic("contiguous", f"neighbours of v_{i + 1} are not on C_{i}")
            path = nx.Graph(cyc.subgraph(nb))
            path.remove_edges_from([(v1, v2)])
            if not (nx.is_connected(path) and path.number_of_edges() == len(nb) - 1):
                return Diagnostic("contiguous", f"neighbours of v_{i + 1} are not consecutive on C_{i}")
    return None


# -- monotone biarc diagrams ------------------------------------------------------


class _Monotone:
    """Incremental drawing state.  Spine points are vertex ids or ``n + k`` for transitions."""

    def __init__(self, t: Triangulation, co: CanonicalOrdering):
        self.t = t
        self.co = co
        n = t.n
        self.n = n
        self.nxt: dict[int, int] = {}
        self.side: dict[Edge, str] = {}
        self.bend: dict[Edge, int] = {}  # biarc -> transition point
        self.above_right: list[list[Edge]] = [[] for _ in range(n)]  # inner to outer
        self.right: dict[int, int] = {}
        self.left: dict[int, int] = {}
        self.next_point = n
        self.steps: list[CanonicalStep] = []

    def start(self) -> None:
        v1, v2, v3 = self.co.order[:3]
        self.first = v1
        self.nxt = {v1: v3, v3: v2}
        for e in (edge(v1, v3), edge(v3, v2), edge(v1, v2)):
            self.side[e] = BELOW
        self.right = {v1: v3, v3: v2}
        self.left = {v3: v1, v2: v3}

    def insert(self, step: CanonicalStep) -> None:
        v = step.vertex
        path = [step.left]
        while path[-1] != step.right:
            path.append(self.right[path[-1]])
        f = None
        for j in range(len(path) - 2, -1, -1):
            if self.side.get(edge(path[j], path[j + 1])) == BELOW and edge(path[j], path[j + 1]) not in self.bend:
                f = j
                break
        at = path[0] if f is None else path[f]
        # v goes just right of ``at``; above arcs leaving ``at`` rightward bend down
        self.nxt[v] = self.nxt[at]
        self.nxt[at] = v
        tail = v
        for e in reversed(self.above_right[at]):
            p = self.next_point
            self.next_point += 1
            self.nxt[p] = self.nxt[tail]
            self.nxt[tail] = p
            tail = p
            self.bend[e] = p
            del self.side[e]
        self.above_right[at] = []
        if f is None:
            self.side[edge(path[0], v)] = BELOW
            for w in path[1:]:
                self._above(v, w)
        else:
            for w in path[: f + 1]:
                self._above(w, v)
            self.side[edge(v, path[f + 1])] = BELOW
            for w in path[f + 2 :]:
                self._above(v, w)
        lo, hi = path[0], path[-1]
        self.right[lo], self.left[v], self.right[v], self.left[hi] = v, lo, hi, v
        self.steps.append(CanonicalStep(v, lo, hi, step.span, None if f is None else path[f]))

    def _above(self, a: int, b: int) -> None:
        e = edge(a, b)
        self.side[e] = ABOVE
        self.above_right[a].append(e)

    def diagram(self, keep: Iterable[Edge] | None = None) -> ArcDiagram:
        n = self.n
        seq = [self.first]
        while seq[-1] in self.nxt:
            seq.append(self.nxt[seq[-1]])
        pos: dict[int, Fraction] = {}
        k = -1
        run: list[int] = []
        for p in seq + [None]:
            if p is not None and p >= n:
                run.append(p)
                continue
            for j, q in enumerate(run, 1):
                pos[q] = k + Fraction(j, len(run) + 1)
            run = []
            if p is not None:
                k += 1
                pos[p] = Fraction(k)
        names = {p: f"s{j}" for j, p in enumerate(q for q in seq if q >= n)}
        edges = self.side.keys() | self.bend.keys() if keep is None else keep
        arcs: dict[Edge, tuple[Piece, ...]] = {}
        used = set()
        for e in edges:
            a, b = e if pos[e[0]] < pos[e[1]] else (e[1], e[0])
            if e in self.bend:
                m = self.bend[e]
                used.add(m)
                arcs[e] = (Piece(pos[a], pos[m], BELOW), Piece(pos[m], pos[b], ABOVE))
            else:
                arcs[e] = (Piece(pos[a], pos[b], self.side[e]),)
        spine = tuple(
            SpinePoint(pos[p], p) if p < n else SpinePoint(pos[p], None, names[p])
            for p in seq
            if p < n or p in used
        )
        return ArcDiagram(spine, arcs, CanonicalOrdering(self.co.order, tuple(self.steps)))

    def check_invariants(self) -> None:
        d = self.diagram()
        bad = verify_plane(d)
        if bad is not None:
            raise InvariantBroken(f"drawing is not plane: {bad.detail}")
        st = d.stats()
        if st.biarcs_other:
            raise InvariantBroken("a biarc is not down-up")
        order = d.vertex_order()
        v1, v2 = self.co.order[:2]
        if order[0] != v1 or order[-1] != v2:
            raise InvariantBroken("v1 and v2 are not the outermost spine vertices")
        pos = d.positions()
        points = [p.pos for p in d.spine]
        contour = []
        p = v1
        while p != v2:
            contour.append((p, self.right[p]))
            p = self.right[p]
        above = [(q.left, q.right, e) for e, ps in d.arcs.items() for q in ps if q.side == ABOVE]
        for a, b in contour:
            e = edge(a, b)
            if e in self.bend:
                raise InvariantBroken(f"contour edge {e} is a biarc")
            pa, pb = pos[a], pos[b]
            for l, r, f in above:
                if f != e and l <= pa and pb <= r:
                    raise InvariantBroken(f"contour edge {e} is not on the upper envelope")
            if self.side[e] == BELOW and any(pa < x < pb for x in points):
                raise InvariantBroken(f"contour edge {e} has spine points above it")
        if self.side.get(edge(v1, v2)) != BELOW:
            raise InvariantBroken("v1 v2 is not drawn below the spine")


def monotone_biarc_diagram(
    g, ordering: CanonicalOrdering | None = None, check: bool = False
) -> tuple[ArcDiagram, BiarcStats]:
    """Plane diagram with at most ``n - 4`` biarcs, each going down then up.

    Non-maximal inputs are augmented first and the added edges are left out
    of the result.  With ``check`` the drawing invariants are re-verified
    after every insertion, which costs quadratic time.
    """
    t, added = augment_to_triangulation(g)
    if t.n < 4:
        raise TriangulationError("monotone diagrams need at least 4 vertices")
    co = ordering or canonical_ordering(t)
    if ordering is not None and not ordering.steps:
        co = CanonicalOrdering(ordering.order, _steps(t, ordering.order))
    m = _Monotone(t, co)
    m.start()
    for step in co.steps:
        m.insert(step)
        if check:
            m.check_invariants()
    proper = len(m.side)
    if proper < 2 * t.n - 2:
        raise InvariantBroken(f"only {proper} proper arcs, fewer than 2n-2 = {2 * t.n - 2}")
    drop = set(added)
    d = m.diagram([e for e in t.edges() if e not in drop])
    return d, d.stats()


# -- Hamiltonian cycles to diagrams ----------------------------------------------


def page_assignment(g, h: HamCycle) -> ArcDiagram:
    """Spine in cycle order; cycle edges below, chords split by 2-colouring their conflicts."""
    order = list(h.order)
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    gx = _as_nx(g)
    if set(gx.nodes) - set(pos):
        raise TriangulationError("cycle does not visit every vertex")
    cyc = {edge(order[i], order[(i + 1) % n]) for i in range(n)}
    arcs: dict[Edge, tuple[Piece, ...]] = {}
    chords = []
    for u, v in sorted(edge(*e) for e in gx.edges):
        a, b = sorted((pos[u], pos[v]))
        if (u, v) in cyc:
            arcs[(u, v)] = (Piece(Fraction(a), Fraction(b), BELOW),)
        else:
            chords.append((a, b, (u, v)))
    colour = _two_colour(chords)
    for a, b, e in chords:
        arcs[e] = (Piece(Fraction(a), Fraction(b), ABOVE if colour[e] == 0 else BELOW),)
    spine = tuple(SpinePoint(Fraction(i), v) for i, v in enumerate(order))
    return ArcDiagram(spine, arcs)


def _two_colour(chords: list[tuple[int, int, Edge]]) -> dict[Edge, int]:
    by_left = sorted(chords)
    conflicts: dict[Edge, list[Edge]] = {e: [] for _, _, e in chords}
    for i, (a, b, e) in enumerate(by_left):
        for c, d, f in by_left[i + 1 :]:
            if c >= b:
                break
            if a < c < b < d:
                conflicts[e].append(f)
                conflicts[f].append(e)
    colour: dict[Edge, int] = {}
    for _, _, e in by_left:
        if e in colour:
            continue
        colour[e] = 0
        q = deque([e])
        while q:
            x = q.popleft()
            for y in conflicts[x]:
                if y not in colour:
                    colour[y] = 1 - colour[x]
                    q.append(y)
                elif colour[y] == colour[x]:
                    raise ConflictGraphError(f"chords {x} and {y} cannot be on different pages")
    return colour


def biarc_from_subdivision(g, s: SubdivisionResult) -> tuple[ArcDiagram, BiarcStats]:
    """Draw the subdivided graph along the witness cycle, then remove the subdivision vertices.

    A subdivided edge whose halves land on opposite sides becomes a biarc
    through the old subdivision point; halves on one side merge into a
    single proper arc.
    """
    d = page_assignment(s.subdivided_graph, s.cycle)
    pos = d.positions()
    arcs = dict(d.arcs)
    subs = {x: e for e, x in s.subdivision_vertex.items()}
    kept: dict[int, str] = {}
    for x, (u, w) in sorted(subs.items()):
        pu = arcs.pop(edge(u, x))[0]
        pw = arcs.pop(edge(w, x))[0]
        if pu.side == pw.side:
            a, b = sorted((pos[u], pos[w]))
            arcs[edge(u, w)] = (Piece(a, b, pu.side),)
        else:
            kept[x] = f"s{len(kept)}"
            arcs[edge(u, w)] = (pu, pw) if pos[u] < pos[w] else (pw, pu)
    spine = tuple(
        p if p.vertex not in subs else SpinePoint(p.pos, None, kept[p.vertex])
        for p in d.spine
        if p.vertex not in subs or p.vertex in kept
    )
    out = ArcDiagram(spine, arcs)
    want = {edge(*e) for e in _as_nx(g).edges}
    if set(arcs) != want:
        raise TriangulationError("subdivision result does not match the input graph")
    return out, out.stats()


__all__ = [
    "ABOVE",
    "BELOW",
    "ArcDiagram",
    "BiarcStats",
    "CanonicalOrdering",
    "CanonicalStep",
    "ConflictGraphError",
    "InvariantBroken",
    "NonPlanarError",
    "Piece",
    "SpinePoint",
    "augment_to_triangulation",
    "biarc_from_subdivision",
    "canonical_ordering",
    "check_structure",
    "monotone_biarc_diagram",
    "page_assignment",
    "verify_canonical_ordering",
    "verify_plane",
]
