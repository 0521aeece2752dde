"""Structural certificates for the lower-bound families.

Neither check searches.  Each verifies the premises of a counting argument
directly on the graph, so the bound follows by arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .core import Triangulation, TriangulationError, edge, separating_triangles, validate
from .fourblock import interior


class WrongFamilyError(TriangulationError):
    pass


@dataclass(frozen=True)
class HamlowerReport:
    independent: bool
    size: int
    others: int
    bound: int  # forced V1-V1 cycle edges, each needing its own flip

    def to_json_obj(self) -> dict:
        return {"independent": self.independent, "size": self.size, "others": self.others, "bound": self.bound}


def hamlower_report(t: Triangulation, V1: Iterable[int]) -> HamlowerReport:
    """A Hamiltonian cycle alternates at most ``n - |V1|`` times out of ``V1``.

    So at least ``|V1| - (n - |V1|)`` of its edges join two ``V1`` vertices.
    When ``V1`` is independent none of those edges exist yet, and one flip
    creates one edge.
    """
    vs = sorted(set(V1))
    if validate(t) is not None:
        raise WrongFamilyError("not a valid triangulation")
    if not vs or vs[0] < 0 or vs[-1] >= t.n:
        raise WrongFamilyError("V1 must be a non-empty set of vertices of t")
    inside = set(vs)
    independent = all(not (t.adjacency[v] & inside) for v in vs)
    others = t.n - len(vs)
    return HamlowerReport(independent, len(vs), others, max(0, len(vs) - others))


def certify_hamlower(t: Triangulation, V1: Iterable[int], k: int) -> bool:
    """True iff ``V1`` certifies that ``k`` flips (or subdivisions) are necessary."""
    r = hamlower_report(t, V1)
    return r.independent and r.bound >= k and r.bound >= Fraction(t.n - 8, 3)


@dataclass(frozen=True)
class Upsim4Report:
    groups: dict  # outer edge -> separating triangles through it
    within_ok: bool
    across_ok: bool

    @property
    def ok(self) -> bool:
        return self.within_ok and self.across_ok


def upsim4_report(t: Triangulation, i: int) -> Upsim4Report:
    if i < 0 or t.n != 3 * i + 4:
        raise WrongFamilyError(f"expected n = 3i + 4 = {3 * i + 4}, got {t.n}")
    a, b, c = t.outer_face
    f0 = (edge(a, b), edge(a, c), edge(b, c))
    groups: dict = {e: [] for e in f0}
    stray = []
    for s in separating_triangles(t):
        hit = [e for e in f0 if e[0] in s and e[1] in s]
        if len(hit) == 1:
            groups[hit[0]].append(s)
        else:
            stray.append(s)

    def tedges(s):
        x, y, z = s
        return {edge(x, y), edge(x, z), edge(y, z)}

    within = not stray and all(len(g) == i for g in groups.values())
    for e, g in groups.items():
        for p in range(len(g)):
            for q in range(p + 1, len(g)):
                if tedges(g[p]) & tedges(g[q]) != {e}:
                    within = False
    # only the largest triangle of each group may share an edge with another group
    largest = {e: max(g, key=lambda s: (len(interior(t, s)), s)) for e, g in groups.items() if g}
    across = True
    keys = list(groups)
    for x in range(3):
        for y in range(x + 1, 3):
            for s in groups[keys[x]]:
                for r in groups[keys[y]]:
                    if tedges(s) & tedges(r) and (s != largest[keys[x]] or r != largest[keys[y]]):
                        across = False
    return Upsim4Report({e: sorted(g) for e, g in groups.items()}, within, across)


def certify_upsim4lower(t: Triangulation, i: int) -> bool:
    """Three groups of ``i`` separating triangles, one per outer edge, as the counting needs."""
    return upsim4_report(t, i).ok


__all__ = [
    "HamlowerReport",
    "Upsim4Report",
    "WrongFamilyError",
    "certify_hamlower",
    "certify_upsim4lower",
    "hamlower_report",
    "upsim4_report",
]
