import json
from pathlib import Path

import networkx as nx
import pytest

from flipforge.bookembed import verify_plane
from flipforge.core import flip, is_flippable, relabel
from flipforge.generators import edgebound, k4, lower4c, octahedron, stack, stacked_random
from flipforge.oracle import (
    INFINITY,
    OracleBudgetError,
    enumerate,
    enumerate_triangulations,
    flip_distance,
    is_subhamiltonian,
    labelled_flip_diameter,
    labelled_flip_distance,
    min_biarcs,
    min_simflip_to_4connected,
    reference_code,
)

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def enum_golden():
    return json.loads((GOLDEN / "enumeration.json").read_text())


@pytest.fixture(scope="module")
def flip_golden():
    return json.loads((GOLDEN / "flipdist.json").read_text())


@pytest.mark.parametrize("n,count", [(4, 1), (5, 1), (6, 2), (7, 5), (8, 14)])
def test_class_counts(n, count):
    assert len(enumerate(n)) == count


@pytest.mark.parametrize("n", range(4, 10))
def test_enumeration_matches_golden(n, enum_golden):
    g = enum_golden[str(n)]
    assert g["classes_primary"] == g["classes_reference"]
    assert [c.hex() for c in enumerate_triangulations(n).nodes] == g["codes_primary"]
    if n <= 8:
        assert sorted(enumerate_triangulations(n, code=reference_code).nodes) == g["codes_reference"]


def test_reference_code_invariance():
    t = stacked_random(5, 3)
    assert reference_code(relabel(t, [8, 7, 6, 5, 4, 3, 2, 1, 0])) == reference_code(t)
    assert reference_code(octahedron()) != reference_code(stacked_random(2, 0))


def test_codes_partition_agree():
    # both codes must induce the same partition of the representatives
    ix = enumerate_triangulations(8)
    ref = {reference_code(t) for t in ix.reps.values()}
    assert len(ref) == len(ix.nodes)


def test_flip_distance_examples(flip_golden):
    t = stacked_random(4, 1)
    assert flip_distance(t, t) == 0
    assert labelled_flip_distance(t, t) == 0
    o, s = octahedron(), stacked_random(2, 0)
    assert flip_distance(o, s) == flip_golden["octahedron_stacked_classes"]
    assert labelled_flip_distance(o, s) == flip_golden["octahedron_stacked_labelled"]


def test_labelled_distance_single_flip():
    t = octahedron()
    e = next(x for x in t.edges() if is_flippable(t, x))
    assert labelled_flip_distance(t, flip(t, e)[0]) == 1


def test_labelled_at_least_class_distance():
    a, b = stacked_random(3, 1), stacked_random(3, 2)
    assert labelled_flip_distance(a, b) >= flip_distance(a, b)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_diameters_within_bound(n, flip_golden):
    ix = enumerate_triangulations(n)
    assert ix.diameter() == flip_golden["class_diameter"][str(n)]
    d = labelled_flip_diameter(n, ix)
    assert d == flip_golden["labelled_diameter"][str(n)]
    assert d <= max(0, 5 * n - 23) or n < 6


def test_enumeration_cap():
    with pytest.raises(OracleBudgetError):
        enumerate_triangulations(11)


def test_min_simflip_examples():
    assert min_simflip_to_4connected(octahedron()) == 0
    assert min_simflip_to_4connected(lower4c(1)) == 2
    assert min_simflip_to_4connected(edgebound(0)) <= 1
    assert min_simflip_to_4connected(k4()) == INFINITY


def test_min_simflip_budget():
    with pytest.raises(OracleBudgetError):
        min_simflip_to_4connected(lower4c(2), budget=10)


def test_subhamiltonian_k4():
    ok, d = is_subhamiltonian(k4())
    assert ok and verify_plane(d) is None


def test_subhamiltonian_witnesses_small():
    for n in range(4, 8):
        for t in enumerate_triangulations(n).reps.values():
            ok, d = is_subhamiltonian(t)
            assert ok and verify_plane(d) is None
            assert set(d.arcs) == set(t.edges())


def test_subhamiltonian_stellated_k4():
    t = stack(k4(), sorted(k4().face_set()))
    assert t.n == 8
    ok, d = is_subhamiltonian(t)
    assert ok and verify_plane(d) is None


def test_nonplanar_not_subhamiltonian():
    assert is_subhamiltonian(nx.complete_graph(5)) == (False, None)
    assert is_subhamiltonian(nx.complete_bipartite_graph(3, 3)) == (False, None)


def test_non_hamiltonian_planar_is_subhamiltonian():
    g = nx.complete_bipartite_graph(2, 4)
    ok, d = is_subhamiltonian(g)
    assert ok and verify_plane(d) is None


def test_min_biarcs_examples():
    assert min_biarcs(k4()) == 0
    assert min_biarcs(octahedron()) == 0
    assert min_biarcs(nx.cycle_graph(5)) == 0
