import pytest

from flipforge import fourblock as fb
from flipforge.core import (
    PreconditionError,
    TriangulationError,
    edges_on_separating_triangles,
    is_four_connected,
    separating_triangles,
    simultaneous_flip,
    validate,
)
from flipforge.fourconnect import (
    CheckerboardError,
    TooSmallError,
    audit_invariants,
    dummy_flip,
    faces_at,
    four_connect,
    optimal_connector,
    predummy_choice,
    sim_flip_set,
)
from flipforge.generators import checkerboard_demo, edgebound, lower4c, octahedron, wheel5
from flipforge.tait import partition

from corpus import families, fuzz


def test_sim_flip_set_examples():
    assert sim_flip_set(octahedron()) == set()
    assert len(sim_flip_set(edgebound(0))) <= 1
    assert len(sim_flip_set(lower4c(1))) == 2


def test_sim_flip_set_bound_corpus():
    for t in list(families(5)) + list(fuzz(40, 6, 120, seed=3)):
        if t.n < 6:
            continue
        F = sim_flip_set(t)
        assert len(F) <= (2 * t.n - 7) // 3
        assert F <= edges_on_separating_triangles(t)
        out, _ = simultaneous_flip(t, F)
        assert is_four_connected(out)


def test_optimal_connector_n5():
    t = wheel5()
    bt = fb.build(t)
    M = optimal_connector(bt, 0, partition(t))
    assert len(M.edges) == 1
    assert M.edges <= set(fb._tri_edges(bt.nodes[1].boundary))


def test_optimal_connector_lower4c():
    t = lower4c(1)
    M = optimal_connector(fb.build(t), 0, partition(t))
    assert len(M.edges) == 2


def test_optimal_connector_leaf_rejected():
    t = wheel5()
    with pytest.raises(TriangulationError, match="no children"):
        optimal_connector(fb.build(t), 1, partition(t))


def test_optimal_connector_checkerboard_rejected():
    t = checkerboard_demo()
    with pytest.raises(CheckerboardError):
        optimal_connector(fb.build(t), 0, partition(t))


def test_dummy_flip_lower4c_centre():
    t = lower4c(1)
    centre = next(f for f in t.face_set() if all(e in edges_on_separating_triangles(t) for e in fb._tri_edges(f)))
    g, rec = dummy_flip(t, centre)
    assert g.n == 8 and validate(g) is None and is_four_connected(g)
    assert len(rec.flips) == 3 and rec.vertex == 7


def test_dummy_flip_octahedron_rejected():
    t = octahedron()
    with pytest.raises(PreconditionError, match="no separating triangle"):
        dummy_flip(t, t.outer_face)


def test_dummy_flip_checkerboard_choice():
    t = checkerboard_demo()
    bt = fb.build(t)
    F, H = predummy_choice(bt, 0)
    assert not set(fb._tri_edges(F)) & set(fb._tri_edges(H))
    assert H in bt.child_triangles(0)
    before = set(separating_triangles(t))
    g, _ = dummy_flip(t, F)
    assert set(separating_triangles(g)) <= before


def test_predummy_not_checkerboard():
    with pytest.raises(fb.NotCheckerboardError):
        predummy_choice(fb.build(lower4c(1)), 0)


def test_four_connect_octahedron():
    r = four_connect(octahedron())
    assert r.trace == [] and r.f_total == 0 and r.d_total == 0


def test_four_connect_edgebound():
    r = four_connect(edgebound(0))
    assert r.f_total + 2 * r.d_total <= 1 and is_four_connected(r.final)


def test_four_connect_checkerboard():
    r = four_connect(checkerboard_demo())
    assert [s.kind for s in r.trace] == ["checkerboard"]
    assert (r.f_total, r.d_total) == (1, 1)
    assert r.f_total + 2 * r.d_total <= (10 - 3) / 2


def test_four_connect_too_small():
    with pytest.raises(TooSmallError):
        four_connect(wheel5())


def test_invariants_fresh_tree():
    for t in [lower4c(2), checkerboard_demo(), edgebound(4)]:
        rep = audit_invariants(fb.build(t))
        assert rep.ok and all(r.f == 0 and r.d == 0 for r in rep.nodes)


def test_invariants_after_single_flip_singleton():
    t = edgebound(0)
    r = four_connect(t)
    nd = r.trace[-1].invariant_report.nodes
    assert len(nd) == 1 and nd[0].role == "singleton" and nd[0].free >= nd[0].required


def test_planted_counter_corruption():
    t = lower4c(2)
    bt = fb.build(t)
    leaf = next(i for i in range(len(bt)) if bt.is_leaf(i))
    bad = fb.with_counters(bt, {leaf: (1, 0)})
    rep = audit_invariants(bad)
    assert not rep.ok and rep.failures()[0].node == leaf


def test_four_connect_corpus_invariants():
    for t in list(families(4)) + list(fuzz(40, 6, 100, seed=5)):
        if t.n < 6:
            continue
        r = four_connect(t)
        assert is_four_connected(r.final)
        assert 2 * (r.f_total + 2 * r.d_total) <= t.n - 3
        assert all(s.invariant_report.ok for s in r.trace)
        for v, fs in r.dummy_faces.items():
            assert faces_at(r.final, v) == fs
