import pytest

from flipforge.core import triangle_triples, validate
from flipforge.generators import k4, lower4c, octahedron
from flipforge.tait import (
    CLASSES,
    ImproperColoringError,
    TaitPartition,
    VertexColoring,
    four_color,
    improper_edge,
    partition,
    tait_partition,
    verify_partition,
)

from corpus import families, fuzz


def test_k4_uses_four_colours():
    assert len(set(four_color(k4()).colors)) == 4


@pytest.mark.parametrize("t", [octahedron(), lower4c(3)], ids=["octahedron", "lower4c3"])
def test_proper_colouring(t):
    c = four_color(t)
    assert improper_edge(t, c) is None
    assert len(set(c.colors)) <= 4


@pytest.mark.parametrize("t,size", [(k4(), 2), (octahedron(), 4)], ids=["k4", "octahedron"])
def test_class_sizes(t, size):
    p = partition(t)
    assert [len(v) for v in p.classes().values()] == [size] * 3


def test_improper_colouring_rejected():
    with pytest.raises(ImproperColoringError):
        tait_partition(k4(), VertexColoring((0, 0, 1, 2)))


def test_planted_face_violation():
    t = octahedron()
    p = partition(t)
    a, b, c = t.outer_face
    cls = dict(p.class_of)
    key = (min(a, b), max(a, b))
    other = (min(a, c), max(a, c))
    cls[other] = cls[key]
    d = verify_partition(t, TaitPartition(cls))
    assert d is not None and d.rule == "triangle hit"


def test_missing_edge_unclassified():
    t = octahedron()
    cls = dict(partition(t).class_of)
    cls.pop(t.edges()[0])
    d = verify_partition(t, TaitPartition(cls))
    assert d.rule == "unclassified edge"


def test_partition_structure_corpus():
    for t in list(families()) + list(fuzz(40, n_max=80)):
        assert validate(t) is None
        p = partition(t)
        assert verify_partition(t, p) is None
        assert all(len(v) == t.n - 2 for v in p.classes().values())
        for a, b, c in triangle_triples(t):
            ks = {p.class_of[(a, b)], p.class_of[(a, c)], p.class_of[(b, c)]}
            assert ks == set(CLASSES)
