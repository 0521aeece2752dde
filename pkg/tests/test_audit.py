import pytest

from flipforge.audit import (
    WrongFamilyError,
    certify_hamlower,
    certify_upsim4lower,
    hamlower_report,
    upsim4_report,
)
from flipforge.core import flip, is_flippable
from flipforge.generators import lower4c, lowerham, lowerham_independent_set


def test_hamlower_one():
    t = lowerham(1)
    r = hamlower_report(t, lowerham_independent_set(1))
    assert (r.independent, r.size, r.others, r.bound) == (True, 6, 5, 1)
    assert certify_hamlower(t, lowerham_independent_set(1), 1)


def test_hamlower_four():
    t = lowerham(4)
    assert t.n == 20
    assert hamlower_report(t, lowerham_independent_set(4)).bound == 4
    assert certify_hamlower(t, lowerham_independent_set(4), 4)
    assert not certify_hamlower(t, lowerham_independent_set(4), 5)


def test_hamlower_tampered():
    t = lowerham(2)
    V1 = set(lowerham_independent_set(2))
    # a flip whose new edge joins two V1 vertices
    e = next(e for e in t.edges() if is_flippable(t, e) and set(flip(t, e)[1].created) <= V1)
    t2, _ = flip(t, e)
    assert not certify_hamlower(t2, V1, 1)


def test_hamlower_bad_set():
    with pytest.raises(WrongFamilyError):
        hamlower_report(lowerham(1), [])


@pytest.mark.parametrize("i", [1, 3, 10])
def test_upsim4lower_family(i):
    assert certify_upsim4lower(lower4c(i), i)
    r = upsim4_report(lower4c(i), i)
    assert all(len(g) == i for g in r.groups.values())


def test_upsim4lower_after_flip():
    t = lower4c(1)
    for e in t.edges():
        if is_flippable(t, e):
            assert not certify_upsim4lower(flip(t, e)[0], 1)


def test_upsim4lower_wrong_size():
    with pytest.raises(WrongFamilyError):
        certify_upsim4lower(lower4c(2), 1)
