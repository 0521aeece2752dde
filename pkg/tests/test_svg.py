from fractions import Fraction

import pytest

from flipforge.bookembed import ABOVE, BELOW, ArcDiagram, Piece, SpinePoint, monotone_biarc_diagram
from flipforge.generators import k4, stacked_random
from flipforge.svg import NotPlaneError, render_svg


def test_k4_six_paths():
    d, _ = monotone_biarc_diagram(k4())
    svg = render_svg(d)
    assert svg.count("<path") == 6 and 'class="transition"' not in svg


def test_downup_biarc_two_pieces():
    for seed in range(20):
        d, stats = monotone_biarc_diagram(stacked_random(12, seed))
        if stats.biarcs:
            break
    assert stats.biarcs
    svg = render_svg(d)
    pos = d.positions()
    for (u, v), ps in d.arcs.items():
        if len(ps) == 2:
            lo, hi = sorted((pos[u], pos[v]))
            first, second = ps if ps[0].left == lo else ps[::-1]
            assert (first.side, second.side) == (BELOW, ABOVE) and first.right == second.left
            assert svg.count(f'data-edge="{u}-{v}"') == 2
    assert svg.count("<path") == sum(len(ps) for ps in d.arcs.values())


def test_deterministic():
    d1, _ = monotone_biarc_diagram(stacked_random(30, 4))
    d2, _ = monotone_biarc_diagram(stacked_random(30, 4))
    assert render_svg(d1, comment="x") == render_svg(d2, comment="x")


def test_refuses_crossing():
    spine = tuple(SpinePoint(Fraction(i), i) for i in range(4))
    arcs = {
        (0, 2): (Piece(Fraction(0), Fraction(2), ABOVE),),
        (1, 3): (Piece(Fraction(1), Fraction(3), ABOVE),),
    }
    d = ArcDiagram(spine, arcs)
    with pytest.raises(NotPlaneError):
        render_svg(d)
    assert render_svg(d, force=True).count("<path") == 2


def test_squash_scales_height():
    d, _ = monotone_biarc_diagram(stacked_random(10, 1))
    assert render_svg(d, squash=0.5) != render_svg(d)
