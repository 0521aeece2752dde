"""Deterministic SVG rendering of arc diagrams."""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .bookembed import ABOVE, ArcDiagram, verify_plane
from .core import TriangulationError

UNIT = 40.0
MARGIN = 20.0


class NotPlaneError(TriangulationError):
    pass


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(d: ArcDiagram, squash: float = 1.0, force: bool = False, comment: str | None = None) -> str:
    """One semicircular ``<path>`` per halfcircle piece; identical input gives identical bytes.

    ``squash`` scales every vertical radius by the same factor.
    """
    bad = verify_plane(d)
    if bad is not None and not force:
        raise NotPlaneError(f"refusing to render a non-plane diagram: {bad.detail}")
    if not d.spine:
        raise NotPlaneError("empty diagram")
    x0 = d.spine[0].pos

    def X(p: Fraction) -> float:
        return MARGIN + float(p - x0) * UNIT

    pieces = [(e, q) for e, ps in sorted(d.arcs.items()) for q in ps]
    r_above = max((float(q.right - q.left) * UNIT / 2 for _, q in pieces if q.side == ABOVE), default=0.0)
    r_below = max((float(q.right - q.left) * UNIT / 2 for _, q in pieces if q.side != ABOVE), default=0.0)
    y = MARGIN + r_above * squash
    width = X(d.spine[-1].pos) + MARGIN
    height = y + r_below * squash + MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    ]
    if comment:
        out.append(f"<!-- {escape(comment.replace('--', '- -'))} -->")
    out.append(f'<line class="spine" x1="0" y1="{_fmt(y)}" x2="{_fmt(width)}" y2="{_fmt(y)}" stroke="#999"/>')
    for (u, v), q in pieces:
        a, b = X(q.left), X(q.right)
        rx = (b - a) / 2
        sweep = 1 if q.side == ABOVE else 0
        out.append(
            f'<path class="arc {q.side}" data-edge="{u}-{v}" fill="none" stroke="black" '
            f'd="M {_fmt(a)} {_fmt(y)} A {_fmt(rx)} {_fmt(rx * squash)} 0 0 {sweep} {_fmt(b)} {_fmt(y)}"/>'
        )
    for p in d.spine:
        cx = _fmt(X(p.pos))
        if p.vertex is None:
            out.append(f'<circle class="transition" data-sub="{escape(p.sub or "")}" cx="{cx}" cy="{_fmt(y)}" r="2"/>')
        else:
            out.append(f'<circle class="vertex" data-id="{p.vertex}" cx="{cx}" cy="{_fmt(y)}" r="4"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = ["NotPlaneError", "render_svg"]
