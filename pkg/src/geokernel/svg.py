"""Static SVG rendering of an evaluated script."""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from .script import approx_decimal

DIGITS = 4

# segments drawn for each construction, as indices into args + (result,)
_SEGMENTS = {
    "midpoint": [(0, 1)],
    "extend": [(0, 4)],
    "straightedge_compass": [(0, 4), (2, 3)],
    "compass_compass": [(0, 6), (2, 6)],
    "plane_separation": [(0, 1), (2, 3), (2, 4)],
    "outer_pasch": [(1, 5), (2, 0)],
    "parallelogram_fourth": [(0, 1), (1, 3), (3, 2), (2, 0)],
    "bisector_foot": [(0, 3), (1, 2)],
}


def _num(q: Fraction) -> str:
    q = Fraction(q)
    s = f"{float(q):.{DIGITS}f}"
    return "0.0000" if s == "-0.0000" else s


def _coords(p) -> tuple[Fraction, Fraction]:
    x, y = (Fraction(approx_decimal(c, DIGITS)) for c in (p.x, p.y))
    return x, -y  # SVG y axis points down


def render_svg(env) -> str:
    pts = {name: _coords(p) for name, p in env.bindings.items()}
    segs = []
    for rec in env.constructions:
        names = list(rec.args) + list(rec.names)
        for i, j in _SEGMENTS.get(rec.func, []):
            if i < len(names) and j < len(names):
                segs.append((names[i], names[j]))

    if pts:
        xs = [x for x, _ in pts.values()]
        ys = [y for _, y in pts.values()]
        w, h = max(xs) - min(xs), max(ys) - min(ys)
        size = max(w, h) or Fraction(1)
        m = size / 10
        box = (min(xs) - m, min(ys) - m, w + 2 * m, h + 2 * m)
    else:
        size = Fraction(1)
        box = (0, 0, 1, 1)
    r = size / 100
    font = size / 25

    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'viewBox="{" ".join(_num(v) for v in box)}">']
    if segs:
        out.append(f'  <g stroke="black" stroke-width="{_num(r / 2)}" fill="none">')
        for a, b in segs:
            (x1, y1), (x2, y2) = pts[a], pts[b]
            out.append(f'    <line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" '
                       f'data-from={quoteattr(a)} data-to={quoteattr(b)}/>')
        out.append("  </g>")
    if pts:
        out.append(f'  <g font-family="sans-serif" font-size="{_num(font)}">')
        for name, (x, y) in pts.items():
            out.append(f'    <circle cx="{_num(x)}" cy="{_num(y)}" r="{_num(r)}" fill="black" '
                       f'id={quoteattr("pt-" + name)}/>')
            out.append(f'    <text x="{_num(x + r * 2)}" y="{_num(y - r * 2)}">{escape(name)}</text>')
        out.append("  </g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(env, path: str | Path) -> None:
    Path(path).write_text(render_svg(env), encoding="utf-8")
