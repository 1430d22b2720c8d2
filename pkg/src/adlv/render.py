"""SVG picture of the apartment for rank-2 data.

Each alcove ``w(base)`` with ``w`` in the affine Weyl group of length at most
``max_length`` is filled green when X_{w tau}(b) is nonempty by the alcove
criterion and red otherwise; ``tau`` is the first length-zero element with
the Kottwitz class of b. The walls of the shrunken chambers are dashed, the
base alcove has a heavy outline.

Geometry is exact until the final embedding into the plane, which uses a
W-invariant inner product so that the picture has the familiar angles.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import TextIO

from .afweyl import AffineElement, act_point, affine_weyl_layers, compose, kappa, omega_elements
from .alcoves import nonempty_basic_criterion, require_basic
from .errors import RankNotTwo
from .rootdata import RootDatum

__all__ = ["base_alcove_vertices", "render_apartment", "render_svg"]

_GREEN = "#5fb85f"
_RED = "#d9534f"
_UNIT = 60.0


def base_alcove_vertices(datum: RootDatum) -> list[tuple[Fraction, ...]]:
    """Vertices of the closed base alcove, in coweight coordinates."""
    per_comp = []
    for c, (_, _, nodes) in enumerate(datum.components):
        theta = datum.roots[datum.highest_root[c]]
        verts = [{}]
        for i in nodes:
            verts.append({i: Fraction(-1, theta[i])})
        per_comp.append(verts)
    out = [{}]
    for verts in per_comp:
        out = [{**a, **b} for a in out for b in verts]
    return [tuple(v.get(i, Fraction(0)) for i in range(datum.rank)) for v in out]


def _embedding(datum: RootDatum):
    """Cholesky factor of the W-averaged Gram matrix (coweight coordinates)."""
    g = [[0, 0], [0, 0]]
    for M in datum.W.matrix:
        for i in range(2):
            for j in range(2):
                g[i][j] += sum(M[k][i] * M[k][j] for k in range(2))
    s = g[0][0]
    a = 1.0
    b = g[0][1] / s
    c = math.sqrt(g[1][1] / s - (g[0][1] / s) ** 2)

    def embed(v):
        x = a * float(v[0]) + b * float(v[1])
        y = c * float(v[1])
        return (_UNIT * x, -_UNIT * y)

    return embed


def _num(v: float) -> str:
    out = f"{v:.6f}"
    return "0.000000" if out == "-0.000000" else out


def _points(pts) -> str:
    return " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)


def _cyclic(verts, embed):
    """Order vertices counter-clockwise around their centroid."""
    pts = [embed(v) for v in verts]
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    order = sorted(range(len(pts)), key=lambda i: math.atan2(pts[i][1] - cy, pts[i][0] - cx))
    return [verts[i] for i in order]


def _tau(datum: RootDatum, b: AffineElement) -> AffineElement:
    target = kappa(b)
    return next(t for t in omega_elements(datum) if kappa(t) == target)


def render_svg(datum: RootDatum, b: AffineElement, max_length: int) -> str:
    if datum.rank != 2:
        raise RankNotTwo(f"render needs total rank 2, got {datum.rank}")
    require_basic(b)
    embed = _embedding(datum)
    base = _cyclic(base_alcove_vertices(datum), embed)
    tau = _tau(datum, b)

    polys = []
    for layer in affine_weyl_layers(datum, max_length):
        for w in layer:
            x = compose(w, tau)
            pts = [embed(act_point(w, v)) for v in base]
            polys.append((str(x), nonempty_basic_criterion(x, b), pts))

    xs = [p[0] for _, _, pts in polys for p in pts]
    ys = [p[1] for _, _, pts in polys for p in pts]
    pad = _UNIT / 2
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    reach = 2 * max(x1 - x0, y1 - y0) / _UNIT

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_num(x0)} {_num(y0)} {_num(x1 - x0)} {_num(y1 - y0)}">',
        f"<title>{datum.spec.name}, b = {b}, length &lt;= {max_length}</title>",
        '<g stroke="#333333" stroke-width="0.6">',
    ]
    for label, ok, pts in polys:
        fill = _GREEN if ok else _RED
        lines.append(f'<polygon points="{_points(pts)}" fill="{fill}"><title>{label}</title></polygon>')
    lines.append("</g>")

    # walls <v, a> = 0 and <v, a> = -1 of the shrunken chambers
    lines.append('<g stroke="#000000" stroke-width="1" stroke-dasharray="4,3" fill="none">')
    for a in datum.positive:
        r = datum.roots[a]
        d = (Fraction(r[1]), Fraction(-r[0]))
        nn = r[0] * r[0] + r[1] * r[1]
        for level in (0, -1):
            p = (Fraction(level * r[0], nn), Fraction(level * r[1], nn))
            scale = Fraction(reach).limit_denominator(1000) / max(abs(d[0]), abs(d[1]))
            ends = [embed(tuple(pi + sgn * scale * di for pi, di in zip(p, d))) for sgn in (-1, 1)]
            lines.append(
                f'<line x1="{_num(ends[0][0])}" y1="{_num(ends[0][1])}" x2="{_num(ends[1][0])}" y2="{_num(ends[1][1])}"/>'
            )
    lines.append("</g>")
    lines.append(
        f'<polygon points="{_points(embed(v) for v in base)}" fill="none" stroke="#000000" stroke-width="2.5"/>'
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def render_apartment(datum: RootDatum, b: AffineElement, max_length: int, out: TextIO) -> None:
    out.write(render_svg(datum, b, max_length))
