import re

import pytest

from adlv.afweyl import identity, omega_elements, translation
from adlv.errors import NotBasic, RankNotTwo
from adlv.render import base_alcove_vertices, render_svg

from conftest import get_datum

POLY = re.compile(r'<polygon points="([^"]+)" fill="(#[0-9a-f]{6})"><title>([^<]+)</title>')


def test_single_base_alcove():
    d = get_datum("A2")
    svg = render_svg(d, identity(d), 0)
    polys = POLY.findall(svg)
    assert len(polys) == 1
    assert polys[0][1] == "#5fb85f" and polys[0][2] == "t[0,0]*e"
    assert len(polys[0][0].split()) == 3


def test_product_renders_squares():
    d = get_datum("A1xA1+swap")
    assert len(base_alcove_vertices(d)) == 4
    svg = render_svg(d, identity(d), 3)
    for pts, _, _ in POLY.findall(svg):
        corners = [tuple(map(float, p.split(","))) for p in pts.split()]
        assert len(corners) == 4
        sides = {round(((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2) ** 0.5, 6) for a, b in zip(corners, corners[1:] + corners[:1])}
        assert len(sides) == 1


@pytest.mark.parametrize("name", ["A2", "A2+swap", "C2", "G2", "A1xA1+swap"])
def test_deterministic_and_six_decimals(name):
    d = get_datum(name)
    for b in omega_elements(d):
        one = render_svg(d, b, 4)
        assert one == render_svg(d, b, 4)
        geometry = " ".join(re.findall(r'(?:points|x1|y1|x2|y2|viewBox)="([^"]+)"', one))
        nums = re.findall(r"-?\d+\.\d+", geometry)
        assert nums and all(len(n.split(".")[1]) == 6 for n in nums)
        assert "-0.000000" not in one


def test_alcove_count_and_colours():
    d = get_datum("A2")
    svg = render_svg(d, identity(d), 3)
    polys = POLY.findall(svg)
    # the affine Weyl group of A2 has 1, 3, 6, 9 elements of length 0..3
    assert len(polys) == 1 + 3 + 6 + 9
    assert {fill for _, fill, _ in polys} == {"#5fb85f", "#d9534f"}


def test_errors():
    with pytest.raises(RankNotTwo):
        render_svg(get_datum("A3"), identity(get_datum("A3")), 1)
    d = get_datum("A2")
    with pytest.raises(NotBasic):
        render_svg(d, translation(d, (1, 1)), 1)
