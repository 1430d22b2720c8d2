"""Text form of affine Weyl group elements.

Grammar::

    expression = term (("*" | whitespace) term)*
    term       = "e" | "s" INT | "s0" | "s0@" INT | "t[" INT ("," INT)* "]"

``sN`` is the finite simple reflection of node N (1-based), ``s0@c`` the
affine simple reflection of component c, ``t[...]`` a translation in
Lambda-coordinates. The canonical form printed by :func:`format_element` is
``t[c1,...,cr]*<word>`` with the shortlex-minimal reduced word of the finite
part, or ``e`` when the finite part is trivial.
"""

from __future__ import annotations

import re

from .afweyl import AffineElement, compose, finite_element, identity, simple_affine_reflections, translation
from .errors import ParseError, UnknownGenerator
from .rootdata import RootDatum

__all__ = ["parse_element", "format_element", "format_word"]

_TOKEN = re.compile(
    r"\s*(?:(?P<t>t\[(?P<coords>[^\]]*)\])|(?P<s0>s0(?:@(?P<comp>\d+))?(?![\d]))|(?P<s>s(?P<node>\d+))|(?P<e>e(?![\w])))"
)
_SEP = re.compile(r"\s*\*\s*|\s+")


def parse_element(datum: RootDatum, text: str) -> AffineElement:
    pos = 0
    n = len(text)
    result = identity(datum)
    sims = dict(simple_affine_reflections(datum))
    expect_term = True
    terms = 0
    while True:
        if expect_term or not text[pos:].strip():
            while pos < n and text[pos].isspace():
                pos += 1
        if pos >= n:
            break
        if not expect_term:
            m = _SEP.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"expected '*' or whitespace in {text!r}", pos)
            pos = m.end()
            expect_term = True
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input {text[pos:pos + 8]!r}", pos)
        start = pos
        if m.group("t") is not None:
            parts = [p.strip() for p in m.group("coords").split(",")]
            try:
                coords = [int(p) for p in parts]
            except ValueError:
                raise ParseError(f"translation coordinates must be integers: {m.group('t')!r}", start)
            if len(coords) != datum.rank:
                raise ParseError(f"translation needs {datum.rank} coordinates, got {len(coords)}", start)
            term = translation(datum, coords, coords="lattice")
        elif m.group("s0") is not None:
            comp = m.group("comp")
            if comp is None:
                if len(datum.components) != 1:
                    raise UnknownGenerator("s0 is ambiguous for several components; use s0@c", start)
                label = "s0"
            else:
                c = int(comp)
                if not 1 <= c <= len(datum.components):
                    raise UnknownGenerator(f"no component {c}", start)
                label = f"s0@{c}" if len(datum.components) > 1 else "s0"
            term = sims[label]
        elif m.group("s") is not None:
            i = int(m.group("node"))
            if not 1 <= i <= datum.rank:
                raise UnknownGenerator(f"no simple reflection s{i}", start)
            term = finite_element(datum, datum.W.simple[i - 1])
        else:
            term = identity(datum)
        result = compose(result, term)
        terms += 1
        pos = m.end()
        expect_term = False
    if not terms:
        raise ParseError("empty expression", 0)
    if expect_term:
        raise ParseError("expression ends with a separator", n)
    return result


def format_word(datum: RootDatum, w: int) -> str:
    word = datum.W.word[w]
    return " ".join(f"s{i + 1}" for i in word) if word else "e"


def format_element(x: AffineElement) -> str:
    coords = x.datum.to_lattice(x.lam)
    return "t[" + ",".join(str(c) for c in coords) + "]*" + format_word(x.datum, x.w)
