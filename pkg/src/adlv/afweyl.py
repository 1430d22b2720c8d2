"""Extended affine Weyl group Lambda x| W with the anti-dominant base alcove.

An element ``x = t^lam w`` acts on V by ``v -> lam + w(v)``. The base alcove is
cut out by ``-1 < <v, a> < 0`` for a in the positive roots of each
component; its interior point ``p0 = -rho^vee / (2(h - 1))`` (per component)
is carried along to decide every chamber and strip question exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DatumMismatch, NotInLevi, OnHyperplane
from .rootdata import RootDatum, dominant_representative

__all__ = [
    "AffineElement",
    "ClassInvariants",
    "Frobenius",
    "identity",
    "translation",
    "finite_element",
    "simple_affine_reflections",
    "compose",
    "invert",
    "apply_delta",
    "length",
    "k_index",
    "base_point",
    "act_point",
    "omega_elements",
    "kappa",
    "newton",
    "eta",
    "sigma_invariants",
    "elements_up_to",
    "affine_weyl_layers",
    "is_basic",
    "in_parabolic",
]


@dataclass(frozen=True, slots=True)
class AffineElement:
    """``t^lam w``: ``lam`` in coweight coordinates, ``w`` an index into ``datum.W``."""

    lam: tuple[int, ...]
    w: int
    datum: RootDatum = field(compare=False, hash=False, repr=False)

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        return compose(self, other)

    def inverse(self) -> "AffineElement":
        return invert(self)

    @property
    def length(self) -> int:
        return length(self)

    @property
    def sort_key(self):
        return (self.lam, self.w)

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        from .expr import format_element

        return format_element(self)


def identity(datum: RootDatum) -> AffineElement:
    return AffineElement((0,) * datum.rank, 0, datum)


def translation(datum: RootDatum, lam: Sequence[int], coords: str = "coweight") -> AffineElement:
    """``t^lam``; ``coords`` is "coweight" or "lattice" (Lambda-coordinates)."""
    if coords == "lattice":
        lam = datum.from_lattice(lam)
    else:
        lam = tuple(int(x) for x in lam)
        datum.to_lattice(lam)
    return AffineElement(tuple(lam), 0, datum)


def finite_element(datum: RootDatum, w: int) -> AffineElement:
    return AffineElement((0,) * datum.rank, w, datum)


def simple_affine_reflections(datum: RootDatum) -> list[tuple[str, AffineElement]]:
    """The simple affine reflections: s1..sr, then s0 of each component.

    ``s0@c = t^{-theta_c^vee} s_{theta_c}``, the reflection in the wall
    ``<v, theta_c> = -1`` of the base alcove.
    """
    key = ("sim_aff",)
    if key in datum._cache:
        return datum._cache[key]
    out = [(f"s{i + 1}", finite_element(datum, datum.W.simple[i])) for i in range(datum.rank)]
    multi = len(datum.components) > 1
    for c, top in enumerate(datum.highest_root):
        lam = tuple(-x for x in datum.coroots[top])
        label = f"s0@{c + 1}" if multi else "s0"
        out.append((label, AffineElement(lam, datum.reflection(top), datum)))
    datum._cache[key] = out
    return out


def _check(x, y):
    if x.datum is not y.datum:
        raise DatumMismatch("elements belong to different root data")


def compose(x: AffineElement, y: AffineElement) -> AffineElement:
    _check(x, y)
    W = x.datum.W
    moved = W.act(x.w, y.lam)
    return AffineElement(tuple(a + b for a, b in zip(x.lam, moved)), W.mul(x.w, y.w), x.datum)


def invert(x: AffineElement) -> AffineElement:
    W = x.datum.W
    wi = W.inverse[x.w]
    return AffineElement(tuple(-a for a in W.act(wi, x.lam)), wi, x.datum)


def apply_delta(x: AffineElement, power: int = 1) -> AffineElement:
    """delta^power(x); negative powers apply the inverse automorphism."""
    d = x.datum
    lam, w = x.lam, x.w
    if power >= 0:
        for _ in range(power):
            lam, w = d.delta_vector(lam), d.delta_w[w]
    else:
        for _ in range(-power):
            lam, w = d.delta_inverse_vector(lam), d.delta_inv_w[w]
    return AffineElement(tuple(lam), w, d)


class Frobenius:
    """The Frobenius action on the affine Weyl group: ``y -> z delta(y) z^-1``.

    With ``z`` the identity this is the diagram automorphism of the datum; a
    length-zero ``z`` gives the action of an inner form. Classes for the twisted
    action are identified with classes for delta through ``[y] -> [y z]``.
    """

    def __init__(self, datum: RootDatum, z: AffineElement | None = None):
        self.datum = datum
        self.z = identity(datum) if z is None else z
        self.z_inv = invert(self.z)
        self.twisted = self.z != identity(datum)

    def __call__(self, y: AffineElement) -> AffineElement:
        if not self.twisted:
            return apply_delta(y)
        return compose(compose(self.z, apply_delta(y)), self.z_inv)

    def inverse(self, y: AffineElement) -> AffineElement:
        if not self.twisted:
            return apply_delta(y, -1)
        return apply_delta(compose(compose(self.z_inv, y), self.z), -1)

    def __eq__(self, other):
        return isinstance(other, Frobenius) and other.datum is self.datum and other.z == self.z

    def __hash__(self):
        return hash(self.z)

    def __repr__(self):
        return f"Frobenius(z={self.z})"


# ---------------------------------------------------------------- base alcove
def _p0_tables(datum: RootDatum):
    """Scale D and the integers D * <w(p0), a> for every w and root a."""
    key = ("p0",)
    tab = datum._cache.get(key)
    if tab is not None:
        return tab
    dens = [2 * (h - 1) for h in datum.coxeter_number]
    D = 1
    for q in dens:
        D = D * q // math.gcd(D, q)
    p0 = [0] * datum.rank
    for c, (_, _, nodes) in enumerate(datum.components):
        for i in nodes:
            p0[i] = -D // dens[c]
    W = datum.W
    roots = datum.roots
    table = []
    for w in range(W.order):
        # <w p0, a> = <p0, w^{-1} a>
        winv = W.perm[W.inverse[w]]
        table.append(tuple(sum(p * c for p, c in zip(p0, roots[winv[a]])) for a in range(len(roots))))
    tab = (D, tuple(p0), table)
    datum._cache[key] = tab
    return tab


def base_point(datum: RootDatum) -> tuple[Fraction, ...]:
    """Interior point of the base alcove, in coweight coordinates."""
    D, p0, _ = _p0_tables(datum)
    return tuple(Fraction(p, D) for p in p0)


def act_point(x: AffineElement, v: Sequence) -> tuple:
    """x(v) = lam + w(v)."""
    return tuple(a + b for a, b in zip(x.lam, x.datum.W.act(x.w, v)))


def _scaled_pairing(x: AffineElement, a: int) -> int:
    D, _, table = _p0_tables(x.datum)
    return D * sum(l * c for l, c in zip(x.lam, x.datum.roots[a])) + table[x.w][a]


def k_index(a: int, x: AffineElement, point: Sequence | None = None) -> int:
    """The integer k with k - 1 < <x(p), a> < k, p the base point by default."""
    if point is None:
        D = _p0_tables(x.datum)[0]
        return -((-_scaled_pairing(x, a)) // D)
    q = Fraction(x.datum.pair(act_point(x, point), a))
    if q.denominator == 1:
        raise OnHyperplane(f"point lies on a hyperplane of root {x.datum.roots[a]}")
    return math.ceil(q)


def length(x: AffineElement) -> int:
    """Number of affine root hyperplanes separating x(base alcove) from the base alcove."""
    d = x.datum
    D, _, table = _p0_tables(d)
    row = table[x.w]
    lam = x.lam
    total = 0
    for a in d.positive:
        n = D * sum(l * c for l, c in zip(lam, d.roots[a])) + row[a]
        total += abs(-((-n) // D))
    return total


# ------------------------------------------------------------------ subgroups
def omega_elements(datum: RootDatum) -> list[AffineElement]:
    """The length-zero elements, one per class of Lambda / Q^vee, identity first."""
    key = ("omega",)
    if key in datum._cache:
        return datum._cache[key]
    per_comp = []
    for c, (_, _, nodes) in enumerate(datum.components):
        theta = datum.roots[datum.highest_root[c]]
        opts = [(0,) * datum.rank]
        for i in nodes:
            if theta[i] == 1:
                opts.append(tuple(-int(j == i) for j in range(datum.rank)))
        per_comp.append(opts)
    found = []
    for combo in _product(per_comp):
        lam = tuple(sum(v[i] for v in combo) for i in range(datum.rank))
        if not datum.in_lattice(lam):
            continue
        for w in range(datum.W.order):
            x = AffineElement(lam, w, datum)
            if length(x) == 0:
                found.append(x)
                break
    found.sort(key=lambda x: (any(x.lam), x.sort_key))
    datum._cache[key] = found
    return found


def _product(lists):
    out = [[]]
    for opts in lists:
        out = [prev + [o] for prev in out for o in opts]
    return out


def in_parabolic(datum: RootDatum, w: int, J) -> bool:
    """Whether the finite Weyl element w lies in W_J."""
    J = frozenset(J)
    key = ("W_J", J)
    members = datum._cache.get(key)
    if members is None:
        W = datum.W
        members = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for u in frontier:
                for j in J:
                    v = W.mul(u, W.simple[j])
                    if v not in members:
                        members.add(v)
                        nxt.append(v)
            frontier = nxt
        members = frozenset(members)
        datum._cache[key] = members
    return w in members


def kappa(x: AffineElement, J=None) -> tuple[int, ...]:
    """Class of the translation part of x in (Lambda / Q^vee_J)_delta.

    ``J=None`` means all nodes (the Kottwitz map of the whole group). For a
    proper J the finite part of x has to lie in W_J.
    """
    d = x.datum
    if J is not None and len(J) < d.rank and not in_parabolic(d, x.w, J):
        raise NotInLevi(f"{x} is not in the Levi subgroup for J={sorted(j + 1 for j in J)}")
    return d.kappa_group(J).project(d.to_lattice(x.lam))


# --------------------------------------------------------- Newton and friends
def _twisted_power(x: AffineElement, n: int) -> AffineElement:
    P, y = x, x
    for _ in range(n - 1):
        y = apply_delta(y)
        P = compose(P, y)
    return P


def newton(x: AffineElement, exponent: int | None = None):
    """``(nu, nu_bar)``: Newton vector and its dominant representative.

    By default n is the least k with ``x delta(x) ... delta^{k-1}(x)`` a
    translation and ``delta^k = 1``; any positive multiple of it may be passed
    as ``exponent``.
    """
    d = x.datum
    if exponent is None:
        P, y, k = x, x, 1
        while P.w != 0 or k % d.delta_order:
            y = apply_delta(y)
            P = compose(P, y)
            k += 1
        n = k
    else:
        n = exponent
        P = _twisted_power(x, n)
        if P.w != 0 or n % d.delta_order:
            raise ValueError(f"exponent {n} does not make the twisted power a translation")
    nu = tuple(Fraction(m, n) for m in P.lam)
    return nu, dominant_representative(d, nu)[0]


def eta(x: AffineElement) -> tuple[int, int, int]:
    """(eta_1, eta_2, eta_delta) as indices into ``datum.W``.

    eta_1 is the finite part; eta_2 the v with v^{-1} x(base alcove) in the
    dominant chamber; eta_delta = delta^{-1}(eta_2^{-1} eta_1) eta_2.
    """
    d = x.datum
    W = d.W
    D, p0, table = _p0_tables(d)
    # D * x(p0) in coweight coordinates; regular, so the dominant witness is unique
    point = tuple(D * l + m for l, m in zip(x.lam, W.act(x.w, p0)))
    _, u = dominant_representative(d, point)
    e2 = W.inverse[u]
    e1 = x.w
    ed = W.mul(d.delta_inv_w[W.mul(W.inverse[e2], e1)], e2)
    return e1, e2, ed


@dataclass(frozen=True)
class ClassInvariants:
    """Dominant Newton vector (coweight coordinates) and Kottwitz class."""

    nu_bar: tuple[Fraction, ...]
    kappa: tuple[int, ...]

    @property
    def is_basic(self) -> bool:
        return all(v == 0 for v in self.nu_bar)

    def to_json(self) -> dict:
        return {"nu_bar": [str(v) for v in self.nu_bar], "kappa": list(self.kappa)}


def sigma_invariants(x: AffineElement, frob: Frobenius | None = None) -> ClassInvariants:
    """Invariants (nu_bar, kappa_G) of the sigma-conjugacy class of x.

    For a twisted Frobenius the class of y is transported to the class of
    ``y z`` for the untwisted one.
    """
    if frob is not None and frob.twisted:
        x = compose(x, frob.z)
    key = ("inv", x.lam, x.w)
    cache = x.datum._cache
    out = cache.get(key)
    if out is None:
        out = ClassInvariants(newton(x)[1], kappa(x))
        cache[key] = out
    return out


def is_basic(x: AffineElement) -> bool:
    return all(v == 0 for v in newton(x)[1])


def affine_weyl_layers(datum: RootDatum, max_length: int) -> list[list[AffineElement]]:
    """Elements of the (non-extended) affine Weyl group, grouped by length."""
    key = ("layers",)
    known = datum._cache.get(key)
    if known is None or len(known) <= max_length:
        sims = [s for _, s in simple_affine_reflections(datum)]
        layers = [[identity(datum)]]
        seen = {identity(datum)}
        for k in range(max_length):
            nxt = []
            for x in layers[-1]:
                for s in sims:
                    y = compose(x, s)
                    if y not in seen and length(y) == k + 1:
                        seen.add(y)
                        nxt.append(y)
            nxt.sort(key=lambda y: y.sort_key)
            layers.append(nxt)
        known = layers
        datum._cache[key] = known
    return known[: max_length + 1]


def elements_up_to(datum: RootDatum, max_length: int) -> list[AffineElement]:
    """All elements of length <= max_length, sorted by (length, sort_key)."""
    omegas = omega_elements(datum)
    out = []
    for layer in affine_weyl_layers(datum, max_length):
        ext = [compose(x, t) for x in layer for t in omegas]
        ext.sort(key=lambda y: y.sort_key)
        out.extend(ext)
    return out
