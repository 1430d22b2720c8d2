"""(J, w, delta)-alcoves, the Levi-obstruction test and the two basic-b criteria.

For basic b and semisimple data the "no Levi obstruction" property of x is
decided operationally:

* kappa_G(x) must equal kappa_G(b);
* for every alcove witness (J, w) with J a proper delta-stable subset, the
  translation part lam' of w^{-1} x delta(w) must have vanishing
  delta-average after projecting to V_J = {v : <v, alpha> = 0, alpha in J}
  along the Q-span of the coroots of J.

A Levi class b_J as in the definition exists iff the basic M_J-class with the
same kappa_J has zero Newton vector; that vector is the averaged projection
above, and both (1 - delta)Lambda and Q^vee_J die under it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .afweyl import (
    AffineElement,
    Frobenius,
    _p0_tables,
    _scaled_pairing,
    compose,
    eta,
    in_parabolic,
    kappa,
    length,
    newton,
)
from .errors import JNotDeltaStable, NotBasic, NotDeltaConnected, NotLengthZero, NotShrunken
from .rootdata import RootDatum, _inverse, delta_stable_subsets

__all__ = [
    "AlcoveWitness",
    "is_alcove",
    "alcove_witnesses",
    "min_coset_reps",
    "levi_obstruction",
    "is_shrunken",
    "nlo_check",
    "nonempty_basic_criterion",
    "shrunken_criterion",
    "inner_form_transport",
    "require_basic",
]


@dataclass(frozen=True)
class AlcoveWitness:
    J: frozenset
    w: int
    strict: bool
    levi_translation: tuple[int, ...]
    obstruction: tuple[Fraction, ...]

    @property
    def obstructed(self) -> bool:
        return any(self.obstruction)

    def to_json(self, datum: RootDatum) -> dict:
        from .expr import format_word

        return {
            "J": sorted(j + 1 for j in self.J),
            "w": format_word(datum, self.w),
            "strict": self.strict,
            "obstruction": [str(v) for v in self.obstruction],
        }


def _outside_roots(datum: RootDatum, J) -> tuple[int, ...]:
    """Positive roots not in the root subsystem of J."""
    key = ("outside", J)
    out = datum._cache.get(key)
    if out is None:
        out = tuple(a for a in datum.positive if not datum.support[a] <= J)
        datum._cache[key] = out
    return out


def _as_J(datum: RootDatum, J) -> frozenset:
    J = frozenset(J)
    if not datum.is_delta_stable(J):
        raise JNotDeltaStable(f"J={sorted(j + 1 for j in J)} is not delta-stable")
    return J


def _k_base(a: int, datum: RootDatum) -> int:
    return 0 if datum.is_positive(a) else 1


def is_alcove(x: AffineElement, J, w: int, strict: bool = False) -> bool:
    """Whether x(base alcove) is a (J, w, delta)-alcove (strict: all inequalities strict)."""
    d = x.datum
    J = _as_J(d, J)
    W = d.W
    inner = W.mul(W.inverse[w], W.mul(x.w, d.delta_w[w]))
    if not in_parabolic(d, inner, J):
        return False
    D = _p0_tables(d)[0]
    for a in _outside_roots(d, J):
        b = W.perm[w][a]
        k = -((-_scaled_pairing(x, b)) // D)
        base = _k_base(b, d)
        if k < base or (strict and k == base):
            return False
    return True


def min_coset_reps(datum: RootDatum, J) -> list[int]:
    """Minimal-length representatives of W / W_J, in shortlex order."""
    J = frozenset(J)
    key = ("W^J", J)
    out = datum._cache.get(key)
    if out is None:
        W = datum.W
        simple_idx = [datum.root_index[tuple(int(i == j) for i in range(datum.rank))] for j in sorted(J)]
        out = [w for w in range(W.order) if all(datum.is_positive(W.perm[w][a]) for a in simple_idx)]
        datum._cache[key] = out
    return out


def _projector(datum: RootDatum, J):
    key = ("proj", J)
    out = datum._cache.get(key)
    if out is None:
        Js = sorted(J)
        out = (Js, _inverse([[datum.cartan[k][j] for k in Js] for j in Js])) if Js else (Js, ())
        datum._cache[key] = out
    return out


def levi_obstruction(datum: RootDatum, lam, J) -> tuple[Fraction, ...]:
    """delta-average of the projection of lam to V_J (coweight coordinates)."""
    J = frozenset(J)
    Js, inv = _projector(datum, J)
    v = [Fraction(x) for x in lam]
    if Js:
        rhs = [v[j] for j in Js]
        coeffs = [sum(row[t] * rhs[t] for t in range(len(Js))) for row in inv]
        for c, k in zip(coeffs, Js):
            row = datum.cartan[k]
            for i in range(datum.rank):
                v[i] -= c * row[i]
    m = datum.delta_order
    total = [Fraction(0)] * datum.rank
    cur = tuple(v)
    for _ in range(m):
        total = [t + c for t, c in zip(total, cur)]
        cur = datum.delta_vector(cur)
    return tuple(t / m for t in total)


def alcove_witnesses(x: AffineElement) -> list[AlcoveWitness]:
    """Every (J, w), J delta-stable and w minimal in w W_J, with x(a) a (J, w, delta)-alcove.

    Ordered by |J|, then J, then w in shortlex order.
    """
    d = x.datum
    W = d.W
    out = []
    for J in delta_stable_subsets(d)[0]:
        for w in min_coset_reps(d, J):
            if is_alcove(x, J, w):
                lam = W.act(W.inverse[w], x.lam)
                out.append(
                    AlcoveWitness(J, w, is_alcove(x, J, w, strict=True), lam, levi_obstruction(d, lam, J))
                )
    return out


def is_shrunken(x: AffineElement) -> bool:
    """x(a) lies in no strip of the base alcove: k(a, x a) != k(a, a) for every root a."""
    d = x.datum
    D = _p0_tables(d)[0]
    # k(-a) = 1 - k(a), so the positive roots suffice
    return all(-((-_scaled_pairing(x, a)) // D) != 0 for a in d.positive)


def require_basic(b: AffineElement):
    if any(newton(b)[1]):
        raise NotBasic(f"{b} is not basic")


def nlo_check(
    x: AffineElement,
    b: AffineElement,
    exhaustive: bool = True,
    witnesses: Iterable[AlcoveWitness] | None = None,
):
    """``(holds, violating witnesses)`` for the no-Levi-obstruction property.

    A kappa_G mismatch violates every witness. Otherwise a witness with
    proper J violates iff its obstruction vector is nonzero. With
    ``exhaustive=False`` the scan stops at the first violation.
    """
    require_basic(b)
    d = x.datum
    full = len(d.delta)
    if witnesses is None:
        witnesses = alcove_witnesses(x)
    mismatch = kappa(x) != kappa(b)
    bad = []
    for wit in witnesses:
        if mismatch or (len(wit.J) < full and wit.obstructed):
            bad.append(wit)
            if not exhaustive:
                break
    return (not bad and not mismatch), bad


def nonempty_basic_criterion(x: AffineElement, b: AffineElement) -> bool:
    """Nonemptiness of X_x(b) for basic b from alcove witnesses alone."""
    require_basic(b)
    if kappa(x) != kappa(b):
        return False
    return nlo_check(x, b, exhaustive=False)[0]


def _proper_stable(datum: RootDatum):
    return [J for J in delta_stable_subsets(datum)[0] if len(J) < datum.rank]


def shrunken_criterion(x: AffineElement, b: AffineElement) -> bool:
    """Nonemptiness for shrunken x on delta-connected data via eta_delta."""
    d = x.datum
    if not delta_stable_subsets(d)[1]:
        raise NotDeltaConnected(f"{d} is not delta-connected")
    if not is_shrunken(x):
        raise NotShrunken(f"{x} is not in the shrunken Weyl chambers")
    require_basic(b)
    if kappa(x) != kappa(b):
        return False
    ed = eta(x)[2]
    return not any(in_parabolic(d, ed, J) for J in _proper_stable(d))


def inner_form_transport(x: AffineElement, b: AffineElement, z: AffineElement):
    """``(x z, b z, Ad(z) o delta)`` for a length-zero z."""
    if length(z) != 0:
        raise NotLengthZero(f"{z} has length {length(z)}")
    return compose(x, z), compose(b, z), Frobenius(x.datum, z)
