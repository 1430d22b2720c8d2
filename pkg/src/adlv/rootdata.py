"""Root data for products of irreducible reduced root systems.

Conventions
-----------
* Nodes are numbered component by component in the order given, Bourbaki
  numbering inside each component; internally 0-based, 1-based in every
  user-facing string (JSON group specs, element expressions).
* ``cartan[i][j] = <alpha_i^vee, alpha_j>``.
* Vectors of V = Lambda (x) Q are stored in the fundamental-coweight basis, so
  ``<v, alpha_j> = v[j]`` and ``<v, a> = sum(v[j] * a[j])`` for a root ``a``
  written on the simple roots. The simple coroot ``alpha_i^vee`` is row i of
  the Cartan matrix.
* Lambda is a lattice with Q^vee <= Lambda <= P^vee. Its integer basis is
  ``lattice_basis`` (columns in coweight coordinates); "Lambda-coordinates"
  are coordinates in that basis.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .abelian import FinAbGroup, delta_coinvariants, smith_normal_form, smith_quotient
from .errors import InvalidDelta, InvalidLattice, InvalidSpec

__all__ = [
    "GroupSpec",
    "RootDatum",
    "WeylGroup",
    "build_root_datum",
    "cartan_matrix",
    "dominant_representative",
    "delta_stable_subsets",
    "parse_rational",
]

FAMILIES = "ABCDEFG"
_WEYL_ORDER_LIMIT = 60000


def cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """Cartan matrix of an irreducible type in Bourbaki numbering."""
    family = family.upper()
    n = rank
    valid = {
        "A": n >= 1,
        "B": n >= 2,
        "C": n >= 2,
        "D": n >= 3,
        "E": n in (6, 7, 8),
        "F": n == 4,
        "G": n == 2,
    }
    if not valid.get(family, False):
        raise InvalidSpec(f"no root system of type {family}{rank}")
    C = [[2 * (i == j) for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        C[i][j] = cij
        C[j][i] = cji

    if family in "ABC":
        for i in range(n - 2):
            link(i, i + 1)
        if n >= 2:
            if family == "A":
                link(n - 2, n - 1)
            elif family == "B":
                link(n - 2, n - 1, -1, -2)  # alpha_n short
            else:
                link(n - 2, n - 1, -2, -1)  # alpha_n long
    elif family == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]:
            if j < n:
                link(i, j)
    elif family == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    else:  # G2, alpha_1 short
        link(0, 1, -3, -1)
    return C


def _weyl_order(family, n):
    return {
        "A": math.factorial(n + 1),
        "B": 2**n * math.factorial(n),
        "C": 2**n * math.factorial(n),
        "D": 2 ** (n - 1) * math.factorial(n),
        "E": {6: 51840, 7: 2903040, 8: 696729600}.get(n, 0),
        "F": 1152,
        "G": 12,
    }[family]


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions and "p/q" strings."""
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise InvalidSpec(f"not a rational number: {value!r}") from exc
    raise InvalidSpec(f"not a rational number: {value!r}")


@dataclass(frozen=True)
class GroupSpec:
    """Input description of a root datum.

    ``lattice`` is ``"adjoint"``, ``"simply_connected"`` or a tuple of
    generators in coweight coordinates. ``delta`` is a 0-based permutation of
    all nodes (``None`` means the identity).
    """

    components: tuple[tuple[str, int], ...]
    lattice: object = "adjoint"
    delta: tuple[int, ...] | None = None

    @classmethod
    def from_json(cls, data: dict) -> "GroupSpec":
        try:
            comps = tuple((str(c["type"]).upper(), int(c["rank"])) for c in data["cartan"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidSpec(f"malformed 'cartan' entry: {exc}") from exc
        lattice = data.get("lattice", "adjoint")
        if isinstance(lattice, dict):
            if "generators" not in lattice:
                raise InvalidSpec("lattice object needs 'generators'")
            lattice = tuple(tuple(parse_rational(a) for a in g) for g in lattice["generators"])
        elif lattice not in ("adjoint", "simply_connected"):
            raise InvalidSpec(f"unknown lattice {lattice!r}")
        delta = None
        if data.get("delta") is not None:
            perm = data["delta"].get("node_perm")
            if perm is not None:
                delta = tuple(int(p) - 1 for p in perm)
        return cls(comps, lattice, delta)

    def to_json(self) -> dict:
        out = {"cartan": [{"type": f, "rank": r} for f, r in self.components]}
        if isinstance(self.lattice, str):
            out["lattice"] = self.lattice
        else:
            out["lattice"] = {"generators": [[str(Fraction(a)) for a in g] for g in self.lattice]}
        if self.delta is not None:
            out["delta"] = {"node_perm": [p + 1 for p in self.delta]}
        return out

    @property
    def name(self) -> str:
        return "x".join(f"{f}{r}" for f, r in self.components)


def _matmul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0])))
        for i in range(len(A))
    )


def _inverse(M):
    """Exact inverse of a square matrix over Q (rows)."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return tuple(tuple(row[n:]) for row in A)


class WeylGroup:
    """Finite Weyl group, enumerated once and indexed by integers.

    Element ``i`` is stored as a permutation of the root list (``perm[i][a]``
    is the index of ``w_i(root a)``) and as an integer matrix on coweight
    coordinates. Index 0 is the identity; words are shortlex-minimal.
    """

    def __init__(self, cartan, roots, root_index):
        n = len(cartan)
        self.rank = n
        self._roots = roots
        gens = []
        for i in range(n):
            perm = []
            for b in roots:
                c = sum(cartan[i][j] * b[j] for j in range(n))
                nb = list(b)
                nb[i] -= c
                perm.append(root_index[tuple(nb)])
            gens.append(tuple(perm))
        gen_mats = [
            tuple(tuple(int(k == l) - int(l == i) * cartan[i][k] for l in range(n)) for k in range(n))
            for i in range(n)
        ]
        ident = tuple(range(len(roots)))
        self.perm = [ident]
        self.matrix = [tuple(tuple(int(i == j) for j in range(n)) for i in range(n))]
        self.word = [()]
        self.index = {ident: 0}
        queue = deque([0])
        while queue:
            w = queue.popleft()
            pw = self.perm[w]
            for i in range(n):
                child = tuple(pw[a] for a in gens[i])
                if child not in self.index:
                    self.index[child] = len(self.perm)
                    self.perm.append(child)
                    self.matrix.append(_matmul(self.matrix[w], gen_mats[i]))
                    self.word.append(self.word[w] + (i,))
                    queue.append(self.index[child])
        self.order = len(self.perm)
        self.simple = [self.index[g] for g in gens]
        self.length = [len(wd) for wd in self.word]
        self.inverse = [self._lookup(self._inv_perm(p)) for p in self.perm]
        self._mul = {}
        self.longest = max(range(self.order), key=lambda k: self.length[k])

    @staticmethod
    def _inv_perm(p):
        out = [0] * len(p)
        for a, b in enumerate(p):
            out[b] = a
        return tuple(out)

    def _lookup(self, perm):
        return self.index[perm]

    def __len__(self):
        return self.order

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        out = self._mul.get(key)
        if out is None:
            pi, pj = self.perm[i], self.perm[j]
            out = self.index[tuple(pi[a] for a in pj)]
            self._mul[key] = out
        return out

    def act(self, i: int, v: Sequence) -> tuple:
        """w_i(v) for a coweight-coordinate vector v."""
        M = self.matrix[i]
        return tuple(sum(m * x for m, x in zip(row, v)) for row in M)

    def act_root(self, i: int, a: int) -> int:
        return self.perm[i][a]

    def from_word(self, word: Sequence[int]) -> int:
        w = 0
        for i in word:
            w = self.mul(w, self.simple[i])
        return w

    def from_perm(self, perm: Sequence[int]) -> int:
        return self.index[tuple(perm)]


class RootDatum:
    """Cartan data, roots, Weyl group, lattice and diagram automorphism.

    Built by :func:`build_root_datum`; treat as immutable. A few lookup tables
    are filled lazily and are pure functions of the datum.
    """

    def __init__(self, spec: GroupSpec):
        if not spec.components:
            raise InvalidSpec("at least one component is required")
        self.spec = spec
        self._cache = {}
        blocks = [cartan_matrix(f, r) for f, r in spec.components]
        n = sum(len(b) for b in blocks)
        self.rank = n
        C = [[0] * n for _ in range(n)]
        self.components = []
        self.component_of = []
        off = 0
        for c, ((fam, rk), blk) in enumerate(zip(spec.components, blocks)):
            for i in range(rk):
                for j in range(rk):
                    C[off + i][off + j] = blk[i][j]
            self.components.append((fam, rk, tuple(range(off, off + rk))))
            self.component_of.extend([c] * rk)
            off += rk
        self.cartan = tuple(tuple(row) for row in C)
        order = 1
        for fam, rk in spec.components:
            order *= _weyl_order(fam, rk)
        if order > _WEYL_ORDER_LIMIT:
            raise InvalidSpec(f"Weyl group of order {order} is beyond desk scale")
        self._build_roots()
        self.W = WeylGroup(self.cartan, self.roots, self.root_index)
        self._build_delta(spec.delta)
        self._build_lattice(spec.lattice)
        self._check_delta_lattice()

    # ------------------------------------------------------------------ roots
    def _build_roots(self):
        n, C = self.rank, self.cartan
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        coroot = {s: C[i] for i, s in enumerate(simple)}
        queue = deque(simple)
        while queue:
            b = queue.popleft()
            bv = coroot[b]
            for i in range(n):
                c = sum(C[i][j] * b[j] for j in range(n))
                if c == 0:
                    continue
                nb = list(b)
                nb[i] -= c
                nb = tuple(nb)
                if nb not in coroot:
                    coroot[nb] = tuple(bv[j] - bv[i] * C[i][j] for j in range(n))
                    queue.append(nb)
        pos = sorted((r for r in coroot if all(x >= 0 for x in r)), key=lambda r: (sum(r), tuple(-x for x in r)))
        self.roots = pos + [tuple(-x for x in r) for r in pos]
        self.coroots = [coroot[r] for r in self.roots]
        self.n_pos = len(pos)
        self.root_index = {r: k for k, r in enumerate(self.roots)}
        self.positive = list(range(self.n_pos))
        self.negate = [(k + self.n_pos) % (2 * self.n_pos) for k in range(2 * self.n_pos)]
        self.height = [sum(r) for r in self.roots]
        self.support = [frozenset(j for j, x in enumerate(r) if x) for r in self.roots]
        self.highest_root = []
        self.coxeter_number = []
        for _, _, nodes in self.components:
            cand = [k for k in self.positive if self.support[k] <= set(nodes)]
            top = max(cand, key=lambda k: self.height[k])
            self.highest_root.append(top)
            self.coxeter_number.append(self.height[top] + 1)

    def is_positive(self, a: int) -> bool:
        return a < self.n_pos

    def pair(self, v: Sequence, a: int):
        """<v, a> for v in coweight coordinates and a a root index."""
        return sum(x * c for x, c in zip(v, self.roots[a]))

    def reflection(self, a: int) -> int:
        """Index in W of the reflection s_a."""
        key = ("refl", a)
        cache = self._cache
        if key not in cache:
            av = self.coroots[a]
            perm = []
            for b in self.roots:
                c = sum(x * y for x, y in zip(av, b))
                root = self.roots[a]
                perm.append(self.root_index[tuple(y - c * x for x, y in zip(root, b))])
            cache[key] = self.W.from_perm(perm)
        return cache[key]

    # ------------------------------------------------------------------ delta
    def _build_delta(self, delta):
        n = self.rank
        d = tuple(range(n)) if delta is None else tuple(delta)
        if sorted(d) != list(range(n)):
            raise InvalidDelta(f"node permutation {[x + 1 for x in d]} is not a permutation of 1..{n}")
        for i in range(n):
            for j in range(n):
                if self.cartan[d[i]][d[j]] != self.cartan[i][j]:
                    raise InvalidDelta(
                        f"delta does not preserve the Cartan matrix at nodes {i + 1},{j + 1}"
                    )
        self.delta = d
        self.delta_inv = tuple(d.index(i) for i in range(n))
        k, p = 1, d
        while p != tuple(range(n)):
            p = tuple(d[x] for x in p)
            k += 1
        self.delta_order = k
        self.delta_root = [self.root_index[self.delta_vector(r)] for r in self.roots]
        dinv_root = [0] * len(self.roots)
        for a, b in enumerate(self.delta_root):
            dinv_root[b] = a
        W = self.W
        self.delta_w = [
            W.from_perm([self.delta_root[p[dinv_root[a]]] for a in range(len(p))]) for p in W.perm
        ]
        self.delta_inv_w = [0] * W.order
        for w, dw in enumerate(self.delta_w):
            self.delta_inv_w[dw] = w

    def delta_vector(self, v: Sequence) -> tuple:
        """delta on coweight (or simple-root) coordinates: out[delta(i)] = v[i]."""
        out = [0] * self.rank
        for i, x in enumerate(v):
            out[self.delta[i]] = x
        return tuple(out)

    def delta_inverse_vector(self, v: Sequence) -> tuple:
        return tuple(v[self.delta[i]] for i in range(self.rank))

    @property
    def delta_connected(self) -> bool:
        return delta_stable_subsets(self)[1]

    def is_delta_stable(self, J) -> bool:
        return frozenset(self.delta[j] for j in J) == frozenset(J)

    # ---------------------------------------------------------------- lattice
    def _build_lattice(self, lattice):
        n = self.rank
        if lattice == "adjoint":
            basis = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        elif lattice == "simply_connected":
            basis = [self.cartan[j] for j in range(n)]
        else:
            gens = []
            for g in lattice:
                if len(g) != n:
                    raise InvalidLattice(f"generator {g} has wrong length (rank is {n})")
                if any(Fraction(x).denominator != 1 for x in g):
                    raise InvalidLattice(f"generator {[str(x) for x in g]} is not in P^vee")
                gens.append(tuple(int(x) for x in g))
            basis = _lattice_basis(gens, n)
        self.lattice_basis = tuple(basis)  # columns
        B = tuple(tuple(basis[j][i] for j in range(n)) for i in range(n))
        self._B = B
        try:
            self._B_inv = _inverse(B)
        except ZeroDivisionError as exc:
            raise InvalidLattice("lattice generators do not span V") from exc
        for i in range(n):
            try:
                self.to_lattice(self.cartan[i])
            except InvalidLattice as exc:
                raise InvalidLattice(f"simple coroot alpha_{i + 1}^vee is not in the lattice") from exc

    def from_lattice(self, c: Sequence[int]) -> tuple[int, ...]:
        """Lambda-coordinates -> coweight coordinates."""
        return tuple(sum(self._B[i][j] * c[j] for j in range(self.rank)) for i in range(self.rank))

    def to_lattice(self, v: Sequence) -> tuple[int, ...]:
        """Coweight coordinates -> Lambda-coordinates; raises if v is not in Lambda."""
        out = []
        for row in self._B_inv:
            x = sum(Fraction(a) * b for a, b in zip(row, v))
            if x.denominator != 1:
                raise InvalidLattice(f"{tuple(str(Fraction(t)) for t in v)} is not in the lattice")
            out.append(int(x))
        return tuple(out)

    def in_lattice(self, v: Sequence) -> bool:
        try:
            self.to_lattice(v)
        except InvalidLattice:
            return False
        return True

    def _check_delta_lattice(self):
        n = self.rank
        cols = []
        for j in range(n):
            image = self.delta_vector(self.lattice_basis[j])
            try:
                cols.append(self.to_lattice(image))
            except InvalidLattice as exc:
                raise InvalidDelta("the lattice is not delta-stable") from exc
        # matrix of delta on Lambda-coordinates, rows
        self.delta_lattice = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def kappa_group(self, J=None) -> FinAbGroup:
        """(Lambda / Q^vee_J)_delta, in Lambda-coordinates."""
        J = frozenset(range(self.rank)) if J is None else frozenset(J)
        key = ("kappa_group", J)
        if key not in self._cache:
            rels = [self.to_lattice(self.cartan[j]) for j in sorted(J)]
            g = smith_quotient(self.rank, rels)
            self._cache[key] = delta_coinvariants(g, self.delta_lattice)
        return self._cache[key]

    def __repr__(self):
        lat = self.spec.lattice if isinstance(self.spec.lattice, str) else "explicit"
        d = "" if self.delta == tuple(range(self.rank)) else f", delta={[x + 1 for x in self.delta]}"
        return f"RootDatum({self.spec.name}, {lat}{d})"


def _lattice_basis(gens, n):
    """Integer basis (columns) of the lattice spanned by ``gens``."""
    if not gens:
        raise InvalidLattice("no lattice generators given")
    A = [[g[i] for g in gens] for i in range(n)]
    U, D, _ = smith_normal_form(A)
    Uinv = _inverse(U)
    basis = []
    for k in range(n):
        d = D[k][k] if k < len(gens) else 0
        if d == 0:
            raise InvalidLattice("lattice generators do not span V")
        basis.append(tuple(int(Uinv[i][k] * d) for i in range(n)))
    if len(gens) == n:
        # keep the user's basis when it already is one
        try:
            M = _inverse([[g[i] for g in gens] for i in range(n)])
            Bm = [[b[i] for b in basis] for i in range(n)]
            T = _matmul(M, Bm)
            if all(x.denominator == 1 for row in T for x in row) and abs(_det(T)) == 1:
                return [tuple(g) for g in gens]
        except ZeroDivisionError:
            pass
    return basis


def _det(M):
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def build_root_datum(spec: GroupSpec | dict) -> RootDatum:
    """Validate a group spec and construct its root datum."""
    if isinstance(spec, dict):
        spec = GroupSpec.from_json(spec)
    return RootDatum(spec)


def dominant_representative(datum: RootDatum, v: Sequence):
    """Dominant element of the W-orbit of v and some w in W with w(v) equal to it.

    Reflects at the first simple root with negative pairing until none is left.
    """
    W = datum.W
    v = tuple(v)
    w = 0
    while True:
        i = next((j for j, x in enumerate(v) if x < 0), None)
        if i is None:
            return v, w
        c = v[i]
        row = datum.cartan[i]
        v = tuple(x - c * row[k] for k, x in enumerate(v))
        w = W.mul(W.simple[i], w)


def delta_stable_subsets(datum: RootDatum):
    """All delta-stable J (frozensets of 0-based nodes), and delta-connectedness.

    Subsets come sorted by size then by their sorted node tuple; J is proper
    unless it is every node.
    """
    key = ("stable",)
    if key in datum._cache:
        return datum._cache[key]
    n = datum.rank
    seen, orbits = set(), []
    for i in range(n):
        if i in seen:
            continue
        orb, j = [], i
        while j not in orb:
            orb.append(j)
            j = datum.delta[j]
        seen.update(orb)
        orbits.append(frozenset(orb))
    subsets = set()
    for k in range(len(orbits) + 1):
        for combo in itertools.combinations(orbits, k):
            subsets.add(frozenset().union(*combo))
    subsets = sorted(subsets, key=lambda J: (len(J), tuple(sorted(J))))
    comp_orbits = set()
    for c in range(len(datum.components)):
        orb, j = [], c
        while j not in orb:
            orb.append(j)
            j = datum.component_of[datum.delta[datum.components[j][2][0]]]
        comp_orbits.add(frozenset(orb))
    result = (subsets, len(comp_orbits) == 1)
    datum._cache[key] = result
    return result
