"""Smith normal form and finitely generated abelian quotients of Z^r."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ActionNotCompatible

__all__ = [
    "FinAbGroup",
    "smith_normal_form",
    "smith_quotient",
    "delta_coinvariants",
]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Return ``(U, D, V)`` with ``U @ A @ V == D`` and U, V unimodular.

    ``D`` is diagonal with d_1 | d_2 | ... and all d_i >= 0; zero diagonal
    entries come last.
    """
    r = len(A)
    m = len(A[0]) if r else 0
    D = [list(map(int, row)) for row in A]
    U = _identity(r)
    V = _identity(m)

    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for M in (D, V):
            for row in M:
                row[j], row[k] = row[k], row[j]

    def add_row(i, k, c):
        # row_i += c * row_k
        for M in (D, U):
            Mi, Mk = M[i], M[k]
            for j in range(len(Mi)):
                Mi[j] += c * Mk[j]

    def add_col(j, k, c):
        # col_j += c * col_k
        for M in (D, V):
            for row in M:
                row[j] += c * row[k]

    for t in range(min(r, m)):
        best = None
        for i in range(t, r):
            for j in range(t, m):
                if D[i][j] and (best is None or abs(D[i][j]) < best[0]):
                    best = (abs(D[i][j]), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            for i in range(t + 1, r):
                q = D[i][t] // p
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, m):
                q = D[t][j] // p
                if q:
                    add_col(j, t, -q)
            # leftover remainders smaller than the pivot become the new pivot
            best = None
            for i in range(t + 1, r):
                if D[i][t] and (best is None or abs(D[i][t]) < best[0]):
                    best = (abs(D[i][t]), i, "row")
            for j in range(t + 1, m):
                if D[t][j] and (best is None or abs(D[t][j]) < best[0]):
                    best = (abs(D[t][j]), j, "col")
            if best is not None:
                if best[2] == "row":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, m) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return U, D, V


@dataclass(frozen=True)
class FinAbGroup:
    """Z^rank modulo the span of ``relations``, in invariant-factor form.

    ``factors`` lists the nontrivial invariant factors (0 marks a free summand);
    row k of ``projection`` gives coordinate k of a class, reduced modulo
    ``factors[k]`` when that factor is nonzero.
    """

    rank: int
    relations: tuple[tuple[int, ...], ...]
    factors: tuple[int, ...]
    projection: tuple[tuple[int, ...], ...]

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        out = []
        for d, row in zip(self.factors, self.projection):
            c = sum(a * b for a, b in zip(row, v))
            out.append(c % d if d else c)
        return tuple(out)

    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.factors)

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    @property
    def order(self):
        """Group order, or None when there is a free summand."""
        if 0 in self.factors:
            return None
        out = 1
        for d in self.factors:
            out *= d
        return out

    def torsion_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.factors if d)

    def free_rank(self) -> int:
        return sum(1 for d in self.factors if d == 0)


def smith_quotient(rank: int, relations: Sequence[Sequence[int]]) -> FinAbGroup:
    """Quotient of Z^rank by the subgroup spanned by the given relation vectors."""
    rels = tuple(tuple(int(a) for a in col) for col in relations)
    for col in rels:
        if len(col) != rank:
            raise ValueError(f"relation {col} does not lie in Z^{rank}")
    A = [[col[i] for col in rels] for i in range(rank)]
    U, D, _ = smith_normal_form(A)
    m = len(rels)
    factors, proj = [], []
    for i in range(rank):
        d = D[i][i] if i < m else 0
        if d == 1:
            continue
        factors.append(d)
        proj.append(tuple(U[i]))
    return FinAbGroup(rank, rels, tuple(factors), tuple(proj))


def delta_coinvariants(g: FinAbGroup, action: Sequence[Sequence[int]]) -> FinAbGroup:
    """Coinvariants of ``g`` under an endomorphism given on the ambient lattice.

    ``action`` is a square integer matrix (list of rows) acting on column
    vectors of Z^rank; it has to map the relation subgroup into itself.
    """
    n = g.rank
    if len(action) != n or any(len(row) != n for row in action):
        raise ActionNotCompatible(f"action must be a {n}x{n} matrix")
    zero = g.zero()
    for col in g.relations:
        image = [sum(action[i][j] * col[j] for j in range(n)) for i in range(n)]
        if g.project(image) != zero:
            raise ActionNotCompatible(f"action does not preserve relation {col}")
    extra = [
        tuple(int(i == j) - action[i][j] for i in range(n)) for j in range(n)
    ]
    return smith_quotient(n, list(g.relations) + extra)
