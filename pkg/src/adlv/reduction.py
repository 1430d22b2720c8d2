"""Deligne-Lusztig reduction: twisted conjugation, minimal-length descent, oracle.

The oracle decides X_x(b) != {} for any b. For x of minimal length in its
delta-twisted class the answer is "x and b have the same class invariants".
Otherwise some element x' of the level orbit of x (its closure under length
preserving steps x -> s x delta(s)) has a simple reflection s with
l(s x' delta(s)) = l(x') - 2, and X_x(b) is nonempty iff X_{s x' delta(s)}(b)
or X_{s x'}(b) is. The choice of (x', s) is the lexicographically smallest
pair, so runs are reproducible; the verdict does not depend on it.
"""

from __future__ import annotations

import logging
import os
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .afweyl import (
    AffineElement,
    ClassInvariants,
    Frobenius,
    compose,
    elements_up_to,
    kappa,
    length,
    omega_elements,
    sigma_invariants,
    simple_affine_reflections,
)
from .errors import NotLengthZero, NotSimpleReflection
from .rootdata import GroupSpec, RootDatum, build_root_datum

__all__ = [
    "ConjStep",
    "DescentPath",
    "Reducer",
    "conj_step",
    "descend_to_minimal",
    "is_minimal",
    "reduction_nonempty",
    "crosscheck",
    "CrosscheckReport",
    "CrossRow",
    "class_inventory",
    "InventoryEntry",
    "get_reducer",
]

log = logging.getLogger(__name__)

_KIND = {2: "up", 0: "level", -2: "down2"}


@dataclass(frozen=True)
class ConjStep:
    s: str
    kind: str
    source: AffineElement
    result: AffineElement

    @property
    def length_change(self) -> int:
        return length(self.result) - length(self.source)


@dataclass
class DescentPath:
    start: AffineElement
    steps: list[ConjStep] = field(default_factory=list)
    orbit_nodes: int = 0

    @property
    def end(self) -> AffineElement:
        return self.steps[-1].result if self.steps else self.start

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class _Orbit:
    members: frozenset
    choice: tuple | None  # (x', index of s) or None when minimal


class Reducer:
    """Reduction engine for one datum and one Frobenius action.

    Caches level orbits and, when ``memo`` is set, the set of class
    invariants reached from each element. ``reverse`` flips the tie-break.
    """

    def __init__(self, datum: RootDatum, frob: Frobenius | None = None, reverse: bool = False, memo: bool = True):
        self.datum = datum
        self.frob = frob if frob is not None else Frobenius(datum)
        self.reverse = reverse
        self.memo = memo
        self.sims = simple_affine_reflections(datum)
        self.frob_sims = [self.frob(s) for _, s in self.sims]
        self._orbits: dict[AffineElement, _Orbit] = {}
        self._reach: dict[AffineElement, frozenset] = {}
        self.bfs_nodes = 0
        self.max_orbit = 0

    def _index(self, s) -> int:
        if isinstance(s, int):
            if 0 <= s < len(self.sims):
                return s
        elif isinstance(s, str):
            for i, (label, _) in enumerate(self.sims):
                if label == s:
                    return i
        elif isinstance(s, AffineElement):
            for i, (_, el) in enumerate(self.sims):
                if el == s:
                    return i
        raise NotSimpleReflection(f"{s} is not a simple affine reflection")

    def twisted(self, x: AffineElement, i: int) -> AffineElement:
        return compose(compose(self.sims[i][1], x), self.frob_sims[i])

    def conj_step(self, x: AffineElement, s) -> ConjStep:
        i = self._index(s)
        y = self.twisted(x, i)
        return ConjStep(self.sims[i][0], _KIND[length(y) - length(x)], x, y)

    def orbit(self, x: AffineElement) -> _Orbit:
        info = self._orbits.get(x)
        if info is not None:
            return info
        ell = length(x)
        seen = {x}
        queue = deque([x])
        downs = []
        while queue:
            y = queue.popleft()
            for i in range(len(self.sims)):
                z = self.twisted(y, i)
                lz = length(z)
                if lz == ell:
                    if z not in seen:
                        seen.add(z)
                        queue.append(z)
                elif lz < ell:
                    downs.append((y.sort_key, i, y))
        self.bfs_nodes += len(seen)
        self.max_orbit = max(self.max_orbit, len(seen))
        choice = None
        if downs:
            pick = max(downs) if self.reverse else min(downs)
            choice = (pick[2], pick[1])
        info = _Orbit(frozenset(seen), choice)
        for y in seen:
            self._orbits[y] = info
        return info

    def is_minimal(self, x: AffineElement) -> bool:
        return self.orbit(x).choice is None

    def descend(self, x: AffineElement) -> DescentPath:
        path = DescentPath(x)
        before = self.bfs_nodes
        cur = x
        while True:
            info = self.orbit(cur)
            if info.choice is None:
                break
            target, i = info.choice
            path.steps.extend(self._level_path(cur, target))
            nxt = self.twisted(target, i)
            path.steps.append(ConjStep(self.sims[i][0], "down2", target, nxt))
            cur = nxt
        path.orbit_nodes = self.bfs_nodes - before
        return path

    def _level_path(self, x, target):
        if x == target:
            return []
        ell = length(x)
        parent = {x: None}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            if y == target:
                break
            for i in range(len(self.sims)):
                z = self.twisted(y, i)
                if z not in parent and length(z) == ell:
                    parent[z] = (y, i)
                    queue.append(z)
        steps = []
        y = target
        while parent[y] is not None:
            prev, i = parent[y]
            steps.append(ConjStep(self.sims[i][0], "level", prev, y))
            y = prev
        return steps[::-1]

    def invariants(self, y: AffineElement) -> ClassInvariants:
        return sigma_invariants(y, self.frob)

    def reach(self, x: AffineElement) -> frozenset:
        """Class invariants of the minimal elements the recursion bottoms out in."""
        if self.memo and x in self._reach:
            return self._reach[x]
        info = self.orbit(x)
        if info.choice is None:
            out = frozenset([self.invariants(x)])
        else:
            y, i = info.choice
            s = self.sims[i][1]
            out = self.reach(self.twisted(y, i)) | self.reach(compose(s, y))
        if self.memo:
            for m in info.members:
                self._reach[m] = out
        return out

    def nonempty(self, x: AffineElement, b: AffineElement) -> bool:
        return self.invariants(b) in self.reach(x)


def get_reducer(datum: RootDatum, frob: Frobenius | None = None) -> Reducer:
    """Shared reducer per (datum, Frobenius); memo tables live for the session."""
    frob = frob if frob is not None else Frobenius(datum)
    key = ("reducer", frob.z)
    red = datum._cache.get(key)
    if red is None:
        red = Reducer(datum, frob)
        datum._cache[key] = red
    return red


def conj_step(x: AffineElement, s, frob: Frobenius | None = None) -> ConjStep:
    return get_reducer(x.datum, frob).conj_step(x, s)


def descend_to_minimal(x: AffineElement, frob: Frobenius | None = None) -> DescentPath:
    return get_reducer(x.datum, frob).descend(x)


def is_minimal(x: AffineElement, frob: Frobenius | None = None) -> bool:
    return get_reducer(x.datum, frob).is_minimal(x)


def reduction_nonempty(x: AffineElement, b: AffineElement, frob: Frobenius | None = None) -> bool:
    """Whether X_x(b) is nonempty, by Deligne-Lusztig reduction (any b)."""
    return get_reducer(x.datum, frob).nonempty(x, b)


# ----------------------------------------------------------------- crosscheck
CSV_COLUMNS = (
    "x",
    "length",
    "kappa_x",
    "b",
    "criterion",
    "oracle",
    "agree",
    "witness_count",
    "first_violation_J",
    "first_violation_w",
)


@dataclass(frozen=True)
class CrossRow:
    x: str
    length: int
    kappa_x: str
    b: str
    criterion: bool
    oracle: bool
    agree: bool
    witness_count: int
    first_violation_J: str
    first_violation_w: str
    sort_key: tuple = field(compare=False, repr=False, default=())

    def csv_values(self) -> list[str]:
        fmt = lambda v: ("true" if v else "false") if isinstance(v, bool) else str(v)
        return [fmt(getattr(self, c)) for c in CSV_COLUMNS]


@dataclass
class CrosscheckReport:
    rows: list[CrossRow]
    runtime_ms: int
    bfs_nodes: int = 0
    max_orbit: int = 0

    @property
    def disagreements(self) -> list[CrossRow]:
        return [r for r in self.rows if not r.agree]

    @property
    def summary(self) -> dict:
        agree = sum(r.agree for r in self.rows)
        return {
            "total": len(self.rows),
            "agree": agree,
            "disagree": len(self.rows) - agree,
            "runtime_ms": self.runtime_ms,
        }

    def write_csv(self, fh):
        import csv

        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow(r.csv_values())


def _fmt_class(c) -> str:
    return "[" + ",".join(str(v) for v in c) + "]"


def _rows_for(datum: RootDatum, xs, bs, reducer: Reducer) -> list[CrossRow]:
    """Criterion on (x z, b z) for delta, oracle on (x, b) for the reducer's Frobenius."""
    from .alcoves import alcove_witnesses, nlo_check
    from .expr import format_element, format_word

    z = reducer.frob.z
    rows = []
    b_info = [(b, compose(b, z), format_element(b)) for b in bs]
    for x in xs:
        xz = compose(x, z)
        wits = alcove_witnesses(xz)
        xs_str = format_element(x)
        kx = _fmt_class(kappa(xz))
        ell = length(x)
        for b, bz, b_str in b_info:
            crit, bad = nlo_check(xz, bz, exhaustive=False, witnesses=wits)
            orc = reducer.nonempty(x, b)
            fJ = fw = ""
            if bad:
                fJ = _fmt_class(sorted(j + 1 for j in bad[0].J))
                fw = format_word(datum, bad[0].w)
            rows.append(
                CrossRow(xs_str, ell, kx, b_str, crit, orc, crit == orc, len(wits), fJ, fw,
                         (ell, x.sort_key, b.sort_key))
            )
    return rows


_WORKER = {}


def _worker_init(spec_json, zkey):
    datum = build_root_datum(GroupSpec.from_json(spec_json))
    _WORKER["datum"] = datum
    _WORKER["reducer"] = Reducer(datum, Frobenius(datum, AffineElement(*zkey, datum)))


def _worker_run(args):
    xkeys, bkeys = args
    datum = _WORKER["datum"]
    xs = [AffineElement(lam, w, datum) for lam, w in xkeys]
    bs = [AffineElement(lam, w, datum) for lam, w in bkeys]
    red = _WORKER["reducer"]
    return _rows_for(datum, xs, bs, red), red.bfs_nodes, red.max_orbit


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("ADLV_THREADS", "1")))
    except ValueError:
        return 1


def crosscheck(
    datum: RootDatum,
    max_length: int,
    bs=None,
    workers: int | None = None,
    z: AffineElement | None = None,
) -> CrosscheckReport:
    """Compare the alcove criterion with the reduction oracle on every x up to max_length.

    ``bs`` defaults to the length-zero elements; each has to be basic. With a
    length-zero ``z`` the oracle runs for the twisted Frobenius on (x, b) and
    the criterion on the transported pair (x z, b z).
    """
    from .alcoves import require_basic

    t0 = time.perf_counter()
    frob = Frobenius(datum, z)
    if length(frob.z) != 0:
        raise NotLengthZero(f"{frob.z} has length {length(frob.z)}")
    bs = list(omega_elements(datum) if bs is None else bs)
    for b in bs:
        require_basic(compose(b, frob.z))
    xs = elements_up_to(datum, max_length)
    workers = default_workers() if workers is None else max(1, workers)
    if workers == 1:
        red = Reducer(datum, frob)
        rows = _rows_for(datum, xs, bs, red)
        nodes, biggest = red.bfs_nodes, red.max_orbit
    else:
        chunks = [xs[i::workers] for i in range(workers)]
        bkeys = [(b.lam, b.w) for b in bs]
        rows, nodes, biggest = [], 0, 0
        with ProcessPoolExecutor(workers, initializer=_worker_init, initargs=(datum.spec.to_json(), (frob.z.lam, frob.z.w))) as ex:
            for part, n, m in ex.map(_worker_run, [([(x.lam, x.w) for x in c], bkeys) for c in chunks]):
                rows.extend(part)
                nodes += n
                biggest = max(biggest, m)
    rows.sort(key=lambda r: r.sort_key)
    ms = int((time.perf_counter() - t0) * 1000)
    log.info("crosscheck %s maxlen=%d: %d rows, %d BFS nodes", datum, max_length, len(rows), nodes)
    return CrosscheckReport(rows, ms, nodes, biggest)


# ------------------------------------------------------------------ inventory
@dataclass(frozen=True)
class InventoryEntry:
    invariants: ClassInvariants
    witness: AffineElement

    @property
    def basic(self) -> bool:
        return self.invariants.is_basic

    def to_json(self) -> dict:
        from .expr import format_element

        out = self.invariants.to_json()
        out["basic"] = self.basic
        out["witness"] = format_element(self.witness)
        out["length"] = length(self.witness)
        return out


def class_inventory(datum: RootDatum, max_length: int, frob: Frobenius | None = None) -> list[InventoryEntry]:
    """Distinct (nu_bar, kappa) pairs among elements up to max_length, with shortest witnesses."""
    found = {}
    for x in elements_up_to(datum, max_length):
        inv = sigma_invariants(x, frob)
        if inv not in found:
            found[inv] = x
    return [InventoryEntry(inv, x) for inv, x in found.items()]
