"""Acceptance criteria 1-7.

Every criterion prints one ``[PASS]``/``[FAIL]`` line (also collected into the
pytest terminal summary). Tolerances are exact: verdicts are booleans and all
invariants are compared as integers or rationals.

Run standalone with ``python tests/test_acceptance.py``.
"""

import functools
import io
import itertools
import json
import os
import random
import subprocess
import sys
import tempfile
import time
from collections import deque

sys.path.insert(0, os.path.dirname(__file__))

import props  # noqa: E402
from conftest import ACCEPTANCE_LINES, CONFIGS, get_datum  # noqa: E402

from adlv.afweyl import (  # noqa: E402
    AffineElement,
    apply_delta,
    compose,
    elements_up_to,
    in_parabolic,
    invert,
    k_index,
    kappa,
    length,
    newton,
    omega_elements,
    sigma_invariants,
    simple_affine_reflections,
    translation,
)
from adlv.cli import CommandConfig, run_command  # noqa: E402
from adlv.reduction import Reducer  # noqa: E402
from adlv.rootdata import delta_stable_subsets  # noqa: E402

SRC = os.path.join(os.path.dirname(__file__), "..", "src")
TIME_LIMIT_S = 300
ORBIT_LIMIT = 10**5
KAPPA_SAMPLES = 10**4
RANK_TWO = [n for n in CONFIGS if get_datum(n).rank == 2]


def report(number, ok, text):
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {text}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


@functools.lru_cache(maxsize=None)
def scan(name):
    """Elements of the scan range and a reducer shared by criteria 2-4."""
    d = get_datum(name)
    return elements_up_to(d, CONFIGS[name][1]), Reducer(d)


def _crosscheck_cli(name, tmpdir, threads, tag):
    spec, max_len = CONFIGS[name]
    gpath = os.path.join(tmpdir, f"{name}.json")
    with open(gpath, "w") as fh:
        json.dump(spec, fh)
    out = os.path.join(tmpdir, f"{name}.{tag}.csv")
    old = os.environ.get("ADLV_THREADS")
    os.environ["ADLV_THREADS"] = str(threads)
    try:
        t0 = time.perf_counter()
        code = run_command(CommandConfig(gpath, "crosscheck", max_length=max_len, out=out), io.StringIO())
        secs = time.perf_counter() - t0
    finally:
        if old is None:
            del os.environ["ADLV_THREADS"]
        else:
            os.environ["ADLV_THREADS"] = old
    with open(out, "rb") as fh:
        csv_bytes = fh.read()
    with open(out[:-4] + ".summary.json") as fh:
        summary = json.load(fh)
    return code, summary, csv_bytes, secs


@functools.lru_cache(maxsize=None)
def _tmpdir():
    return tempfile.mkdtemp(prefix="adlv-acceptance-")


@functools.lru_cache(maxsize=None)
def crosscheck_run(name, threads, tag):
    return _crosscheck_cli(name, _tmpdir(), threads, tag)


# ---------------------------------------------------------------- criterion 1
def test_criterion_1_theorem_a():
    parts, ok = [], True
    for name in CONFIGS:
        code, summary, _, secs = crosscheck_run(name, 1, "run1")
        good = code == 0 and summary["disagree"] == 0 and summary["agree"] == summary["total"] > 0 and secs < TIME_LIMIT_S
        ok &= good
        parts.append(f"{name} {summary['agree']}/{summary['total']} ({secs:.1f}s, exit {code})")
    report(1, ok, "criterion = oracle for every x and b in Omega: " + "; ".join(parts))
    assert ok


# ---------------------------------------------------------------- criterion 2
def test_criterion_2_theorem_b():
    parts, ok = [], True
    for name in CONFIGS:
        d = get_datum(name)
        if not delta_stable_subsets(d)[1]:
            parts.append(f"{name} skipped (not delta-connected)")
            continue
        xs, red = scan(name)
        n, bad = props.theorem_b(d, xs, red)
        ok &= not bad
        parts.append(f"{name} {n - len(bad)}/{n}")
    report(2, ok, "shrunken criterion = alcove criterion = oracle on shrunken x: " + "; ".join(parts))
    assert ok


# ---------------------------------------------------------------- criterion 3
def _independent_minimality(d, y):
    """BFS over the level orbit of y without the Reducer; True iff no length drop exists."""
    sims = [s for _, s in simple_affine_reflections(d)]
    ell = length(y)
    seen, queue = {y}, deque([y])
    while queue:
        u = queue.popleft()
        for s in sims:
            v = compose(compose(s, u), apply_delta(s))
            lv = length(v)
            if lv < ell:
                return False
            if lv == ell and v not in seen:
                seen.add(v)
                queue.append(v)
    return True


def test_criterion_3_descent():
    parts, ok, total_nodes = [], True, 0
    for name in CONFIGS:
        d = get_datum(name)
        xs, _ = scan(name)
        red = Reducer(d)
        bad = 0
        for x in xs:
            path = red.descend(x)
            lengths = [length(x)] + [length(st.result) for st in path.steps]
            if any(b > a for a, b in zip(lengths, lengths[1:])):
                bad += 1
            elif not (red.is_minimal(path.end) and _independent_minimality(d, path.end)):
                bad += 1
            elif sigma_invariants(path.end) != sigma_invariants(x):
                bad += 1
        total_nodes += red.bfs_nodes
        good = bad == 0 and red.max_orbit <= ORBIT_LIMIT
        ok &= good
        parts.append(f"{name} {len(xs) - bad}/{len(xs)} (nodes {red.bfs_nodes}, max orbit {red.max_orbit})")
    report(3, ok, f"descent ends at minimal elements, total BFS nodes {total_nodes}: " + "; ".join(parts))
    assert ok


# ---------------------------------------------------------------- criterion 4
def test_criterion_4_property_suites():
    summary, ok = {}, True
    failures = []
    for name in CONFIGS:
        d = get_datum(name)
        xs, red = scan(name)
        for label, check in props.PROPERTY_SUITE.items():
            if check is props.shrunken_empty_side:
                n, bad = check(d, xs, red)
            else:
                n, bad = check(d, xs)
            tot = summary.setdefault(label, [0, 0])
            tot[0] += n - len(bad)
            tot[1] += n
            if bad:
                ok = False
                failures.append((name, label, bad[:3]))
    text = "; ".join(f"{label} {a}/{b}" for label, (a, b) in summary.items())
    report(4, ok, "property suites over all scan ranges: " + text)
    assert ok, failures


# ---------------------------------------------------------------- criterion 5
def _closed_form(d, lam, w):
    W = d.W
    wi = W.inverse[w]
    out = 0
    for a in d.positive:
        p = d.pair(lam, a)
        out += abs(p) if d.is_positive(W.perm[wi][a]) else abs(p + 1)
    return out


def _random_twisted_conjugator(d, J, rnd):
    """Random y in the extended affine Weyl group of the Levi of J."""
    W = d.W
    v = 0
    Js = sorted(J)
    for _ in range(rnd.randrange(6)):
        if Js:
            v = W.mul(v, W.simple[rnd.choice(Js)])
    mu = d.from_lattice([rnd.randint(-3, 3) for _ in range(d.rank)])
    return AffineElement(mu, v, d)


def test_criterion_5_invariants():
    rnd = random.Random(20240601)
    keys = ["length closed form", "k identities", "nu_bar under conjugation", "newton n vs 2n", "kappa_J constancy"]
    counts = dict.fromkeys(keys, 0)
    bad = []

    def fail(key, *info):
        bad.append((key, name) + info)

    for name in CONFIGS:
        d = get_datum(name)
        W = d.W
        for lam in itertools.product(range(-4, 5), repeat=d.rank):
            if not d.in_lattice(lam):
                continue
            for w in range(W.order):
                counts["length closed form"] += 1
                if length(AffineElement(lam, w, d)) != _closed_form(d, lam, w):
                    fail("length closed form", lam, w)
        xs, _ = scan(name)
        shifts = [translation(d, d.cartan[i]) for i in range(d.rank)]
        sims = [s for _, s in simple_affine_reflections(d)] + omega_elements(d)
        for x in xs:
            for a in range(len(d.roots)):
                k = k_index(a, x)
                counts["k identities"] += 1
                if k_index(d.negate[a], x) != 1 - k:
                    fail("k identities", str(x), a)
                for i, t in enumerate(shifts):
                    if k_index(a, compose(t, x)) != k + d.pair(d.cartan[i], a):
                        fail("k identities", str(x), a, i)
            inv = sigma_invariants(x)
            for _ in range(2):
                y = compose(rnd.choice(sims), compose(rnd.choice(sims), rnd.choice(sims)))
                conj = compose(compose(y, x), invert(apply_delta(y)))
                counts["nu_bar under conjugation"] += 1
                if sigma_invariants(conj) != inv or newton(conj)[1] != newton(x)[1]:
                    fail("nu_bar under conjugation", str(x))
            nu = newton(x)
            n = 1
            while True:
                try:
                    newton(x, exponent=n)
                    break
                except ValueError:
                    n += 1
            counts["newton n vs 2n"] += 1
            if newton(x, exponent=n) != nu or newton(x, exponent=2 * n) != nu:
                fail("newton n vs 2n", str(x))
        stable = delta_stable_subsets(d)[0]
        per_config = KAPPA_SAMPLES // len(CONFIGS)
        for _ in range(per_config):
            J = rnd.choice(stable)
            x = _random_twisted_conjugator(d, J, rnd)
            y = _random_twisted_conjugator(d, J, rnd)
            conj = compose(compose(y, x), invert(apply_delta(y)))
            counts["kappa_J constancy"] += 1
            if not in_parabolic(d, conj.w, J) or kappa(conj, J) != kappa(x, J):
                fail("kappa_J constancy", sorted(J), str(x), str(y))
    ok = not bad
    failed = {k: len({b[:3] for b in bad if b[0] == k}) for k in keys}
    report(5, ok, "exact invariants: " + "; ".join(f"{k} {counts[k] - failed[k]}/{counts[k]}" for k in keys))
    assert ok, bad[:5]


# ---------------------------------------------------------------- criterion 6
def test_criterion_6_inner_forms():
    parts, ok = [], True
    for name in ("A1", "A2", "A2+swap"):
        d = get_datum(name)
        xs = elements_up_to(d, CONFIGS[name][1])
        bs = omega_elements(d) + [translation(d, d.cartan[0]), translation(d, tuple(sum(r) for r in zip(*d.cartan)))]
        n, bad = props.twisted_transport(d, xs, bs)
        ok &= not bad
        parts.append(f"{name} {n - len(bad)}/{n} over |Omega|={len(omega_elements(d))}")
    report(6, ok, "oracle under Ad(z) o delta on (x, b) = oracle under delta on (xz, bz): " + "; ".join(parts))
    assert ok


# ---------------------------------------------------------------- criterion 7
def _render_subprocess(name, threads):
    spec, _ = CONFIGS[name]
    env = dict(os.environ, PYTHONPATH=SRC, ADLV_THREADS=str(threads))
    proc = subprocess.run(
        [sys.executable, "-m", "adlv", "render", "--group", json.dumps(spec), "--b", "e", "--maxlen", "6"],
        capture_output=True,
        env=env,
        check=True,
    )
    return proc.stdout


def test_criterion_7_determinism():
    bad = []
    for name in CONFIGS:
        first = crosscheck_run(name, 1, "run1")[2]
        again = crosscheck_run(name, 1, "run2")[2]
        eight = crosscheck_run(name, 8, "run8")[2]
        if not first == again == eight:
            bad.append(f"csv {name}")
    for name in RANK_TWO:
        outs = [_render_subprocess(name, t) for t in (1, 1, 8)]
        if not outs[0] == outs[1] == outs[2] or not outs[0]:
            bad.append(f"svg {name}")
    ok = not bad
    report(
        7,
        ok,
        f"byte-identical CSV for {len(CONFIGS)} configs (two runs at 1 worker, one at 8) and SVG for {len(RANK_TWO)} rank-2 configs"
        + (f"; differing: {bad}" if bad else ""),
    )
    assert ok


if __name__ == "__main__":
    failed = 0
    for fn in [
        test_criterion_1_theorem_a,
        test_criterion_2_theorem_b,
        test_criterion_3_descent,
        test_criterion_4_property_suites,
        test_criterion_5_invariants,
        test_criterion_6_inner_forms,
        test_criterion_7_determinism,
    ]:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
