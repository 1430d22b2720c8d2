import functools
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from adlv.rootdata import build_root_datum  # noqa: E402

# name -> (group spec JSON, scan length used by the acceptance runs)
CONFIGS = {
    "A1": ({"cartan": [{"type": "A", "rank": 1}]}, 12),
    "A2": ({"cartan": [{"type": "A", "rank": 2}]}, 10),
    "A2+swap": ({"cartan": [{"type": "A", "rank": 2}], "delta": {"node_perm": [2, 1]}}, 10),
    "C2": ({"cartan": [{"type": "C", "rank": 2}]}, 10),
    "G2": ({"cartan": [{"type": "G", "rank": 2}]}, 8),
    "A3": ({"cartan": [{"type": "A", "rank": 3}]}, 6),
    "A3+flip": ({"cartan": [{"type": "A", "rank": 3}], "delta": {"node_perm": [3, 2, 1]}}, 6),
    "A1xA1+swap": (
        {"cartan": [{"type": "A", "rank": 1}, {"type": "A", "rank": 1}], "delta": {"node_perm": [2, 1]}},
        8,
    ),
}

# smaller ranges for the per-module property tests
SMALL = {"A1": 6, "A2": 5, "A2+swap": 5, "C2": 5, "G2": 4, "A3": 3, "A3+flip": 3, "A1xA1+swap": 4}


@functools.lru_cache(maxsize=None)
def get_datum(name):
    return build_root_datum(CONFIGS[name][0])


def make(cartan, delta=None, lattice="adjoint"):
    spec = {"cartan": [{"type": t, "rank": r} for t, r in cartan], "lattice": lattice}
    if delta is not None:
        spec["delta"] = {"node_perm": list(delta)}
    return build_root_datum(spec)


@pytest.fixture(params=sorted(CONFIGS))
def config(request):
    return request.param, get_datum(request.param)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
