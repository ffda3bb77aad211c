"""Shared corpus for the test-suite.

Polynomials are coefficient lists with the constant term first.
"""
import random

import pytest

from ramforge.localram import EisensteinDatum

# monogenic maximal orders used throughout
FIELDS = {
    "Z": [0, 1],
    "Z[i]": [1, 0, 1],
    "Z[zeta3]": [1, 1, 1],
    "Z[sqrt2]": [-2, 0, 1],
    "Z[sqrt-2]": [2, 0, 1],
    "Z[sqrt6]": [-6, 0, 1],
    "Z[golden]": [-1, 1, 1],
    "Z[2^(1/3)]": [-2, 0, 0, 1],
    "Z[3^(1/3)]": [-3, 0, 0, 1],
    "Z[2^(1/4)]": [-2, 0, 0, 0, 1],
    "Z[zeta12]": [1, 0, -1, 0, 1],
}

# local Eisenstein data (p, e, g, u)
EISENSTEIN = [
    (2, 2, (), 1),  # x^2 - 2
    (2, 3, (), 1),  # x^3 - 2
    (3, 2, (), 2),  # x^2 - 6
    (3, 3, (), 1),  # x^3 - 3, wild
    (2, 4, (), 1),  # x^4 - 2
    (2, 2, (1,), 1),  # x^2 - 2x - 2
    (5, 4, (3, 7), 2),
    (3, 2, (4,), 1),
    (7, 3, (1, 2), 3),
]

PRECISION = 16


def corpus_data(N=PRECISION):
    return [EisensteinDatum(p, N, e, g, u) for p, e, g, u in EISENSTEIN]


def random_data(count=50, seed=20240611, N=PRECISION):
    """Seeded random Eisenstein data: p in {2,3,5}, e in {2,3,4}, g in [0, p^2], u a unit."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        p = rng.choice((2, 3, 5))
        e = rng.choice((2, 3, 4))
        g = tuple(rng.randint(0, p * p) for _ in range(e - 1))
        u = rng.randint(1, p - 1)
        out.append(EisensteinDatum(p, N, e, g, u))
    return out


@pytest.fixture(params=sorted(FIELDS), ids=str)
def field_poly(request):
    return FIELDS[request.param]


@pytest.fixture(params=range(len(EISENSTEIN)), ids=lambda i: "p={},e={},g={},u={}".format(*EISENSTEIN[i]))
def datum(request):
    return corpus_data()[request.param]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
