import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from foundry.elliptic import Lattice

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

SQUARE = Lattice(1.0, 1.0j)
SKEW = Lattice(1.0, 0.3 + 0.8j)
TILTED = Lattice(0.8 + 0.3j, -0.2 + 1.1j)
TALL = Lattice(1.0, 0.1 + 2.2j)
RECT = Lattice(1.0, 1.3j)

LATTICES = [SQUARE, SKEW, TILTED, TALL]


def random_lattices(count, seed=0):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        w1 = rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(-np.pi, np.pi))
        tau = rng.uniform(-0.8, 0.8) + 1j * rng.uniform(0.4, 2.5)
        out.append(Lattice(w1, w1 * tau))
    return out


def interior_points(lat, count, seed=0, margin=0.1):
    """Points of the centred fundamental parallelogram at least ``margin`` (relative) from its corners and centre."""
    rng = np.random.default_rng(seed)
    s = rng.uniform(-0.95, 0.95, size=count)
    t = rng.uniform(-0.95, 0.95, size=count)
    x = s * lat.omega1 + t * lat.omega3
    from foundry.elliptic import lattice_distance

    keep = np.asarray(lattice_distance(x, lat)) > margin * abs(lat.omega1)
    return x[keep]


@pytest.fixture(params=LATTICES, ids=["square", "skew", "tilted", "tall"])
def lat(request):
    return request.param


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
