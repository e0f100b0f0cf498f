import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bjortho.spaces import CoordinateAbs, Euclidean, LinearImage, Lp, Polyhedral, WeightedLp

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

FIXTURES = Path(__file__).parent / "fixtures"

# hexagonal norm: max of |<g_i, x>| over three directions 60 degrees apart
HEXAGON = Polyhedral([[1.0, 0.0], [0.5, math.sqrt(3) / 2], [-0.5, math.sqrt(3) / 2]])

NORMS_2D = [
    Euclidean(),
    Lp(1.0),
    Lp(1.5),
    Lp(3.0),
    Lp(math.inf),
    WeightedLp(2.0, [1.0, 4.0]),
    WeightedLp(1.0, [2.0, 0.5]),
    WeightedLp(math.inf, [1.0, 3.0]),
    HEXAGON,
]

SEMINORMS_2D = NORMS_2D + [
    CoordinateAbs(0),
    CoordinateAbs(1),
    LinearImage([[1.0, 2.0], [0.0, 0.0]], Lp(math.inf)),
    LinearImage([[1.0, -1.0]], Euclidean()),
]


def vectors(dim: int = 2, bound: float = 10.0):
    """Finite vectors with Euclidean norm >= 1e-3."""
    el = st.floats(-bound, bound, allow_nan=False, allow_infinity=False)
    return st.lists(el, min_size=dim, max_size=dim).map(np.array).filter(lambda v: np.linalg.norm(v) >= 1e-3)


scalars = st.floats(-50.0, 50.0, allow_nan=False).filter(lambda t: abs(t) >= 1e-3)


# -- acceptance reporting ----------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
