import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from popular_partitions import HedonicGame, Kind, Partition
from popular_partitions.gadgets import fig1_partitions, five_agent_noinstance, star_game
from popular_partitions.qsat import QDnfInstance

YES_4CLAUSE = [[1, 3, 4], [1, -3, 4], [1, 3, -4], [1, -3, -4]]
NO_SINGLE = [[1, 2, 3]]  # x1 & x2 & y1 over n=2


@pytest.fixture
def fig1():
    return five_agent_noinstance()


@pytest.fixture
def fig1_pair():
    return fig1_partitions()


@pytest.fixture
def yes_instance():
    return QDnfInstance.from_ints(2, YES_4CLAUSE)


def random_game(rng: random.Random, n: int, kind: str, nonnegative: bool = False) -> HedonicGame:
    lo = 0 if nonnegative else -3
    m = [[0 if i == j else Fraction(rng.randint(lo, 3), rng.choice([1, 1, 2])) for j in range(n)]
         for i in range(n)]
    return HedonicGame.from_matrix(kind, m)


def random_partition(rng: random.Random, n: int) -> Partition:
    k = rng.randint(1, n)
    return Partition.from_labels([rng.randrange(k) for _ in range(n)])


def random_instance(rng: random.Random, n: int, m: int) -> QDnfInstance:
    pool = [v for v in range(-2 * n, 2 * n + 1) if v]
    return QDnfInstance.from_ints(n, [rng.sample(pool, 3) for _ in range(m)])


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def games(draw, max_agents=6, kinds=("ashg", "fhg")):
    n = draw(st.integers(1, max_agents))
    kind = draw(st.sampled_from(kinds))
    vals = [[Fraction(0) if i == j else draw(rationals) for j in range(n)] for i in range(n)]
    return HedonicGame.from_matrix(kind, vals)


@st.composite
def partitions(draw, n):
    labels = [0]
    for _ in range(1, n):
        labels.append(draw(st.integers(0, max(labels) + 1)))
    return Partition.from_labels(labels)


# ---- acceptance summary ----------------------------------------------------

ACCEPTANCE_RESULTS: dict[int, tuple[str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        status, note = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {status}  {note}")
