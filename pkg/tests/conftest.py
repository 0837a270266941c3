import random

import pytest
from hypothesis import settings

from viewgraphs.graph import ViewingGraph, parse_graph

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

GRID_1 = "n=9; 1-2,2-3,4-5,5-6,7-8,8-9,1-4,4-7,2-5,5-8,3-6,6-9"
DOTTED8_1 = "n=8; 1-2,2-3,3-4,4-1,4-5,5-6,6-3,5-7,7-6,7-8,8-1"
FOUR_CYCLE_1 = "n=4; 1-2,2-3,3-4,4-1"


def one_based(text: str) -> ViewingGraph:
    return parse_graph(text, "edge-list", base=1)


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> ViewingGraph:
    return ViewingGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_connected(rng: random.Random, n: int, extra: int) -> ViewingGraph:
    """Random spanning tree plus ``extra`` random edges."""
    edges = set()
    for v in range(1, n):
        u = rng.randrange(v)
        edges.add((u, v))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    rng.shuffle(pairs)
    edges.update(pairs[:extra])
    return ViewingGraph(n, edges)


@pytest.fixture
def grid():
    return one_based(GRID_1)


@pytest.fixture
def dotted8():
    return one_based(DOTTED8_1)


@pytest.fixture
def four_cycle():
    return one_based(FOUR_CYCLE_1)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
