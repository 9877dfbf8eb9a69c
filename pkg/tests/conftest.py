import random

import pytest

from plumbhf.catalog import GOLDEN
from plumbhf.graph import PlumbingGraph, intersection_form


def random_forest(rng: random.Random, n: int, lo: int = -6, hi: int = -2,
                  strict: bool = True, p_root: float = 0.15) -> PlumbingGraph:
    """Random forest; with ``strict`` every weight is below minus the degree."""
    edges = []
    for i in range(1, n):
        if rng.random() >= p_root:
            edges.append((rng.randrange(i), i))
    deg = [0] * n
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
    weights = []
    for v in range(n):
        top = min(hi, -deg[v] - 1) if strict else hi
        weights.append(rng.randint(min(lo, top), top))
    return PlumbingGraph(tuple(weights), tuple(edges))


def no_bad_graphs(count: int, seed: int, max_n: int = 8, lo: int = -6):
    rng = random.Random(seed)
    return [random_forest(rng, rng.randint(1, max_n), lo=lo) for _ in range(count)]


@pytest.fixture(scope="session")
def forms():
    return {name: intersection_form(fn()) for name, fn in GOLDEN.items()}


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_lines(pytestconfig):
    return pytestconfig.stash.setdefault(ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
