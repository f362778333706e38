from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cylrig.graph import DesignatedPair, Graph

settings.register_profile(
    "default",
    max_examples=150,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

PAIR = DesignatedPair("u", "v")

ACCEPTANCE: list[str] = []


def labels(n: int) -> list[str]:
    return ["u", "v"] + [f"w{i}" for i in range(1, n - 1)]


@st.composite
def graphs(draw, min_n: int = 2, max_n: int = 7, max_edges: int | None = None) -> Graph:
    n = draw(st.integers(min_n, max_n))
    vs = labels(n)
    pairs = list(combinations(vs, 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_edges or len(pairs))) if pairs else []
    return Graph(vs, chosen)


def random_graph(rng: random.Random, n: int, density: float | None = None) -> Graph:
    vs = labels(n)
    p = rng.uniform(0.2, 0.8) if density is None else density
    return Graph(vs, [e for e in combinations(vs, 2) if rng.random() < p])


def all_graphs(n: int):
    vs = labels(n)
    pairs = list(combinations(vs, 2))
    for mask in range(1 << len(pairs)):
        yield Graph(vs, [pairs[j] for j in range(len(pairs)) if mask >> j & 1])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
