from __future__ import annotations

import random
import sys
from itertools import combinations

import pytest

from dynqc.graph import DynamicGraph


def complete_edges(vertices):
    return list(combinations(vertices, 2))


def random_graph(n: int, p: float, seed: int, gamma: float = 0.9) -> DynamicGraph:
    rng = random.Random(seed)
    edges = [e for e in combinations(range(n), 2) if rng.random() < p]
    return DynamicGraph.from_edges(n, edges, gamma=gamma)


def two_k6(gamma: float = 0.9) -> DynamicGraph:
    return DynamicGraph.from_edges(12, complete_edges(range(6)) + complete_edges(range(6, 12)), gamma=gamma)


def k6_pendant(gamma: float = 0.9) -> DynamicGraph:
    # pendant 6 hangs off clique vertex 0
    return DynamicGraph.from_edges(7, complete_edges(range(6)) + [(0, 6)], gamma=gamma)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(mod.format_line(num))
