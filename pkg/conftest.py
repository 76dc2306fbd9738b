"""Shared fixtures: the four-node example instance and random instance factories."""

from __future__ import annotations

from typing import Callable

import pytest

from pareto_route.generators import generate_random
from pareto_route.model import Graph, Instance

# s=0, v=1, w=2, t=3
EXAMPLE_ARCS = [
    (0, 1, (1, 1)),
    (0, 3, (1, 10)),
    (0, 2, (2, 2)),
    (1, 3, (2, 4)),
    (2, 3, (1, 2)),
    (1, 2, (2, 0)),
]
EXAMPLE_FRONTIER = [(1, 10), (3, 4), (4, 3)]

ALGOS_2D = ("tmda", "mda", "tbda", "btbda")
QUEUES = ("heap", "bucket")


@pytest.fixture
def example_instance() -> Instance:
    return Instance(graph=Graph.build(4, 2, EXAMPLE_ARCS), source=0, target=3, name="example")


@pytest.fixture
def random_instance() -> Callable[..., Instance]:
    """Factory for small seeded random instances (arc count defaults to 3n)."""

    def make(seed: int, n: int = 12, d: int = 2, m: int = 0, max_cost: int = 10) -> Instance:
        return generate_random(n=n, m=m or 3 * n, d=d, seed=seed, max_cost=max_cost)

    return make
