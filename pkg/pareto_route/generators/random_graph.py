from __future__ import annotations

import numpy as np

from ..model import Graph, Instance
from .base import BaseGenerator, require


def generate_random(n: int, m: int, d: int, seed: int, max_cost: int = 10) -> Instance:
    """Uniform random digraph: m ordered pairs without self-loops, costs in [1, max_cost].

    Parallel arcs may occur. Source is node 0 and target is node n - 1.
    """

    require(n >= 2, f"random graphs need n >= 2, got {n}")
    require(m >= 0, f"arc count must be non-negative, got {m}")
    require(max_cost >= 1, f"max cost must be at least 1, got {max_cost}")

    rng = np.random.default_rng(seed)
    tails = rng.integers(0, n, size=m)
    # Shift heads by 1..n-1 so that head != tail without rejection.
    heads = (tails + rng.integers(1, n, size=m)) % n
    costs = rng.integers(1, max_cost + 1, size=(m, d))

    triples = [
        (int(t), int(h), tuple(int(c) for c in row)) for t, h, row in zip(tails, heads, costs)
    ]
    graph = Graph.build(n, d, triples)
    return Instance(graph=graph, source=0, target=n - 1, name=f"random-{n}-{m}-{d}-{seed}")


class RandomGenerator(BaseGenerator):
    name: str = "random"

    def generate(self, seed: int, **params: int) -> Instance:
        n = params.get("n", 30)
        return generate_random(
            n=n,
            m=params.get("m", 3 * n),
            d=params.get("d", 2),
            seed=seed,
            max_cost=params.get("max_cost", 10),
        )
