"""Base instance generator interface for pareto-route.

Generators build synthetic benchmark instances from a seed. Every
generator draws from `numpy.random.default_rng(seed)` only, so the same
seed and parameters always give the same instance (and the same bytes
once written as DIMACS).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import List, Tuple

import numpy as np

from ..errors import GeneratorParamError
from ..model import Graph, Instance


def require(condition: bool, message: str) -> None:
    if not condition:
        raise GeneratorParamError(message)


def random_pairs(graph: Graph, count: int, seed: int) -> List[Tuple[int, int]]:
    """Draw up to `count` distinct (s, t) pairs with s != t, 0-based.

    Args:
        graph: Graph to draw node ids from.
        count: Number of pairs wanted; capped at n(n-1).
        seed: Seed for numpy's default_rng.

    Returns:
        List of pairs in draw order.
    """

    n = graph.node_count
    require(n >= 2, f"need at least 2 nodes to draw s-t pairs, got {n}")
    require(count >= 0, f"pair count must be non-negative, got {count}")
    count = min(count, n * (n - 1))

    rng = np.random.default_rng(seed)
    seen = set()
    pairs: List[Tuple[int, int]] = []
    while len(pairs) < count:
        s, t = (int(x) for x in rng.integers(0, n, size=2))
        if s == t or (s, t) in seen:
            continue
        seen.add((s, t))
        pairs.append((s, t))
    return pairs


class BaseGenerator(ABC):
    """Abstract base class for instance generators.

    A generator turns a seed plus a few integer parameters into an
    `Instance`. Implementations must not touch any global random state.
    """

    name: str = "base"

    @abstractmethod
    def generate(self, seed: int, **params: int) -> Instance:
        """Build one instance.

        Args:
            seed: Seed for numpy's default_rng.
            **params: Generator specific sizes (width, height, n, ...).

        Returns:
            Instance with the generator's default source and target.

        Raises:
            GeneratorParamError: parameters out of range.
        """
        raise NotImplementedError

    def pairs(self, inst: Instance, count: int, seed: int) -> List[Tuple[int, int]]:
        """s-t pairs to benchmark this kind of instance on.

        Default draws uniform random pairs; generators with a fixed
        source/target layout override this.
        """
        return random_pairs(inst.graph, count, seed)
