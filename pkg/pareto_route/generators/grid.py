"""Grid graphs with a super-source and a super-target.

Node 0 is the super-source, cells are numbered row by row starting at 1,
and the last node is the super-target. The super-source has an arc into
every cell of the leftmost column and every cell of the rightmost column
has an arc into the super-target. Neighboring cells are joined by arcs in
both directions.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from ..model import Graph, Instance
from .base import BaseGenerator, require

DEFAULT_MAX_COST = 10


def _cell(width: int, col: int, row: int) -> int:
    return 1 + row * width + col


def grid_topology(width: int, height: int) -> Tuple[int, List[Tuple[int, int]]]:
    n = width * height + 2
    source, target = 0, n - 1
    arcs: List[Tuple[int, int]] = []
    for row in range(height):
        arcs.append((source, _cell(width, 0, row)))
    for row in range(height):
        for col in range(width):
            here = _cell(width, col, row)
            if col + 1 < width:
                right = _cell(width, col + 1, row)
                arcs.append((here, right))
                arcs.append((right, here))
            if row + 1 < height:
                below = _cell(width, col, row + 1)
                arcs.append((here, below))
                arcs.append((below, here))
    for row in range(height):
        arcs.append((_cell(width, width - 1, row), target))
    return n, arcs


def generate_grid(width: int, height: int, seed: int, max_cost: int = DEFAULT_MAX_COST) -> Instance:
    """Biobjective grid instance, both cost components uniform in [1, max_cost]."""

    require(width >= 1 and height >= 1, f"grid size must be positive, got {width}x{height}")
    require(max_cost >= 1, f"max cost must be at least 1, got {max_cost}")

    n, arcs = grid_topology(width, height)
    rng = np.random.default_rng(seed)
    costs = rng.integers(1, max_cost + 1, size=(len(arcs), 2))
    triples = [(t, h, (int(c[0]), int(c[1]))) for (t, h), c in zip(arcs, costs)]
    graph = Graph.build(n, 2, triples)
    return Instance(graph=graph, source=0, target=n - 1, name=f"grid-{width}x{height}-{seed}")


class GridGenerator(BaseGenerator):
    name: str = "grid"

    def generate(self, seed: int, **params: int) -> Instance:
        return generate_grid(
            width=params.get("width", 10),
            height=params.get("height", 10),
            seed=seed,
            max_cost=params.get("max_cost", DEFAULT_MAX_COST),
        )

    def pairs(self, inst: Instance, count: int, seed: int) -> List[Tuple[int, int]]:
        # Only the super-source/super-target pair is meaningful on a grid.
        return [(inst.source, inst.target)] if count > 0 else []
