"""NetMaker-style triobjective instances.

A Hamiltonian cycle over a random node permutation keeps the graph
strongly connected; extra arcs are uniform random ordered pairs that do
not duplicate an existing arc. Each arc gets one cost component from each
band below, with the band-to-component assignment drawn per arc.
"""

from __future__ import annotations

from typing import List, Set, Tuple

import numpy as np

from ..model import Graph, Instance
from .base import BaseGenerator, require

BANDS: Tuple[Tuple[int, int], ...] = ((1, 333), (334, 666), (667, 1000))


def band_of(value: int) -> int:
    for i, (lo, hi) in enumerate(BANDS):
        if lo <= value <= hi:
            return i
    return -1


def _extra_arcs(
    rng: np.random.Generator, n: int, count: int, taken: Set[Tuple[int, int]]
) -> List[Tuple[int, int]]:
    free = n * (n - 1) - len(taken)
    if count * 2 > free:
        # Dense request: enumerate what is left and sample without replacement.
        remaining = [
            (u, v) for u in range(n) for v in range(n) if u != v and (u, v) not in taken
        ]
        picks = rng.choice(len(remaining), size=count, replace=False)
        return [remaining[int(i)] for i in picks]

    out: List[Tuple[int, int]] = []
    while len(out) < count:
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v or (u, v) in taken:
            continue
        taken.add((u, v))
        out.append((u, v))
    return out


def generate_netmaker(n: int, extra_arcs: int, seed: int) -> Instance:
    require(n >= 2, f"netmaker needs n >= 2, got {n}")
    limit = n * (n - 1) - n
    require(
        0 <= extra_arcs <= limit,
        f"extra arcs must be within [0, {limit}] for n = {n}, got {extra_arcs}",
    )

    rng = np.random.default_rng(seed)
    order = [int(x) for x in rng.permutation(n)]
    cycle = [(order[i], order[(i + 1) % n]) for i in range(n)]
    taken = set(cycle)
    arcs = cycle + _extra_arcs(rng, n, extra_arcs, taken)

    triples = []
    for tail, head in arcs:
        assignment = rng.permutation(3)
        cost = [0, 0, 0]
        for component, band in enumerate(assignment):
            lo, hi = BANDS[int(band)]
            cost[component] = int(rng.integers(lo, hi + 1))
        triples.append((tail, head, tuple(cost)))

    graph = Graph.build(n, 3, triples)
    return Instance(graph=graph, source=0, target=n - 1, name=f"netmaker-{n}-{extra_arcs}-{seed}")


class NetmakerGenerator(BaseGenerator):
    name: str = "netmaker"

    def generate(self, seed: int, **params: int) -> Instance:
        n = params.get("n", 100)
        return generate_netmaker(n=n, extra_arcs=params.get("extra_arcs", 3 * n), seed=seed)
