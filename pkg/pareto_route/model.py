"""Graph and cost-vector model shared by every solver.

Cost vectors are plain tuples of non-negative integers. Keeping them as
tuples (instead of a wrapper class) lets Python's native tuple ordering
serve as the identity-permutation lexicographic order, which is what the
priority queues compare on.

A `Graph` is the topology plus per-arc costs; an `Instance` adds the
source and target. Both are immutable once built and can be shared across
concurrent solver runs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionMismatchError, InstanceFormatError, UnsupportedDimensionError

log = logging.getLogger("pareto_route.model")

CostVector = Tuple[int, ...]

MIN_DIMENSION = 2
MAX_DIMENSION = 8
# Per-component cap so that a simple path (at most n arcs) fits in a signed 64-bit integer.
COST_CEILING = 2**63 - 1


def _check_dims(x: CostVector, y: CostVector) -> None:
    if len(x) != len(y):
        raise DimensionMismatchError(f"cost vectors of dimension {len(x)} and {len(y)}")


def zero(d: int) -> CostVector:
    return (0,) * d


def add_costs(x: CostVector, y: CostVector) -> CostVector:
    _check_dims(x, y)
    return tuple(a + b for a, b in zip(x, y))


def dominates(x: CostVector, y: CostVector) -> bool:
    """True iff x <= y componentwise and x != y."""
    _check_dims(x, y)
    strict = False
    for a, b in zip(x, y):
        if a > b:
            return False
        if a < b:
            strict = True
    return strict


def dominates_or_equal(x: CostVector, y: CostVector) -> bool:
    """True iff x <= y componentwise (the reflexive dominance used for pruning)."""
    _check_dims(x, y)
    for a, b in zip(x, y):
        if a > b:
            return False
    return True


def identity_order(d: int) -> Tuple[int, ...]:
    return tuple(range(1, d + 1))


def lex_key(x: CostVector, order: Optional[Sequence[int]] = None) -> CostVector:
    """Rearrange x so that plain tuple comparison follows `order` (1-based component indices)."""
    if order is None:
        return x
    return tuple(x[i - 1] for i in order)


def lex_less(x: CostVector, y: CostVector, order: Optional[Sequence[int]] = None) -> bool:
    """True iff x is lexicographically smaller than y when components are read in `order`."""
    _check_dims(x, y)
    if order is None:
        return x < y
    for i in order:
        a, b = x[i - 1], y[i - 1]
        if a != b:
            return a < b
    return False


def set_dominates(frontier: Sequence[CostVector], y: CostVector) -> bool:
    """True iff some vector of `frontier` is <= y componentwise.

    `frontier` must be lexicographically non-decreasing. For d = 2 it must
    also be mutually non-dominated (strictly increasing first component,
    strictly decreasing second component); then the check is constant
    time whenever y is not smaller than the last entry in its first
    component, which is the only way the solvers call it.
    """
    if not frontier:
        return False
    last = frontier[-1]
    _check_dims(last, y)
    if len(y) == 2 and y[0] >= last[0]:
        return last[1] <= y[1]
    y0 = y[0]
    for z in frontier:
        if z[0] > y0:
            break
        if dominates_or_equal(z, y):
            return True
    return False


def non_dominated(costs: Iterable[CostVector]) -> List[CostVector]:
    """Lex-sorted, duplicate-free, mutually non-dominated subset of `costs`."""
    result: List[CostVector] = []
    for c in sorted(set(costs)):
        # Everything already kept is lex-smaller, so only it can dominate c.
        if not any(dominates_or_equal(z, c) for z in result):
            result.append(c)
    return result


@dataclass(frozen=True)
class Arc:
    id: int
    tail: int
    head: int
    cost: CostVector


@dataclass(frozen=True)
class Graph:
    """Digraph in forward and reverse adjacency form with per-arc cost vectors."""

    node_count: int
    dimension: int
    arcs: Tuple[Arc, ...]
    forward_star: Tuple[Tuple[int, ...], ...]
    reverse_star: Tuple[Tuple[int, ...], ...]

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @classmethod
    def build(
        cls,
        node_count: int,
        dimension: int,
        arcs: Iterable[Tuple[int, int, Sequence[int]]],
    ) -> "Graph":
        """Build a graph from (tail, head, cost) triples with 0-based node ids.

        Self-loops are dropped (with non-negative costs they never lie on an
        efficient path). Parallel arcs are kept.
        """
        if not MIN_DIMENSION <= dimension <= MAX_DIMENSION:
            raise UnsupportedDimensionError(
                f"dimension must be within [{MIN_DIMENSION}, {MAX_DIMENSION}], got {dimension}"
            )
        if node_count < 0:
            raise InstanceFormatError(f"negative node count {node_count}")

        ceiling = COST_CEILING // max(node_count, 1)
        built: List[Arc] = []
        dropped = 0
        for tail, head, cost in arcs:
            if not (0 <= tail < node_count and 0 <= head < node_count):
                raise InstanceFormatError(
                    f"arc ({tail}, {head}) outside node range [0, {node_count})"
                )
            vec = tuple(int(c) for c in cost)
            if len(vec) != dimension:
                raise DimensionMismatchError(
                    f"arc ({tail}, {head}) has {len(vec)} cost components, expected {dimension}"
                )
            if any(c < 0 for c in vec):
                raise InstanceFormatError(f"arc ({tail}, {head}) has a negative cost {vec}")
            if any(c > ceiling for c in vec):
                raise InstanceFormatError(
                    f"arc ({tail}, {head}) cost {vec} exceeds the 64-bit path budget"
                )
            if tail == head:
                dropped += 1
                continue
            built.append(Arc(id=len(built), tail=tail, head=head, cost=vec))

        if dropped:
            log.warning(f"dropped {dropped} self-loop(s)")

        return cls._from_arcs(node_count, dimension, built)

    @classmethod
    def _from_arcs(cls, node_count: int, dimension: int, arcs: List[Arc]) -> "Graph":
        fwd: List[List[int]] = [[] for _ in range(node_count)]
        rev: List[List[int]] = [[] for _ in range(node_count)]
        for a in arcs:
            fwd[a.tail].append(a.id)
            rev[a.head].append(a.id)
        return cls(
            node_count=node_count,
            dimension=dimension,
            arcs=tuple(arcs),
            forward_star=tuple(tuple(x) for x in fwd),
            reverse_star=tuple(tuple(x) for x in rev),
        )

    def with_costs(self, costs: Sequence[CostVector], dimension: int) -> "Graph":
        """Same topology and arc ids, new cost vectors (one per arc)."""
        arcs = [Arc(a.id, a.tail, a.head, tuple(c)) for a, c in zip(self.arcs, costs)]
        return Graph(
            node_count=self.node_count,
            dimension=dimension,
            arcs=tuple(arcs),
            forward_star=self.forward_star,
            reverse_star=self.reverse_star,
        )


@dataclass(frozen=True)
class Instance:
    """A one-to-one instance: a graph plus source and target (0-based)."""

    graph: Graph
    source: int
    target: int
    name: str = ""

    def __post_init__(self) -> None:
        n = self.graph.node_count
        if not (0 <= self.source < n and 0 <= self.target < n):
            raise InstanceFormatError(
                f"source {self.source} / target {self.target} outside node range [0, {n})"
            )
        if self.source == self.target:
            raise InstanceFormatError("source and target must differ")

    @property
    def dimension(self) -> int:
        return self.graph.dimension

    @property
    def node_count(self) -> int:
        return self.graph.node_count

    @property
    def arc_count(self) -> int:
        return self.graph.arc_count


def reverse_instance(inst: Instance) -> Instance:
    """Reverse every arc, swap source and target, and swap the two cost components."""
    g = inst.graph
    if g.dimension != 2:
        raise UnsupportedDimensionError(
            f"instance reversal is defined for d = 2 only, got d = {g.dimension}"
        )
    arcs = tuple(Arc(a.id, a.head, a.tail, (a.cost[1], a.cost[0])) for a in g.arcs)
    graph = Graph(
        node_count=g.node_count,
        dimension=2,
        arcs=arcs,
        forward_star=g.reverse_star,
        reverse_star=g.forward_star,
    )
    return Instance(graph=graph, source=inst.target, target=inst.source, name=inst.name)
