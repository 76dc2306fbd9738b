"""Heuristic, nadir and dominance-bound preprocessing.

One lexicographic one-to-all Dijkstra query per preprocessing order
yields, for every node, the cost of a lexicographically optimal path to
the root under that order. Their componentwise minimum is an admissible,
monotone heuristic (the ideal point of the remaining cost); for d = 2 the
two trees also give each node's nadir point. The trees' costs at the
source give a global dominance bound for the target.
"""

from __future__ import annotations

import heapq
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import InfeasibleInstanceError, UnsupportedDimensionError
from .model import CostVector, Instance, add_costs, lex_key, zero

log = logging.getLogger("pareto_route.preprocessing")

FORWARD = "forward"
REVERSE = "reverse"
EPSILON = 1


@dataclass(frozen=True)
class LexTree:
    """Shortest path tree for one lexicographic order.

    `tree_cost[v]` is None for nodes that cannot reach the root (reverse
    direction) or cannot be reached from it (forward direction).
    `parent_arc[v]` is the arc leaving v toward the root (reverse) or the
    arc entering v from the root's side (forward).
    """

    order: Tuple[int, ...]
    root: int
    direction: str
    parent_arc: Tuple[Optional[int], ...]
    tree_cost: Tuple[Optional[CostVector], ...]

    def reachable(self, v: int) -> bool:
        return self.tree_cost[v] is not None

    def path_to_root(self, inst: Instance, v: int) -> List[int]:
        """Node sequence from v along parent arcs to the root (reverse trees only)."""
        nodes = [v]
        seen = {v}
        while v != self.root:
            arc_id = self.parent_arc[v]
            if arc_id is None:
                return []
            v = inst.graph.arcs[arc_id].head
            if v in seen:
                return []
            seen.add(v)
            nodes.append(v)
        return nodes


@dataclass
class PreprocessData:
    pi: List[Optional[CostVector]]
    beta_v: Optional[List[Optional[CostVector]]]
    beta_t: Optional[CostVector]
    shortcut: Optional[LexTree]
    reachable: List[bool]
    trees: List[LexTree] = field(default_factory=list)
    elapsed_ms: float = 0.0
    feasible: bool = True


def preprocessing_orders(d: int) -> List[Tuple[int, ...]]:
    """sigma^i = (i, remaining components ascending), for i = 1..d."""

    if d < 2:
        raise UnsupportedDimensionError(f"preprocessing needs d >= 2, got {d}")
    return [(i,) + tuple(j for j in range(1, d + 1) if j != i) for i in range(1, d + 1)]


def lex_dijkstra(
    inst: Instance,
    root: int,
    direction: str = REVERSE,
    order: Optional[Sequence[int]] = None,
) -> LexTree:
    """One-to-all lexicographic Dijkstra query.

    With `direction="reverse"` the tree holds lex-optimal v-to-root paths
    (walking incoming arcs); with `"forward"` it holds root-to-v paths.
    Equal keys pop in node id order.
    """

    g = inst.graph
    d = g.dimension
    sigma = tuple(order) if order is not None else tuple(range(1, d + 1))
    if sorted(sigma) != list(range(1, d + 1)):
        raise UnsupportedDimensionError(f"{sigma} is not a permutation of 1..{d}")
    if direction not in (FORWARD, REVERSE):
        raise ValueError(f"unknown direction {direction!r}")

    n = g.node_count
    cost: List[Optional[CostVector]] = [None] * n
    parent: List[Optional[int]] = [None] * n
    done = [False] * n
    cost[root] = zero(d)

    star = g.reverse_star if direction == REVERSE else g.forward_star
    heap: List[Tuple[CostVector, int]] = [(lex_key(cost[root], sigma), root)]  # type: ignore[arg-type]

    while heap:
        _, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        cu = cost[u]
        assert cu is not None
        for arc_id in star[u]:
            arc = g.arcs[arc_id]
            w = arc.tail if direction == REVERSE else arc.head
            if done[w]:
                continue
            cw = add_costs(cu, arc.cost)
            key = lex_key(cw, sigma)
            old = cost[w]
            if old is None or key < lex_key(old, sigma):
                cost[w] = cw
                parent[w] = arc_id
                heapq.heappush(heap, (key, w))

    return LexTree(
        order=sigma,
        root=root,
        direction=direction,
        parent_arc=tuple(parent),
        tree_cost=tuple(cost),
    )


def compute_heuristic(tree_costs: Sequence[Sequence[Optional[CostVector]]]) -> List[Optional[CostVector]]:
    """Componentwise minimum over the trees' per-node costs (the ideal point).

    Args:
        tree_costs: One per-node cost list per preprocessing order.
    """

    pi: List[Optional[CostVector]] = []
    for costs in zip(*tree_costs):
        if any(c is None for c in costs):
            pi.append(None)
        else:
            pi.append(tuple(min(parts) for parts in zip(*costs)))  # type: ignore[arg-type]
    return pi


def compute_nadir_2d(trees: Sequence[LexTree]) -> List[Optional[CostVector]]:
    """beta_v = (first component of the (2,1) tree, second component of the (1,2) tree)."""

    by_order = {t.order: t for t in trees}
    t12, t21 = by_order.get((1, 2)), by_order.get((2, 1))
    if t12 is None or t21 is None:
        raise UnsupportedDimensionError("nadir points need the (1,2) and (2,1) trees of a d = 2 instance")

    beta: List[Optional[CostVector]] = []
    for a, b in zip(t12.tree_cost, t21.tree_cost):
        beta.append(None if a is None or b is None else (b[0], a[1]))
    return beta


def compute_dominance_bound(trees: Sequence[LexTree], source: int, epsilon: int = EPSILON) -> CostVector:
    """Componentwise maximum of the trees' costs at the source, plus epsilon."""

    at_source = [t.tree_cost[source] for t in trees]
    if any(c is None for c in at_source):
        raise InfeasibleInstanceError(f"source {source} cannot reach the target")
    return tuple(max(parts) + epsilon for parts in zip(*at_source))  # type: ignore[arg-type]


def preprocess(inst: Instance, parallel: bool = False, epsilon: int = EPSILON) -> PreprocessData:
    """Run the d lexicographic queries rooted at the target and derive pi, beta_v and beta_t.

    An infeasible instance (source cannot reach target) yields data with
    `beta_t = None`; solvers short-circuit to an empty frontier.
    """

    started = time.perf_counter()
    orders = preprocessing_orders(inst.dimension)

    if parallel:
        with ThreadPoolExecutor(max_workers=len(orders)) as pool:
            trees = list(pool.map(lambda o: lex_dijkstra(inst, inst.target, REVERSE, o), orders))
    else:
        trees = [lex_dijkstra(inst, inst.target, REVERSE, o) for o in orders]

    pi = compute_heuristic([t.tree_cost for t in trees])
    beta_v = compute_nadir_2d(trees) if inst.dimension == 2 else None
    try:
        beta_t: Optional[CostVector] = compute_dominance_bound(trees, inst.source, epsilon)
    except InfeasibleInstanceError:
        log.info(f"{inst.name or 'instance'}: target unreachable from source {inst.source}")
        beta_t = None

    elapsed_ms = (time.perf_counter() - started) * 1000.0
    reachable = [c is not None for c in pi]
    log.debug(
        f"preprocessed {inst.name or 'instance'}: {sum(reachable)}/{inst.node_count} nodes reach "
        f"the target, beta_t={beta_t}, {elapsed_ms:.1f} ms"
    )
    return PreprocessData(
        pi=pi,
        beta_v=beta_v,
        beta_t=beta_t,
        shortcut=trees[0],
        reachable=reachable,
        trees=trees,
        elapsed_ms=elapsed_ms,
        feasible=beta_t is not None,
    )


def zero_heuristic(inst: Instance, bound: Optional[CostVector] = None) -> PreprocessData:
    """pi = 0 everywhere and every node treated as reachable (plain multiobjective Dijkstra)."""

    d = inst.dimension
    return PreprocessData(
        pi=[zero(d)] * inst.node_count,
        beta_v=None,
        beta_t=bound,
        shortcut=None,
        reachable=[True] * inst.node_count,
    )


def reduced_arc_costs(inst: Instance, pi: Sequence[Optional[CostVector]]) -> List[Optional[CostVector]]:
    """c_uv + pi(v) - pi(u) per arc; None where either end has no heuristic value."""

    out: List[Optional[CostVector]] = []
    for a in inst.graph.arcs:
        pu, pv = pi[a.tail], pi[a.head]
        if pu is None or pv is None:
            out.append(None)
        else:
            out.append(tuple(c + b - x for c, b, x in zip(a.cost, pv, pu)))
    return out
