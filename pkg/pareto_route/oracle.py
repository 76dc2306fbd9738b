"""Reference frontiers for small instances.

Two independent ways of getting the set of non-dominated s-t cost vectors:

* ``dfs``: enumerate every simple s-t path and filter. Exponential, so only
  for tiny graphs.
* ``label``: label-correcting search keeping a full Pareto set per node and
  re-scanning nodes until nothing changes.

Non-negative costs mean a cycle never makes a path better, so restricting
the enumeration to simple paths loses nothing.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Deque, Dict, List, Set, Union

from .errors import OracleGuardError
from .model import CostVector, Instance, add_costs, dominates_or_equal, non_dominated, zero

log = logging.getLogger("pareto_route.oracle")

DFS_MAX_NODES = 64
LABEL_MAX_NODES = 5000

DFS = "dfs"
LABEL = "label"

FrontierSet = List[CostVector]


def _guard(inst: Instance, mode: str) -> None:
    limit = DFS_MAX_NODES if mode == DFS else LABEL_MAX_NODES
    if inst.node_count > limit:
        raise OracleGuardError(
            f"oracle mode {mode!r} handles at most {limit} nodes, instance has {inst.node_count}"
        )


def _dfs(inst: Instance) -> List[Set[CostVector]]:
    g = inst.graph
    found: List[Set[CostVector]] = [set() for _ in range(g.node_count)]
    on_path = [False] * g.node_count

    # Explicit stack of (node, cost, next arc position) so deep graphs do not hit the recursion limit.
    s = inst.source
    on_path[s] = True
    found[s].add(zero(g.dimension))
    stack = [(s, zero(g.dimension), 0)]
    while stack:
        v, cost, pos = stack[-1]
        star = g.forward_star[v]
        if pos == len(star) or v == inst.target:
            stack.pop()
            on_path[v] = False
            continue
        stack[-1] = (v, cost, pos + 1)
        arc = g.arcs[star[pos]]
        w = arc.head
        if on_path[w]:
            continue
        new = add_costs(cost, arc.cost)
        found[w].add(new)
        on_path[w] = True
        stack.append((w, new, 0))
    return found


def _label_correcting(inst: Instance) -> List[List[CostVector]]:
    g = inst.graph
    sets: List[List[CostVector]] = [[] for _ in range(g.node_count)]
    sets[inst.source] = [zero(g.dimension)]
    pending: Deque[int] = deque([inst.source])
    queued = [False] * g.node_count
    queued[inst.source] = True

    while pending:
        v = pending.popleft()
        queued[v] = False
        for arc_id in g.forward_star[v]:
            arc = g.arcs[arc_id]
            w = arc.head
            merged = non_dominated(sets[w] + [add_costs(c, arc.cost) for c in sets[v]])
            if merged != sets[w]:
                sets[w] = merged
                if not queued[w]:
                    queued[w] = True
                    pending.append(w)
    return sets


def enumerate_frontier(
    inst: Instance, mode: str = LABEL, per_node: bool = False
) -> Union[FrontierSet, Dict[int, FrontierSet]]:
    """Lex-sorted non-dominated s-t cost vectors of `inst`.

    Args:
        inst: Instance to solve.
        mode: "dfs" (simple-path enumeration, n <= 64) or "label"
            (label-correcting, n <= 5000).
        per_node: Return {v: frontier of s-v paths} for every node instead.
            In dfs mode the per-node sets cover simple paths that avoid
            passing through the target.

    Raises:
        OracleGuardError: the instance is above the mode's node limit.
    """

    if mode not in (DFS, LABEL):
        raise ValueError(f"unknown oracle mode {mode!r}")
    _guard(inst, mode)

    if mode == DFS:
        per = [non_dominated(found) for found in _dfs(inst)]
    else:
        per = _label_correcting(inst)

    if per_node:
        return {v: front for v, front in enumerate(per)}
    front = per[inst.target]
    log.debug(f"oracle ({mode}) {inst.name or 'instance'}: {len(front)} efficient vectors")
    return front


def is_closed(frontier: FrontierSet, costs: List[CostVector]) -> bool:
    """True iff every vector in `costs` is dominated-or-equaled by some frontier member."""
    return all(any(dominates_or_equal(f, c) for f in frontier) for c in costs)


__all__ = ["DFS", "LABEL", "FrontierSet", "enumerate_frontier", "is_closed"]
