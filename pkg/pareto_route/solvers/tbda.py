"""Targeted biobjective Dijkstra.

In two dimensions, paths extracted at a node arrive in lexicographic
order, so dominance against everything extracted there so far collapses to
one comparison with the second cost of the last one (`gamma`). Instead of
per-arc waiting lists, each arc keeps a cursor into its tail node's
permanent list and regenerates the next candidate on demand.

Shortcuts: when a path to v is extracted, it is completed to the target
along the (1,2)-lexicographic tree. The result is an s-t path whose cost
is known immediately; it tightens the bound on the second objective and
may later be overtaken (same first cost, smaller second cost) by a path
the search finds on its own, in which case it is replaced.

The `static` propagation check compares a new path with the nadir point
of its head instead of `gamma`. It exists only to compare against the
`gamma` check: it can reject efficient paths (and with shortcuts off it
rejects every arc into the target, whose nadir point is zero), so its
frontiers are not exact.
"""

from __future__ import annotations

import logging
import math
from typing import List, Optional, Sequence

from ..errors import UnsupportedDimensionError
from ..model import CostVector, Instance
from ..preprocessing import PreprocessData
from ..queues import BaseQueue, get_queue, queue_name
from ..records import SolutionRecord
from .base import (
    BaseSolver,
    Deadline,
    Label,
    SolveOptions,
    build_record,
    frontier_paths,
    root_label,
)

log = logging.getLogger("pareto_route.solvers.tbda")

GAMMA_CHECK = "gamma"
STATIC_CHECK = "static"


class LocalBounds:
    """Bounds private to one search: (first, second) plus no heuristic sharing.

    The bidirectional driver swaps this for views onto shared state with
    the same interface.
    """

    raises: Optional[List[int]] = None

    def __init__(self, first: float, second: float) -> None:
        self._first = first
        self._second = second

    def first(self) -> float:
        return self._first

    def second(self) -> float:
        return self._second

    def tighten_second(self, value: int) -> None:
        if value < self._second:
            self._second = value

    def raise_opposite(self, node: int, value: int) -> None:
        pass


def add_shortcut(frontier: List[Label], label: Label, bounds: LocalBounds) -> None:
    """Add an s-t path that the caller already checked against the second bound.

    If the last frontier entry has the same first cost and a larger second
    cost it has been overtaken and is replaced; otherwise the path is
    appended. The second bound drops to the new path's second cost.
    """

    cost = label.cost
    if frontier and frontier[-1].cost[0] == cost[0] and frontier[-1].cost[1] > cost[1]:
        log.debug(f"frontier replace {frontier[-1].cost} -> {cost}")
        frontier[-1] = label
    else:
        log.debug(f"frontier add {cost}")
        frontier.append(label)
    bounds.tighten_second(cost[1])


class Bda2dSearch:
    """One biobjective search, advanced one extraction at a time by `step()`."""

    def __init__(
        self,
        inst: Instance,
        pre: PreprocessData,
        queue: BaseQueue,
        bounds: LocalBounds,
        shortcuts: bool = True,
        propagation_check: str = GAMMA_CHECK,
        check_invariants: bool = False,
        label: str = "",
    ) -> None:
        if inst.dimension != 2:
            raise UnsupportedDimensionError(f"tbda needs d = 2, got d = {inst.dimension}")
        if propagation_check not in (GAMMA_CHECK, STATIC_CHECK):
            raise ValueError(f"unknown propagation check {propagation_check!r}")
        g = inst.graph
        self.inst = inst
        self.graph = g
        self.pre = pre
        self.pi = pre.pi
        self.beta_v: Sequence[Optional[CostVector]] = pre.beta_v or [None] * g.node_count
        self.queue = queue
        self.bounds = bounds
        self.shortcuts = shortcuts and pre.beta_v is not None
        self.static_check = propagation_check == STATIC_CHECK
        self.check_invariants = check_invariants
        self.tag = label or "tbda"

        self.gamma: List[float] = [math.inf] * g.node_count
        self.visited = [False] * g.node_count
        self.permanent: List[List[Label]] = [[] for _ in range(g.node_count)]
        self.last_processed = [0] * g.arc_count
        self.frontier: List[Label] = []
        self.extraction_keys: List[CostVector] = []
        self._strict_order = check_invariants and queue.name == "heap"
        self.finished = False
        self.stopped_early = False

        pi_s = self.pi[inst.source]
        if pi_s is None or not pre.feasible:
            self.finished = True
        else:
            queue.insert(root_label(inst.source, 2, pi_s))

    def _prune_key(self, node: int, cost2: int, reduced2: int) -> int:
        """Second reduced cost used for pruning, including any raised heuristic value."""
        raises = self.bounds.raises
        if raises is None:
            return reduced2
        pi_v = self.pi[node]
        assert pi_v is not None
        return cost2 + max(pi_v[1], raises[node])

    def step(self) -> bool:
        """Process one extraction. Returns False once the search is over."""

        if self.finished:
            return False
        if not len(self.queue):
            self.finished = True
            return False

        p = self.queue.extract_min()
        v = p.head
        if self.check_invariants:
            self._check_extraction(p)

        if p.reduced[0] >= self.bounds.first():
            log.debug(f"{self.tag}: stop at first reduced cost {p.reduced[0]}")
            self.finished = True
            self.stopped_early = True
            return False

        self.gamma[v] = p.cost[1]
        candidate = self.next_candidate_path_2d(p)
        if candidate is not None:
            self.queue.insert(candidate)

        b2 = self.bounds.second()
        if b2 <= self._prune_key(v, p.cost[1], p.reduced[1]):
            return True

        if not self.visited[v]:
            self.visited[v] = True
            self.bounds.raise_opposite(v, p.cost[0])

        target = self.inst.target
        if self.shortcuts:
            beta = self.beta_v[v]
            pi_v = self.pi[v]
            assert beta is not None and pi_v is not None
            c_st = (p.reduced[0], p.cost[1] + beta[1])
            if b2 > c_st[1]:
                self._add_shortcut(p, c_st)
            if pi_v[0] == beta[0]:
                # Every v-t path is dominated by the tree path already used.
                return True
        elif v == target and b2 > p.cost[1]:
            self._add_shortcut(p, p.cost)

        if v == target:
            return True

        success = False
        for arc_id in self.graph.forward_star[v]:
            if self.propagate2d(p, arc_id):
                success = True
        if success:
            self.permanent[v].append(p)
        return True

    def _add_shortcut(self, p: Label, cost: CostVector) -> None:
        if p.head == self.inst.target:
            label = p
        else:
            label = Label(
                head=self.inst.target, cost=cost, reduced=cost, pred=p, via_tree=True
            )
        before = self.bounds.second()
        add_shortcut(self.frontier, label, self.bounds)
        if self.check_invariants:
            self._check_frontier(before)

    def propagate2d(self, p: Label, arc_id: int) -> bool:
        arc = self.graph.arcs[arc_id]
        w = arc.head
        pi_w = self.pi[w]
        if pi_w is None:
            return False

        c1 = p.cost[0] + arc.cost[0]
        c2 = p.cost[1] + arc.cost[1]
        r2 = c2 + pi_w[1]
        if self.bounds.second() <= self._prune_key(w, c2, r2):
            return False
        if self.static_check:
            beta_w = self.beta_v[w]
            if beta_w is not None and beta_w[1] <= c2:
                return False
        elif self.gamma[w] <= c2:
            return False

        new = Label(head=w, cost=(c1, c2), reduced=(c1 + pi_w[0], r2), pred=p, last_arc=arc_id)
        if not self.queue.contains(w):
            self.queue.insert(new)
        elif new.reduced < self.queue.get_path(w).reduced:
            # The displaced path is regenerated later from its tail's permanent list.
            self.queue.decrease_key(w, new)
        return True

    def next_candidate_path_2d(self, p: Label) -> Optional[Label]:
        """Lex-smallest path to `p.head` that may follow `p` into the queue.

        Each incoming arc's cursor skips permanent tail paths whose
        extension is pruned or dominated by `p`; it stops on the first
        survivor without moving past it.
        """

        v = p.head
        pi_v = self.pi[v]
        assert pi_v is not None
        b2 = self.bounds.second()
        p1, p2 = p.cost
        best: Optional[Label] = None

        for arc_id in self.graph.reverse_star[v]:
            arc = self.graph.arcs[arc_id]
            tail_paths = self.permanent[arc.tail]
            i = self.last_processed[arc_id]
            found: Optional[Label] = None
            while i < len(tail_paths):
                q = tail_paths[i]
                c1 = q.cost[0] + arc.cost[0]
                c2 = q.cost[1] + arc.cost[1]
                if b2 <= self._prune_key(v, c2, c2 + pi_v[1]) or not (c1 > p1 and c2 < p2):
                    i += 1
                    continue
                found = Label(
                    head=v,
                    cost=(c1, c2),
                    reduced=(c1 + pi_v[0], c2 + pi_v[1]),
                    pred=q,
                    last_arc=arc_id,
                )
                break
            self.last_processed[arc_id] = i
            if found is not None and (best is None or found.reduced < best.reduced):
                best = found
        return best

    def run(self, deadline: Deadline) -> List[Label]:
        while self.step():
            if deadline.tick():
                log.info(f"{self.tag} {self.inst.name or 'instance'}: time limit reached")
                break
        return self.frontier

    def _check_extraction(self, p: Label) -> None:
        pi_v = self.pi[p.head]
        assert pi_v is not None
        assert p.reduced == (p.cost[0] + pi_v[0], p.cost[1] + pi_v[1]), "reduced cost drifted"
        if self._strict_order:
            if self.extraction_keys:
                assert self.extraction_keys[-1] <= p.reduced, "extraction keys not lex non-decreasing"
            if not self.static_check:
                assert p.cost[1] < self.gamma[p.head], "second cost did not drop at the node"
        self.extraction_keys.append(p.reduced)
        for arc_id in self.graph.reverse_star[p.head]:
            tail = self.graph.arcs[arc_id].tail
            assert self.last_processed[arc_id] <= len(self.permanent[tail]), "cursor past list end"
        self.queue.check()

    def _check_frontier(self, bound_before: float) -> None:
        costs = [lab.cost for lab in self.frontier]
        for a, b in zip(costs, costs[1:]):
            assert a[0] < b[0] and a[1] > b[1], f"frontier not strictly sorted at {a} / {b}"
        assert self.bounds.second() <= bound_before, "second bound increased"


def make_search(
    inst: Instance,
    pre: PreprocessData,
    opts: SolveOptions,
    bounds: Optional[LocalBounds] = None,
    tag: str = "tbda",
) -> Bda2dSearch:
    qname = queue_name(opts.queue)
    if bounds is None:
        b = pre.beta_t
        bounds = LocalBounds(b[0], b[1]) if b is not None else LocalBounds(math.inf, math.inf)
    size_hint = int(pre.beta_t[0]) + 1 if pre.beta_t is not None else 0
    return Bda2dSearch(
        inst,
        pre,
        get_queue(qname, size_hint),
        bounds,
        shortcuts=opts.shortcuts,
        propagation_check=opts.propagation_check,
        check_invariants=opts.check_invariants,
        label=tag,
    )


def solve2d(
    inst: Instance,
    pre: PreprocessData,
    options: Optional[SolveOptions] = None,
    algo: str = "tbda",
) -> SolutionRecord:
    opts = options or SolveOptions()
    search = make_search(inst, pre, opts, tag=algo)
    deadline = Deadline(opts.time_limit)
    frontier = search.run(deadline)
    return build_record(
        inst,
        algo=algo,
        queue=search.queue.name,
        costs=[lab.cost for lab in frontier],
        inserted=search.queue.inserted,
        extracted=search.queue.extracted,
        time_ms=deadline.elapsed_ms(),
        preprocess_ms=pre.elapsed_ms,
        paths=frontier_paths(frontier, inst, pre) if opts.paths else None,
        timed_out=deadline.expired,
    )


class TbdaSolver(BaseSolver):
    name: str = "tbda"
    dimensions = (2,)

    def solve(
        self,
        inst: Instance,
        pre: PreprocessData,
        options: Optional[SolveOptions] = None,
    ) -> SolutionRecord:
        return solve2d(inst, pre, options, algo=self.name)
