"""Targeted multiobjective Dijkstra for any dimension.

The priority queue holds at most one explored path per node (its queue
path). Explored paths that lose the queue slot wait in a per-arc list,
sorted lexicographically, until the node's current queue path is
extracted and the next one is needed. Pruning uses the target's
permanent paths and the global dominance bound, both compared against
reduced costs.
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Deque, List, Optional

from ..errors import UnsupportedDimensionError
from ..model import CostVector, Instance, dominates_or_equal, set_dominates
from ..preprocessing import PreprocessData, zero_heuristic
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

log = logging.getLogger("pareto_route.solvers.tmda")


class TmdaSearch:
    """State of one run: queue, per-arc waiting lists and per-node permanent lists."""

    def __init__(
        self,
        inst: Instance,
        pre: PreprocessData,
        queue: BaseQueue,
        check_invariants: bool = False,
    ) -> None:
        g = inst.graph
        self.inst = inst
        self.graph = g
        self.pi = pre.pi
        self.bound: Optional[CostVector] = pre.beta_t
        self.queue = queue
        self.nqp: List[Deque[Label]] = [deque() for _ in range(g.arc_count)]
        self.permanent: List[List[Label]] = [[] for _ in range(g.node_count)]
        self.permanent_costs: List[List[CostVector]] = [[] for _ in range(g.node_count)]
        self.check_invariants = check_invariants
        self.extraction_keys: List[CostVector] = []
        self._strict_order = check_invariants and queue.name == "heap"

    # Pruning shared by propagate and next_queue_path.
    def _pruned_at_target(self, reduced: CostVector) -> bool:
        if set_dominates(self.permanent_costs[self.inst.target], reduced):
            return True
        return self.bound is not None and dominates_or_equal(self.bound, reduced)

    def propagate(self, p: Label, arc_id: int) -> None:
        arc = self.graph.arcs[arc_id]
        w = arc.head
        pi_w = self.pi[w]
        if pi_w is None:
            return

        cost = tuple(a + b for a, b in zip(p.cost, arc.cost))
        reduced = tuple(a + b for a, b in zip(cost, pi_w))
        if self._pruned_at_target(reduced):
            return
        if set_dominates(self.permanent_costs[w], cost):
            return

        new = Label(head=w, cost=cost, reduced=reduced, pred=p, last_arc=arc_id)
        if not self.queue.contains(w):
            self.queue.insert(new)
            return

        current = self.queue.get_path(w)
        if reduced < current.reduced:
            displaced = self.queue.decrease_key(w, new)
            # The displaced path is lex-smaller than everything waiting behind it.
            self.nqp[displaced.last_arc].appendleft(displaced)
            self._check_nqp(displaced.last_arc)
        else:
            self.nqp[arc_id].append(new)
            self._check_nqp(arc_id)

    def next_queue_path(self, extracted: Label) -> Optional[Label]:
        """Lex-smallest waiting path for `extracted.head` that is still worth queueing.

        Heads of the waiting lists that are pruned at the target or
        dominated by a permanent path at the node are dropped for good.
        """

        v = extracted.head
        best: Optional[Label] = None
        best_list: Optional[Deque[Label]] = None
        for arc_id in self.graph.reverse_star[v]:
            waiting = self.nqp[arc_id]
            while waiting:
                head = waiting[0]
                if self._pruned_at_target(head.reduced) or set_dominates(
                    self.permanent_costs[v], head.cost
                ):
                    waiting.popleft()
                    continue
                if best is None or head.reduced < best.reduced:
                    best, best_list = head, waiting
                break

        if best is not None and best_list is not None:
            best_list.popleft()
        return best

    def run(self, deadline: Deadline) -> List[Label]:
        inst = self.inst
        pi_s = self.pi[inst.source]
        if pi_s is None:
            return []

        self.queue.insert(root_label(inst.source, inst.dimension, pi_s))
        target = inst.target

        while len(self.queue):
            if deadline.tick():
                log.info(f"{inst.name or 'instance'}: time limit reached")
                break

            p = self.queue.extract_min()
            v = p.head
            if self.check_invariants:
                self._check_extraction(p)

            self.permanent[v].append(p)
            self.permanent_costs[v].append(p.cost)

            replacement = self.next_queue_path(p)
            if replacement is not None:
                self.queue.insert(replacement)

            if v == target:
                log.debug(f"frontier add {p.cost}")
                continue
            for arc_id in self.graph.forward_star[v]:
                self.propagate(p, arc_id)

        return self.permanent[target]

    def _check_nqp(self, arc_id: int) -> None:
        if not self._strict_order:
            return
        waiting = self.nqp[arc_id]
        for a, b in zip(waiting, list(waiting)[1:]):
            assert a.reduced <= b.reduced, f"waiting list of arc {arc_id} out of order"

    def _check_extraction(self, p: Label) -> None:
        pi_v = self.pi[p.head]
        assert pi_v is not None
        assert p.reduced == tuple(a + b for a, b in zip(p.cost, pi_v)), "reduced cost drifted"
        if self._strict_order and self.extraction_keys:
            assert self.extraction_keys[-1] <= p.reduced, "extraction keys not lex non-decreasing"
        self.extraction_keys.append(p.reduced)
        if p.last_arc is not None:
            assert all(q is not p for q in self.nqp[p.last_arc]), "label both queued and waiting"
        perm = self.permanent_costs[p.head]
        if perm:
            assert perm[-1] < p.cost, "permanent list not lex-increasing"
        self.queue.check()


def solve_tmda(
    inst: Instance,
    pre: PreprocessData,
    options: Optional[SolveOptions] = None,
    algo: str = "tmda",
) -> SolutionRecord:
    opts = options or SolveOptions()
    qname = queue_name(opts.queue)
    bound0 = pre.beta_t[0] if pre.beta_t is not None else 0
    search = TmdaSearch(inst, pre, get_queue(qname, bound0 + 1), opts.check_invariants)
    deadline = Deadline(opts.time_limit)
    frontier = search.run(deadline) if pre.feasible else []
    return build_record(
        inst,
        algo=algo,
        queue=qname,
        costs=[lab.cost for lab in frontier],
        inserted=search.queue.inserted,
        extracted=search.queue.extracted,
        time_ms=deadline.elapsed_ms(),
        preprocess_ms=pre.elapsed_ms,
        paths=frontier_paths(frontier, inst, pre) if opts.paths else None,
        timed_out=deadline.expired,
    )


class TmdaSolver(BaseSolver):
    name: str = "tmda"

    def solve(
        self,
        inst: Instance,
        pre: PreprocessData,
        options: Optional[SolveOptions] = None,
    ) -> SolutionRecord:
        return solve_tmda(inst, pre, options, algo=self.name)


class MdaSolver(BaseSolver):
    """The same search with a zero heuristic: plain multiobjective Dijkstra with target pruning.

    With `keep_bound` the computed dominance bound still prunes.
    """

    name: str = "mda"

    def solve(
        self,
        inst: Instance,
        pre: PreprocessData,
        options: Optional[SolveOptions] = None,
    ) -> SolutionRecord:
        opts = options or SolveOptions()
        if inst.dimension < 2:
            raise UnsupportedDimensionError(f"mda needs d >= 2, got {inst.dimension}")
        zero = zero_heuristic(inst, pre.beta_t if opts.keep_bound else None)
        zero.elapsed_ms = pre.elapsed_ms
        return solve_tmda(inst, zero, opts, algo=self.name)
