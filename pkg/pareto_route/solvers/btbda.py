"""Bidirectional targeted biobjective Dijkstra.

A forward search on the instance and a backward search on the reversed
instance (arcs flipped, cost components swapped) run side by side. The
forward search tightens the bound on the second objective, the backward
search the bound on the first, and each stops as soon as its extracted
first reduced cost reaches the bound the other one keeps tightening.
Each search also raises the other's heuristic at nodes it settles first.

Shared values only ever move in one direction (bounds down, heuristic
values up), so a stale read is always a weaker but still valid bound.
"""

from __future__ import annotations

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np

from ..errors import UnsupportedDimensionError
from ..model import CostVector, Instance, reverse_instance
from ..preprocessing import PreprocessData, preprocess
from ..queues import queue_name
from ..records import SolutionRecord
from .base import BaseSolver, Deadline, Label, SolveOptions, build_record, frontier_paths
from .tbda import Bda2dSearch, LocalBounds, make_search

log = logging.getLogger("pareto_route.solvers.btbda")

FORWARD = "forward"
BACKWARD = "backward"

PARALLEL = "parallel"
INTERLEAVED = "interleaved"
RANDOM = "random"
MODES = (PARALLEL, INTERLEAVED, RANDOM)


class SharedBounds:
    """Bounds and heuristic raises shared by the two directions, in forward coordinates.

    `beta1` is tightened by the backward search and read by the forward
    stop check; `beta2` the other way round. `fwd_pi2[v]` raises the
    forward search's second heuristic component (written by the backward
    search) and `bwd_pi1[v]` the backward search's, expressed as a
    forward first cost.
    """

    def __init__(self, beta1: float, beta2: float, node_count: int) -> None:
        self.beta1 = beta1
        self.beta2 = beta2
        self.fwd_pi2: List[int] = [0] * node_count
        self.bwd_pi1: List[int] = [0] * node_count
        self._lock = threading.Lock()

    def tighten(self, which: str, value: float) -> None:
        if which not in ("beta1", "beta2"):
            raise ValueError(f"unknown bound {which!r}")
        with self._lock:
            if value < getattr(self, which):
                setattr(self, which, value)
                log.debug(f"{which} tightened to {value}")

    def raise_heuristic(self, side: str, node: int, value: int) -> None:
        values = self.fwd_pi2 if side == FORWARD else self.bwd_pi1
        with self._lock:
            if value > values[node]:
                values[node] = value


def tighten_bound(handle: SharedBounds, which: str, value: float) -> None:
    handle.tighten(which, value)


def raise_heuristic(handle: SharedBounds, side: str, node: int, value: int) -> None:
    handle.raise_heuristic(side, node, value)


class BoundView(LocalBounds):
    """One direction's view of the shared state, in that direction's own coordinates.

    With `share_bounds` off the view keeps private copies of both bounds,
    so the stop condition only ever sees this direction's own values.
    """

    def __init__(
        self,
        shared: SharedBounds,
        side: str,
        share_bounds: bool = True,
        share_heuristics: bool = True,
    ) -> None:
        forward = side == FORWARD
        self.shared = shared
        self.side = side
        self._mine = "beta2" if forward else "beta1"
        self._theirs = "beta1" if forward else "beta2"
        self._opposite = BACKWARD if forward else FORWARD
        self.share_bounds = share_bounds
        self.share_heuristics = share_heuristics
        self.raises = (shared.fwd_pi2 if forward else shared.bwd_pi1) if share_heuristics else None
        super().__init__(getattr(shared, self._theirs), getattr(shared, self._mine))

    def first(self) -> float:
        return getattr(self.shared, self._theirs) if self.share_bounds else self._first

    def second(self) -> float:
        return getattr(self.shared, self._mine) if self.share_bounds else self._second

    def tighten_second(self, value: int) -> None:
        if self.share_bounds:
            self.shared.tighten(self._mine, value)
        else:
            super().tighten_second(value)

    def raise_opposite(self, node: int, value: int) -> None:
        if self.share_heuristics:
            self.shared.raise_heuristic(self._opposite, node, value)


def _swap(cost: CostVector) -> CostVector:
    return (cost[1], cost[0])


def merge_frontiers(
    forward: List[Label], backward: List[Label]
) -> List[Tuple[CostVector, Label, bool]]:
    """Non-dominated union in forward coordinates; equal vectors keep the forward path.

    Returns (cost, label, from_forward) triples, lex-sorted.
    """

    tagged = [(lab.cost, 0, i, lab) for i, lab in enumerate(forward)]
    tagged += [(_swap(lab.cost), 1, i, lab) for i, lab in enumerate(backward)]
    tagged.sort(key=lambda x: (x[0], x[1], x[2]))

    merged: List[Tuple[CostVector, Label, bool]] = []
    for cost, side, _, lab in tagged:
        # Sorted input: only the last kept vector can dominate this one.
        if merged and merged[-1][0][1] <= cost[1]:
            continue
        merged.append((cost, lab, side == 0))
    return merged


def _run_parallel(fwd: Bda2dSearch, bwd: Bda2dSearch, time_limit: Optional[float]) -> bool:
    deadlines = [Deadline(time_limit), Deadline(time_limit)]
    with ThreadPoolExecutor(max_workers=2, thread_name_prefix="btbda") as pool:
        futures = [pool.submit(s.run, d) for s, d in zip((fwd, bwd), deadlines)]
        for f in futures:
            f.result()
    return any(d.expired for d in deadlines)


def _run_interleaved(
    fwd: Bda2dSearch, bwd: Bda2dSearch, time_limit: Optional[float], seed: Optional[int] = None
) -> bool:
    """Single-threaded schedule: strict round robin, or a seeded random choice per step."""

    deadline = Deadline(time_limit)
    rng = np.random.default_rng(seed) if seed is not None else None
    searches = [fwd, bwd]
    alive = [True, True]
    turn = 0
    while any(alive):
        if deadline.tick():
            return True
        if rng is not None:
            turn = int(rng.integers(0, 2))
            if not alive[turn]:
                turn = 1 - turn
        elif not alive[turn]:
            turn = 1 - turn
        alive[turn] = searches[turn].step()
        if rng is None:
            turn = 1 - turn
    return False


def solve_bidirectional(
    inst: Instance,
    pre_fwd: PreprocessData,
    pre_bwd: Optional[PreprocessData] = None,
    options: Optional[SolveOptions] = None,
    algo: str = "btbda",
) -> SolutionRecord:
    """Run the forward and backward searches and merge their frontiers.

    Args:
        inst: Biobjective instance.
        pre_fwd: Preprocessing of `inst`.
        pre_bwd: Preprocessing of `reverse_instance(inst)`; computed when omitted.
        options: `mode` picks "parallel" (two threads), "interleaved"
            (round robin in the calling thread) or "random" (seeded random
            schedule in the calling thread).

    Returns:
        SolutionRecord whose statistics add up both searches.
    """

    if inst.dimension != 2:
        raise UnsupportedDimensionError(f"btbda needs d = 2, got d = {inst.dimension}")
    opts = options or SolveOptions()
    if opts.mode not in MODES:
        raise ValueError(f"unknown bidirectional mode {opts.mode!r}")

    rev = reverse_instance(inst)
    if pre_bwd is None:
        pre_bwd = preprocess(rev)
    preprocess_ms = pre_fwd.elapsed_ms + pre_bwd.elapsed_ms
    qname = queue_name(opts.queue)

    if not (pre_fwd.feasible and pre_bwd.feasible):
        return build_record(
            inst, algo, qname, [], 0, 0, 0.0, preprocess_ms=preprocess_ms
        )

    assert pre_fwd.beta_t is not None and pre_bwd.beta_t is not None
    beta1 = min(pre_fwd.beta_t[0], pre_bwd.beta_t[1])
    beta2 = min(pre_fwd.beta_t[1], pre_bwd.beta_t[0])
    shared = SharedBounds(beta1, beta2, inst.node_count)
    fwd_view = BoundView(shared, FORWARD, opts.share_bounds, opts.share_heuristics)
    bwd_view = BoundView(shared, BACKWARD, opts.share_bounds, opts.share_heuristics)

    fwd = make_search(inst, pre_fwd, opts, bounds=fwd_view, tag=f"{algo}-forward")
    bwd = make_search(rev, pre_bwd, opts, bounds=bwd_view, tag=f"{algo}-backward")

    clock = Deadline(None)
    if opts.mode == PARALLEL:
        timed_out = _run_parallel(fwd, bwd, opts.time_limit)
    elif opts.mode == INTERLEAVED:
        timed_out = _run_interleaved(fwd, bwd, opts.time_limit)
    else:
        timed_out = _run_interleaved(fwd, bwd, opts.time_limit, seed=opts.seed)
    time_ms = clock.elapsed_ms()

    log.debug(
        f"{algo}: forward found {len(fwd.frontier)} (stopped early: {fwd.stopped_early}), "
        f"backward found {len(bwd.frontier)} (stopped early: {bwd.stopped_early})"
    )

    merged = merge_frontiers(fwd.frontier, bwd.frontier)
    paths: Optional[List[List[int]]] = None
    if opts.paths:
        paths = []
        for _, lab, from_forward in merged:
            if from_forward:
                paths.append(frontier_paths([lab], inst, pre_fwd)[0])
            else:
                paths.append(list(reversed(frontier_paths([lab], rev, pre_bwd)[0])))

    return build_record(
        inst,
        algo=algo,
        queue=qname,
        costs=[cost for cost, _, _ in merged],
        inserted=fwd.queue.inserted + bwd.queue.inserted,
        extracted=fwd.queue.extracted + bwd.queue.extracted,
        time_ms=time_ms,
        preprocess_ms=preprocess_ms,
        paths=paths,
        timed_out=timed_out,
    )


class BtbdaSolver(BaseSolver):
    """Bidirectional solver; preprocesses the reversed instance itself unless given."""

    name: str = "btbda"
    dimensions = (2,)

    def __init__(self, pre_bwd: Optional[PreprocessData] = None) -> None:
        self.pre_bwd = pre_bwd

    def solve(
        self,
        inst: Instance,
        pre: PreprocessData,
        options: Optional[SolveOptions] = None,
    ) -> SolutionRecord:
        return solve_bidirectional(inst, pre, self.pre_bwd, options, algo=self.name)


__all__ = [
    "BoundView",
    "BtbdaSolver",
    "SharedBounds",
    "merge_frontiers",
    "raise_heuristic",
    "solve_bidirectional",
    "tighten_bound",
]

