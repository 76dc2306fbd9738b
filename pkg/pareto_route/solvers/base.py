"""Base solver interface, labels and run options for pareto-route.

A solver takes an instance plus its preprocessing data and returns a
`SolutionRecord` holding the minimal complete set of efficient s-t paths
(one representative per non-dominated cost vector) and run statistics.
"""

from __future__ import annotations

import logging
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional, Sequence

from ..errors import PathCorruptionError
from ..model import CostVector, Instance, add_costs, zero
from ..preprocessing import LexTree, PreprocessData
from ..records import SolutionRecord

log = logging.getLogger("pareto_route.solvers")

# How many extractions between two deadline checks.
_DEADLINE_STRIDE = 256


class Label:
    """One explored path, encoded by its last arc and a predecessor label.

    `reduced` is `cost + pi(head)`. A label with `via_tree` set is a
    shortcut to the target: `pred` is the explored path it extends and the
    rest of the path follows the shortcut tree from `pred.head`.
    """

    __slots__ = ("head", "cost", "reduced", "pred", "last_arc", "via_tree")

    def __init__(
        self,
        head: int,
        cost: CostVector,
        reduced: CostVector,
        pred: Optional["Label"] = None,
        last_arc: Optional[int] = None,
        via_tree: bool = False,
    ) -> None:
        self.head = head
        self.cost = cost
        self.reduced = reduced
        self.pred = pred
        self.last_arc = last_arc
        self.via_tree = via_tree

    def __repr__(self) -> str:
        return f"Label(head={self.head}, cost={self.cost}, reduced={self.reduced})"


def root_label(source: int, d: int, pi_source: CostVector) -> Label:
    return Label(head=source, cost=zero(d), reduced=pi_source)


@dataclass
class SolveOptions:
    """Knobs shared by every solver; solvers ignore the ones that do not apply."""

    queue: str = "heap"
    time_limit: Optional[float] = None
    check_invariants: bool = False
    paths: bool = False
    # tbda / btbda
    shortcuts: bool = True
    propagation_check: str = "gamma"  # "static" is for comparison only; not exact
    # btbda
    mode: str = "parallel"
    share_bounds: bool = True
    share_heuristics: bool = True
    seed: int = 0
    # mda
    keep_bound: bool = True


class Deadline:
    def __init__(self, time_limit: Optional[float]) -> None:
        self.started = time.perf_counter()
        self.until = self.started + time_limit if time_limit is not None else None
        self._ticks = 0
        self.expired = False

    def tick(self) -> bool:
        """True once the time limit has passed. Checks the clock every few hundred calls."""
        if self.until is None:
            return False
        self._ticks += 1
        if self._ticks % _DEADLINE_STRIDE == 0 and time.perf_counter() > self.until:
            self.expired = True
        return self.expired

    def elapsed_ms(self) -> float:
        return (time.perf_counter() - self.started) * 1000.0


def label_chain(label: Label, limit: int) -> List[Label]:
    """Labels from the root to `label`, following `pred`."""
    chain = []
    cur: Optional[Label] = label
    while cur is not None:
        chain.append(cur)
        if len(chain) > limit:
            raise PathCorruptionError(f"predecessor chain of {label!r} exceeds {limit} steps")
        cur = cur.pred
    chain.reverse()
    return chain


def reconstruct_path(label: Label, inst: Instance, tree: Optional[LexTree] = None) -> List[int]:
    """s-to-head node sequence of a finished label, re-checking its cost.

    Raises:
        PathCorruptionError: the chain is too long, an arc does not connect,
            or the arc costs do not add up to `label.cost`.
    """

    g = inst.graph
    base = label.pred if label.via_tree else label
    if base is None:
        raise PathCorruptionError(f"shortcut label {label!r} has no predecessor")

    chain = label_chain(base, g.node_count + g.arc_count + 1)
    nodes = [chain[0].head]
    total = zero(g.dimension)
    for prev, cur in zip(chain, chain[1:]):
        if cur.last_arc is None:
            raise PathCorruptionError(f"label {cur!r} has a predecessor but no arc")
        arc = g.arcs[cur.last_arc]
        if arc.tail != prev.head or arc.head != cur.head:
            raise PathCorruptionError(f"arc {arc.id} does not join {prev.head} -> {cur.head}")
        total = add_costs(total, arc.cost)
        nodes.append(cur.head)

    if label.via_tree:
        if tree is None:
            raise PathCorruptionError("shortcut label needs the shortcut tree to be expanded")
        v = base.head
        steps = 0
        while v != tree.root:
            arc_id = tree.parent_arc[v]
            steps += 1
            if arc_id is None or steps > g.node_count:
                raise PathCorruptionError(f"shortcut tree has no path from {v} to {tree.root}")
            arc = g.arcs[arc_id]
            total = add_costs(total, arc.cost)
            v = arc.head
            nodes.append(v)

    if total != label.cost:
        raise PathCorruptionError(f"path {nodes} costs {total}, label says {label.cost}")
    return nodes


def frontier_paths(
    labels: Sequence[Label], inst: Instance, pre: Optional[PreprocessData]
) -> List[List[int]]:
    tree = pre.shortcut if pre is not None else None
    return [reconstruct_path(lab, inst, tree) for lab in labels]


def build_record(
    inst: Instance,
    algo: str,
    queue: str,
    costs: Sequence[CostVector],
    inserted: int,
    extracted: int,
    time_ms: float,
    preprocess_ms: float = 0.0,
    paths: Optional[List[List[int]]] = None,
    timed_out: bool = False,
) -> SolutionRecord:
    record = SolutionRecord(
        instance=inst.name,
        source=inst.source,
        target=inst.target,
        algo=algo,
        queue=queue,
        frontier=list(costs),
        inserted=inserted,
        extracted=extracted,
        time_ms=time_ms,
        preprocess_ms=preprocess_ms,
        paths=paths,
        timed_out=timed_out,
    )
    log.info(
        f"{algo}/{queue} {inst.name or 'instance'} s={inst.source} t={inst.target}: "
        f"N_t={record.n_t} inserted={inserted} extracted={extracted} "
        f"time={time_ms:.1f}ms{' (timed out)' if timed_out else ''}"
    )
    return record


class BaseSolver(ABC):
    """Abstract base class for solvers.

    Solvers are stateless: every `solve` call builds its own search state,
    so one solver object may serve concurrent runs over the same immutable
    instance and preprocessing data.
    """

    name: str = "base"
    dimensions: Optional[Sequence[int]] = None

    @abstractmethod
    def solve(
        self,
        inst: Instance,
        pre: PreprocessData,
        options: Optional[SolveOptions] = None,
    ) -> SolutionRecord:
        """Compute the minimal complete set of efficient s-t paths.

        Args:
            inst: Instance to solve.
            pre: Preprocessing data computed for `inst`.
            options: Queue, time limit, and solver-specific switches.

        Returns:
            SolutionRecord with the lex-sorted frontier and statistics.
        """
        raise NotImplementedError

    def supports(self, d: int) -> bool:
        return self.dimensions is None or d in self.dimensions
