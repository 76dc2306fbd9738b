"""Targeted multiobjective Dijkstra (any dimension) and its zero-heuristic baseline."""

import numpy as np
import pytest

from conftest import EXAMPLE_FRONTIER, QUEUES
from pareto_route.generators import generate_grid
from pareto_route.model import Graph, Instance, add_costs, zero
from pareto_route.oracle import DFS, enumerate_frontier
from pareto_route.preprocessing import preprocess
from pareto_route.queues import get_queue
from pareto_route.solvers import MdaSolver, SolveOptions, TmdaSolver
from pareto_route.solvers.base import Deadline
from pareto_route.solvers.tmda import TmdaSearch


@pytest.mark.parametrize("queue", QUEUES)
def test_example_frontier(example_instance, queue):
    pre = preprocess(example_instance)
    record = TmdaSolver().solve(example_instance, pre, SolveOptions(queue=queue, check_invariants=True))
    assert record.frontier == EXAMPLE_FRONTIER
    assert record.queue == queue
    assert record.preprocess_ms == pre.elapsed_ms
    record.check_frontier()


@pytest.mark.parametrize("keep_bound", [True, False])
def test_mda_example(example_instance, keep_bound):
    pre = preprocess(example_instance)
    record = MdaSolver().solve(example_instance, pre, SolveOptions(keep_bound=keep_bound))
    assert record.frontier == EXAMPLE_FRONTIER
    assert record.algo == "mda"


@pytest.mark.parametrize("seed", range(30))
@pytest.mark.parametrize("d", [2, 3])
def test_matches_oracle(random_instance, seed, d):
    inst = random_instance(seed, n=14, d=d)
    pre = preprocess(inst)
    expected = enumerate_frontier(inst)
    for queue in QUEUES:
        for solver in (TmdaSolver(), MdaSolver()):
            record = solver.solve(inst, pre, SolveOptions(queue=queue, check_invariants=True))
            assert record.frontier == expected, (solver.name, queue)


@pytest.mark.parametrize("seed", range(15))
def test_permanent_paths_are_efficient(random_instance, seed):
    inst = random_instance(seed, n=11, d=2 + seed % 2)
    pre = preprocess(inst)
    per_node = enumerate_frontier(inst, mode=DFS, per_node=True)
    search = TmdaSearch(inst, pre, get_queue("heap"), check_invariants=True)
    search.run(Deadline(None))
    for v, labels in enumerate(search.permanent):
        for lab in labels:
            assert lab.cost in per_node[v], (v, lab.cost)


def test_extraction_keys_non_decreasing(random_instance):
    inst = random_instance(7, n=30, d=3)
    search = TmdaSearch(inst, preprocess(inst), get_queue("heap"), check_invariants=True)
    search.run(Deadline(None))
    keys = search.extraction_keys
    assert keys == sorted(keys)


def test_paths_reconstruct(random_instance):
    inst = random_instance(2, n=20, d=2)
    record = TmdaSolver().solve(inst, preprocess(inst), SolveOptions(paths=True))
    assert record.paths is not None and len(record.paths) == record.n_t
    arc_costs = {}
    for a in inst.graph.arcs:
        arc_costs.setdefault((a.tail, a.head), []).append(a.cost)
    for nodes, cost in zip(record.paths, record.frontier):
        assert nodes[0] == inst.source and nodes[-1] == inst.target
        assert len(set(nodes)) == len(nodes)
        # some choice of parallel arcs adds up to the frontier vector
        totals = {zero(2)}
        for u, v in zip(nodes, nodes[1:]):
            totals = {add_costs(t, c) for t in totals for c in arc_costs[(u, v)]}
        assert cost in totals


def test_infeasible_gives_empty_frontier():
    g = Graph.build(3, 2, [(0, 1, (1, 1)), (2, 1, (1, 1))])
    inst = Instance(graph=g, source=0, target=2)
    record = TmdaSolver().solve(inst, preprocess(inst))
    assert record.frontier == []
    assert record.inserted == 0


def test_time_limit_marks_record():
    inst = generate_grid(30, 30, seed=1)
    record = TmdaSolver().solve(inst, preprocess(inst), SolveOptions(time_limit=0.0))
    assert record.timed_out


def test_heuristic_reduces_insertions():
    computed, baseline = [], []
    for seed in range(8):
        inst = generate_grid(8, 8, seed=seed)
        pre = preprocess(inst)
        computed.append(TmdaSolver().solve(inst, pre).inserted)
        baseline.append(MdaSolver().solve(inst, pre).inserted)
    assert np.median(computed) <= np.median(baseline)
