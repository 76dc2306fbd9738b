"""Full-size property suites.

Deselected by default; run with `pytest -m acceptance`.
"""

import io
import logging

import numpy as np
import pytest

from pareto_route.dimacs import parse_dimacs_gr, write_dimacs_gr
from pareto_route.generators import generate_grid, generate_random
from pareto_route.model import dominates, non_dominated, reverse_instance
from pareto_route.oracle import DFS, enumerate_frontier
from pareto_route.preprocessing import preprocess, reduced_arc_costs
from pareto_route.queues import get_queue
from pareto_route.records import SolutionRecord, read_solution, write_solution
from pareto_route.solvers import BtbdaSolver, MdaSolver, SolveOptions, TbdaSolver, TmdaSolver
from pareto_route.solvers.base import Deadline
from pareto_route.solvers.btbda import INTERLEAVED, PARALLEL, solve_bidirectional
from pareto_route.solvers.tbda import make_search
from pareto_route.solvers.tmda import TmdaSearch

pytestmark = pytest.mark.acceptance

log = logging.getLogger("pareto_route.tests")

QUEUES = ("heap", "bucket")


def sized_instance(seed, max_n, min_n=8):
    n = min_n + (seed * 37) % (max_n - min_n + 1)
    return generate_random(n=n, m=3 * n, d=2 + seed % 2, seed=seed, max_cost=10)


@pytest.mark.parametrize("seed", range(500))
def test_heuristic_laws(seed):
    inst = sized_instance(seed, max_n=200, min_n=20)
    pre = preprocess(inst)
    for a in inst.graph.arcs:
        pu, pv = pre.pi[a.tail], pre.pi[a.head]
        if pv is not None:
            assert pu is not None
            assert all(x <= c + y for x, c, y in zip(pu, a.cost, pv))
    for reduced in reduced_arc_costs(inst, pre.pi):
        assert reduced is None or min(reduced) >= 0
    if pre.beta_t is not None:
        for cost in enumerate_frontier(inst):
            assert not dominates(pre.beta_t, cost)


@pytest.mark.parametrize("seed", range(1000))
def test_every_combination_matches_oracle(seed):
    inst = sized_instance(seed, max_n=40)
    pre = preprocess(inst)
    expected = enumerate_frontier(inst)
    runs = []
    for queue in QUEUES:
        runs.append((TmdaSolver(), SolveOptions(queue=queue, check_invariants=True)))
        runs.append((MdaSolver(), SolveOptions(queue=queue)))
        runs.append((MdaSolver(), SolveOptions(queue=queue, keep_bound=False)))
        if inst.dimension == 2:
            for shortcuts in (True, False):
                runs.append(
                    (TbdaSolver(), SolveOptions(queue=queue, shortcuts=shortcuts, check_invariants=True))
                )
            runs.append((BtbdaSolver(), SolveOptions(queue=queue, mode=INTERLEAVED)))
    for solver, opts in runs:
        frontier = solver.solve(inst, pre, opts).frontier
        assert frontier == expected, (solver.name, opts)
        assert len(set(frontier)) == len(frontier)


@pytest.mark.parametrize("seed", range(200))
def test_extraction_order_is_lexicographic(seed):
    inst = sized_instance(seed, max_n=60)
    pre = preprocess(inst)
    search = TmdaSearch(inst, pre, get_queue("heap"), check_invariants=True)
    search.run(Deadline(None))
    assert search.extraction_keys == sorted(search.extraction_keys)
    if inst.dimension == 2:
        bda = make_search(inst, pre, SolveOptions(check_invariants=True))
        bda.run(Deadline(None))
        assert bda.extraction_keys == sorted(bda.extraction_keys)


@pytest.mark.parametrize("seed", range(100))
def test_permanent_paths_are_efficient(seed):
    inst = sized_instance(seed, max_n=30)
    per_node = enumerate_frontier(inst, mode=DFS, per_node=True)
    search = TmdaSearch(inst, preprocess(inst), get_queue("heap"), check_invariants=True)
    search.run(Deadline(None))
    for v, labels in enumerate(search.permanent):
        for lab in labels:
            assert lab.cost in per_node[v], (v, lab.cost)


@pytest.mark.parametrize("seed", range(200))
def test_bidirectional_matches_unidirectional(seed):
    inst = generate_random(n=10 + seed % 31, m=3 * (10 + seed % 31), d=2, seed=seed, max_cost=10)
    pre = preprocess(inst)
    pre_bwd = preprocess(reverse_instance(inst))
    expected = TbdaSolver().solve(inst, pre).frontier
    for mode in (PARALLEL, INTERLEAVED):
        for share in (True, False):
            opts = SolveOptions(mode=mode, share_bounds=share)
            assert solve_bidirectional(inst, pre, pre_bwd, opts).frontier == expected, (mode, share)


def test_heuristic_reduces_insertions_on_large_grids():
    computed, baseline, slowest = [], [], 0.0
    for seed in range(100):
        inst = generate_grid(100, 100, seed=seed)
        pre = preprocess(inst)
        targeted = TmdaSolver().solve(inst, pre)
        plain = MdaSolver().solve(inst, pre)
        assert targeted.frontier == plain.frontier
        computed.append(targeted.inserted)
        baseline.append(plain.inserted)
        slowest = max(slowest, targeted.time_ms, plain.time_ms)
    log.info(f"100x100 grids: slowest solve {slowest:.0f} ms")
    assert np.median(computed) <= np.median(baseline)


@pytest.mark.parametrize("seed", range(1000))
def test_solution_csv_round_trip(seed):
    rng = np.random.default_rng(seed)
    d = int(rng.integers(2, 5))
    raw = [tuple(int(x) for x in row) for row in rng.integers(0, 1000, size=(int(rng.integers(0, 12)), d))]
    frontier = non_dominated(raw)
    target = int(rng.integers(1, 500))
    paths = None
    if frontier and seed % 3 == 0:
        paths = [
            [0, *(int(x) for x in rng.integers(1, 500, size=int(rng.integers(0, 6)))), target]
            for _ in frontier
        ]
    record = SolutionRecord(
        instance=f"fuzz-{seed}",
        source=0,
        target=target,
        algo=("tmda", "mda", "tbda", "btbda")[seed % 4],
        queue=QUEUES[seed % 2],
        frontier=frontier,
        inserted=int(rng.integers(0, 10**7)),
        extracted=int(rng.integers(0, 10**7)),
        time_ms=float(rng.random() * 1000),
        preprocess_ms=float(rng.random() * 10),
        paths=paths,
        timed_out=bool(seed % 5 == 0),
    )
    out = io.StringIO()
    write_solution(record, out)
    assert read_solution(io.StringIO(out.getvalue())) == record


@pytest.mark.parametrize("seed", range(1000))
def test_dimacs_streams_regenerate_graph(seed):
    d = 2 + seed % 3
    inst = generate_random(n=5 + seed % 40, m=4 * (5 + seed % 40), d=d, seed=seed, max_cost=1000)
    streams = []
    for k in range(d):
        out = io.StringIO()
        write_dimacs_gr(inst.graph, k, out)
        streams.append(io.StringIO(out.getvalue()))
    g = parse_dimacs_gr(streams)
    assert sorted((a.tail, a.head, a.cost) for a in g.arcs) == sorted(
        (a.tail, a.head, a.cost) for a in inst.graph.arcs
    )
