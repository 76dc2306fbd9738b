"""Bidirectional biobjective search and its shared bounds."""

import pytest

from conftest import EXAMPLE_FRONTIER, QUEUES
from pareto_route.model import Graph, Instance, reverse_instance
from pareto_route.oracle import enumerate_frontier
from pareto_route.preprocessing import preprocess
from pareto_route.solvers import BtbdaSolver, SolveOptions, TbdaSolver
from pareto_route.solvers.base import Deadline, Label
from pareto_route.solvers.btbda import (
    BACKWARD,
    FORWARD,
    MODES,
    BoundView,
    SharedBounds,
    merge_frontiers,
    raise_heuristic,
    solve_bidirectional,
    tighten_bound,
)
from pareto_route.solvers.tbda import make_search


@pytest.mark.parametrize("queue", QUEUES)
@pytest.mark.parametrize("mode", MODES)
def test_example_frontier(example_instance, queue, mode):
    opts = SolveOptions(queue=queue, mode=mode, check_invariants=True)
    record = BtbdaSolver().solve(example_instance, preprocess(example_instance), opts)
    assert record.frontier == EXAMPLE_FRONTIER
    assert record.algo == "btbda"


def test_example_paths(example_instance):
    record = BtbdaSolver().solve(
        example_instance, preprocess(example_instance), SolveOptions(mode="interleaved", paths=True)
    )
    for nodes in record.paths:
        assert nodes[0] == 0 and nodes[-1] == 3


@pytest.mark.parametrize("seed", range(40))
def test_matches_tbda(random_instance, seed):
    inst = random_instance(seed, n=16, d=2)
    pre = preprocess(inst)
    pre_bwd = preprocess(reverse_instance(inst))
    expected = TbdaSolver().solve(inst, pre).frontier
    for mode in MODES:
        for share in (True, False):
            opts = SolveOptions(mode=mode, share_bounds=share, seed=seed)
            record = solve_bidirectional(inst, pre, pre_bwd, opts)
            assert record.frontier == expected, (mode, share)
    no_raises = SolveOptions(mode="interleaved", share_heuristics=False, shortcuts=False)
    assert solve_bidirectional(inst, pre, pre_bwd, no_raises).frontier == expected


def test_stats_add_up_both_searches(example_instance):
    pre = preprocess(example_instance)
    record = solve_bidirectional(example_instance, pre, options=SolveOptions(mode="interleaved"))
    assert record.inserted >= 2
    assert record.extracted >= 2
    assert record.preprocess_ms >= pre.elapsed_ms


def test_shared_bounds_are_monotone():
    shared = SharedBounds(10, 20, node_count=3)
    tighten_bound(shared, "beta1", 7)
    tighten_bound(shared, "beta1", 9)
    assert shared.beta1 == 7
    raise_heuristic(shared, FORWARD, 1, 4)
    raise_heuristic(shared, FORWARD, 1, 2)
    assert shared.fwd_pi2 == [0, 4, 0]
    with pytest.raises(ValueError):
        tighten_bound(shared, "beta3", 1)


def test_bound_views_mirror_each_other():
    shared = SharedBounds(10, 20, node_count=2)
    fwd = BoundView(shared, FORWARD)
    bwd = BoundView(shared, BACKWARD)
    assert (fwd.first(), fwd.second()) == (10, 20)
    assert (bwd.first(), bwd.second()) == (20, 10)

    fwd.tighten_second(15)
    assert bwd.first() == 15
    bwd.tighten_second(8)
    assert fwd.first() == 8

    fwd.raise_opposite(1, 6)
    assert bwd.raises[1] == 6
    assert fwd.raises is shared.fwd_pi2


def test_private_bounds_do_not_leak():
    shared = SharedBounds(10, 20, node_count=2)
    fwd = BoundView(shared, FORWARD, share_bounds=False, share_heuristics=False)
    fwd.tighten_second(5)
    assert fwd.second() == 5
    assert shared.beta2 == 20
    assert fwd.raises is None
    fwd.raise_opposite(0, 9)
    assert shared.bwd_pi1 == [0, 0]


def test_merge_prefers_forward_and_drops_dominated():
    fwd = [Label(3, (1, 10), (1, 10)), Label(3, (3, 5), (3, 5))]
    # backward costs are stored with components swapped
    bwd = [Label(0, (4, 3), (4, 3)), Label(0, (3, 4), (3, 4)), Label(0, (10, 1), (10, 1))]
    merged = merge_frontiers(fwd, bwd)
    assert [(cost, from_fwd) for cost, _, from_fwd in merged] == [
        ((1, 10), True),
        ((3, 4), False),
        ((4, 3), False),
    ]


def delayed_visit_instance():
    # s=0, a=1, v=2, b=3, t=4. The shortcut s-b-t (3,5) found at s prunes
    # the direct arc s-v, so v is first reached through a with c1 = 3.
    arcs = [
        (0, 3, (1, 1)),
        (3, 4, (2, 4)),
        (0, 2, (2, 9)),
        (2, 4, (1, 1)),
        (0, 1, (1, 1)),
        (1, 2, (2, 1)),
        (1, 4, (2, 20)),
    ]
    return Instance(graph=Graph.build(5, 2, arcs), source=0, target=4, name="delayed")


def test_raise_after_shortcut_delayed_visit():
    inst = delayed_visit_instance()
    pre = preprocess(inst)
    pre_bwd = preprocess(reverse_instance(inst))
    assert pre.beta_t == (5, 6)
    # Backward second heuristic component at v is the forward lex distance s-v.
    assert pre_bwd.pi[2][1] == 2

    shared = SharedBounds(*pre.beta_t, node_count=inst.node_count)
    view = BoundView(shared, FORWARD)
    search = make_search(inst, pre, SolveOptions(check_invariants=True), bounds=view)
    assert search.step()
    assert [lab.cost for lab in search.frontier] == [(3, 5)]
    assert shared.beta2 == 5
    assert not search.queue.contains(2)
    while not search.visited[2]:
        assert search.step()
    assert shared.bwd_pi1[2] == 3
    assert [lab.cost for lab in search.frontier] == [(3, 5), (4, 3)]

    raise_heuristic(shared, BACKWARD, 2, 2)
    assert shared.bwd_pi1[2] == 3
    search.run(Deadline(None))
    assert not search.visited[3]
    assert shared.bwd_pi1[3] == 0

    expected = enumerate_frontier(inst)
    assert expected == [(3, 5), (4, 3)]
    for mode in MODES:
        opts = SolveOptions(mode=mode, check_invariants=True)
        assert solve_bidirectional(inst, pre, pre_bwd, opts).frontier == expected, mode
