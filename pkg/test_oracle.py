"""Reference frontier enumeration."""

import pytest

from conftest import EXAMPLE_FRONTIER
from pareto_route.errors import OracleGuardError
from pareto_route.generators import generate_random
from pareto_route.model import Graph, Instance, non_dominated
from pareto_route.oracle import DFS, LABEL, enumerate_frontier, is_closed


@pytest.mark.parametrize("mode", [DFS, LABEL])
def test_example(example_instance, mode):
    assert enumerate_frontier(example_instance, mode=mode) == EXAMPLE_FRONTIER


@pytest.mark.parametrize("mode", [DFS, LABEL])
def test_trivial_instances(mode):
    single = Instance(graph=Graph.build(2, 2, [(0, 1, (5, 7))]), source=0, target=1)
    assert enumerate_frontier(single, mode=mode) == [(5, 7)]
    apart = Instance(graph=Graph.build(3, 2, [(0, 1, (1, 1))]), source=0, target=2)
    assert enumerate_frontier(apart, mode=mode) == []


def test_per_node_frontiers(example_instance):
    per_node = enumerate_frontier(example_instance, per_node=True)
    assert per_node[0] == [(0, 0)]
    assert per_node[1] == [(1, 1)]
    assert per_node[2] == [(2, 2), (3, 1)]


@pytest.mark.parametrize("seed", range(25))
def test_modes_agree(seed):
    d = 2 + seed % 2
    inst = generate_random(n=12 + seed % 8, m=40, d=d, seed=seed, max_cost=6)
    dfs = enumerate_frontier(inst, mode=DFS)
    label = enumerate_frontier(inst, mode=LABEL)
    assert dfs == label
    assert dfs == non_dominated(dfs)


def test_frontier_is_closed(example_instance):
    all_paths = [(1, 10), (3, 5), (3, 4), (4, 3)]
    assert is_closed(EXAMPLE_FRONTIER, all_paths)
    assert not is_closed([(1, 10)], all_paths)


def test_guards():
    big = generate_random(n=65, m=100, d=2, seed=0)
    with pytest.raises(OracleGuardError):
        enumerate_frontier(big, mode=DFS)
    assert isinstance(enumerate_frontier(big, mode=LABEL), list)
    with pytest.raises(ValueError):
        enumerate_frontier(big, mode="brute")
