"""Heap and bucket priority queues."""

import logging
import os

import numpy as np
import pytest

from pareto_route.errors import QueueContractError
from pareto_route.queues import (
    BucketQueue,
    HeapQueue,
    available_queues,
    get_queue,
    queue_from_env,
    queue_name,
)
from pareto_route.solvers.base import Label


def lab(node, key):
    return Label(head=node, cost=key, reduced=key)


@pytest.fixture(params=["heap", "bucket"])
def queue(request):
    return get_queue(request.param, 4)


def test_extracts_in_lex_order(queue):
    queue.insert(lab(1, (3, 3)))
    queue.insert(lab(2, (3, 4)))
    queue.insert(lab(3, (1, 9)))
    queue.insert(lab(0, (3, 3)))
    out = [queue.extract_min() for _ in range(4)]
    assert [(x.head, x.reduced) for x in out] == [(3, (1, 9)), (0, (3, 3)), (1, (3, 3)), (2, (3, 4))]
    assert queue.inserted == 4
    assert queue.extracted == 4
    assert len(queue) == 0


def test_decrease_key_returns_displaced(queue):
    first = lab(5, (4, 4))
    queue.insert(first)
    queue.insert(lab(6, (2, 8)))
    displaced = queue.decrease_key(5, lab(5, (2, 2)))
    assert displaced is first
    assert queue.get_path(5).reduced == (2, 2)
    assert queue.inserted == 3
    assert len(queue) == 2
    assert queue.extract_min().head == 5
    assert queue.extract_min().head == 6
    assert not queue.contains(5)


def test_contract_violations(queue):
    with pytest.raises(QueueContractError):
        queue.extract_min()
    queue.insert(lab(1, (2, 2)))
    with pytest.raises(QueueContractError):
        queue.insert(lab(1, (3, 3)))
    with pytest.raises(QueueContractError):
        queue.decrease_key(1, lab(1, (2, 3)))
    with pytest.raises(QueueContractError):
        queue.decrease_key(7, lab(7, (0, 0)))
    with pytest.raises(QueueContractError):
        queue.get_path(7)


def test_bucket_rejects_keys_below_pointer():
    q = BucketQueue(2)
    q.insert(lab(1, (5, 0)))
    q.extract_min()
    assert q.cursor == 5
    with pytest.raises(QueueContractError):
        q.insert(lab(2, (4, 9)))


def test_bucket_is_not_fifo_within_a_bucket():
    q = BucketQueue(4)
    q.insert(lab(1, (2, 7)))
    q.insert(lab(2, (2, 5)))
    q.insert(lab(3, (2, 6)))
    # Same first component: extracted by the second, not by insertion order.
    assert [q.extract_min().head for _ in range(3)] == [2, 3, 1]


@pytest.mark.parametrize("seed", range(10))
def test_heap_and_bucket_agree_on_monotone_sequences(seed):
    rng = np.random.default_rng(seed)
    heap, bucket = HeapQueue(), BucketQueue(1)
    floor = (0, 0)
    pointers = []
    for _ in range(300):
        op = rng.integers(0, 3)
        node = int(rng.integers(0, 25))
        key = (floor[0] + int(rng.integers(0, 6)), int(rng.integers(0, 20)))
        if op == 0 and not heap.contains(node):
            heap.insert(lab(node, key))
            bucket.insert(lab(node, key))
        elif op == 1 and heap.contains(node) and key < heap.get_path(node).reduced:
            heap.decrease_key(node, lab(node, key))
            bucket.decrease_key(node, lab(node, key))
        elif len(heap):
            a, b = heap.extract_min(), bucket.extract_min()
            assert (a.head, a.reduced) == (b.head, b.reduced)
            floor = a.reduced
            pointers.append(bucket.cursor)
        heap.check()
        bucket.check()
    assert pointers == sorted(pointers)
    assert heap.inserted == bucket.inserted


def test_registry(caplog):
    assert get_queue(None).name == "heap"
    assert get_queue("Bucket", 3).name == "bucket"
    with caplog.at_level(logging.WARNING, logger="pareto_route"):
        assert get_queue("fibonacci").name == "heap"
    assert "unknown queue" in caplog.text
    assert queue_name("fibonacci") == "heap"
    assert available_queues() == ["bucket", "heap"]


def test_queue_from_env():
    original = os.environ.get("PARETO_ROUTE_QUEUE")
    try:
        os.environ["PARETO_ROUTE_QUEUE"] = "bucket"
        assert queue_from_env(2).name == "bucket"
    finally:
        if original is not None:
            os.environ["PARETO_ROUTE_QUEUE"] = original
        else:
            del os.environ["PARETO_ROUTE_QUEUE"]
