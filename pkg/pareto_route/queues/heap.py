"""Indexed binary heap keyed by (reduced cost, node)."""

from __future__ import annotations

from typing import Dict, List, Tuple

from ..errors import QueueContractError
from ..model import CostVector
from .base import BaseQueue, L

_Priority = Tuple[CostVector, int]


class HeapQueue(BaseQueue[L]):
    """Binary heap with a node -> position index for decrease-key.

    Extraction order is exactly lexicographic on the reduced cost vector,
    ties broken by the smaller node id.
    """

    name: str = "heap"

    def __init__(self) -> None:
        super().__init__()
        self.heap: List[Tuple[_Priority, L]] = []
        self.index: Dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.heap)

    def contains(self, node: int) -> bool:
        return node in self.index

    def get_path(self, node: int) -> L:
        pos = self.index.get(node)
        if pos is None:
            raise QueueContractError(f"get_path on node {node} without a queue entry")
        return self.heap[pos][1]

    def insert(self, label: L) -> None:
        self._require_absent(label)
        self.heap.append(((label.reduced, label.head), label))
        self.index[label.head] = len(self.heap) - 1
        self._siftup(len(self.heap) - 1)
        self.inserted += 1

    def extract_min(self) -> L:
        if not self.heap:
            raise QueueContractError("extract_min on an empty queue")
        top = self.heap[0]
        del self.index[top[1].head]
        last = self.heap.pop()
        if self.heap:
            self.heap[0] = last
            self.index[last[1].head] = 0
            self._siftdown(0)
        self.extracted += 1
        return top[1]

    def decrease_key(self, node: int, label: L) -> L:
        pos = self.index.get(node)
        current = self.heap[pos][1] if pos is not None else None
        self._require_smaller(node, current, label)
        assert pos is not None and current is not None
        self.heap[pos] = ((label.reduced, node), label)
        self._siftup(pos)
        self.inserted += 1
        return current

    def check(self) -> None:
        assert len(self.index) == len(self.heap), "one entry per node"
        for node, pos in self.index.items():
            assert self.heap[pos][1].head == node, f"index of node {node} is stale"
            if pos:
                assert self.heap[(pos - 1) // 2][0] <= self.heap[pos][0], "heap order"

    def _siftup(self, pos: int) -> None:
        temp = self.heap[pos]
        while pos > 0:
            parent = (pos - 1) // 2
            pt = self.heap[parent]
            if pt[0] > temp[0]:
                self.heap[pos] = pt
                self.index[pt[1].head] = pos
            else:
                break
            pos = parent
        self.heap[pos] = temp
        self.index[temp[1].head] = pos

    def _siftdown(self, pos: int) -> None:
        temp = self.heap[pos]
        size = len(self.heap)
        while pos * 2 + 1 < size:
            child = pos * 2 + 1
            ct = self.heap[child]
            if child + 1 < size and self.heap[child + 1][0] < ct[0]:
                child += 1
                ct = self.heap[child]
            if ct[0] < temp[0]:
                self.heap[pos] = ct
                self.index[ct[1].head] = pos
            else:
                break
            pos = child
        self.heap[pos] = temp
        self.index[temp[1].head] = pos
