"""Dial-style bucket queue indexed by the first reduced-cost component.

Reduced arc costs are non-negative, so keys never fall below the key
last extracted and a forward-only min pointer finds the lowest
non-empty bucket. Inside a bucket entries stay ordered by the full key,
which keeps extraction order lexicographic when first components tie.
Unlike a plain Dial queue a bucket is not FIFO: each one is a small heap.
Decrease-key leaves the old entry in place and invalidates it lazily.
"""

from __future__ import annotations

import heapq
from typing import Dict, List, Optional, Tuple

from ..errors import QueueContractError
from ..model import CostVector
from .base import BaseQueue, L

_Entry = Tuple[CostVector, int, int, L]


class BucketQueue(BaseQueue[L]):
    name: str = "bucket"

    def __init__(self, initial_size: int = 0) -> None:
        super().__init__()
        self.buckets: List[List[_Entry]] = [[] for _ in range(max(initial_size, 1))]
        # node -> (sequence number of its live entry, label)
        self.live: Dict[int, Tuple[int, L]] = {}
        self.cursor = 0
        self._seq = 0

    def __len__(self) -> int:
        return len(self.live)

    def contains(self, node: int) -> bool:
        return node in self.live

    def get_path(self, node: int) -> L:
        entry = self.live.get(node)
        if entry is None:
            raise QueueContractError(f"get_path on node {node} without a queue entry")
        return entry[1]

    def _push(self, label: L) -> None:
        first = label.reduced[0]
        if first < self.cursor:
            raise QueueContractError(
                f"key {label.reduced} lies below the bucket pointer {self.cursor}"
            )
        if first >= len(self.buckets):
            grow = max(first + 1, 2 * len(self.buckets))
            self.buckets.extend([] for _ in range(grow - len(self.buckets)))
        self._seq += 1
        heapq.heappush(self.buckets[first], (label.reduced, label.head, self._seq, label))
        self.live[label.head] = (self._seq, label)

    def insert(self, label: L) -> None:
        self._require_absent(label)
        self._push(label)
        self.inserted += 1

    def decrease_key(self, node: int, label: L) -> L:
        entry = self.live.get(node)
        current: Optional[L] = entry[1] if entry is not None else None
        self._require_smaller(node, current, label)
        assert current is not None
        self._push(label)
        self.inserted += 1
        return current

    def extract_min(self) -> L:
        if not self.live:
            raise QueueContractError("extract_min on an empty queue")
        while True:
            bucket = self.buckets[self.cursor]
            while bucket:
                _, node, seq, label = heapq.heappop(bucket)
                live = self.live.get(node)
                if live is not None and live[0] == seq:
                    del self.live[node]
                    self.extracted += 1
                    return label
            self.cursor += 1

    def check(self) -> None:
        for node, (seq, label) in self.live.items():
            assert label.head == node, f"live entry of node {node} holds a label for {label.head}"
            assert label.reduced[0] >= self.cursor, "live entry below the bucket pointer"
