"""Base priority queue interface for pareto-route.

The solvers keep at most one explored path per node in their priority
queue and address entries by node id. Every queue orders labels by their
reduced cost vector (lexicographically, ties broken by the smaller node
id) and supports node-addressed decrease-key.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Generic, Optional, Protocol, TypeVar

from ..errors import QueueContractError
from ..model import CostVector


class Keyed(Protocol):
    head: int
    reduced: CostVector


L = TypeVar("L", bound=Keyed)


class BaseQueue(ABC, Generic[L]):
    """Abstract base class for node-addressed priority queues.

    Implementations are single-owner structures: one queue per solver
    run, never shared between threads.

    Attributes:
        inserted: Number of labels that entered the queue (insert or decrease-key).
        extracted: Number of extract_min calls.
    """

    name: str = "base"

    def __init__(self) -> None:
        self.inserted = 0
        self.extracted = 0

    @abstractmethod
    def insert(self, label: L) -> None:
        """Add a label for a node that has no entry yet.

        Raises:
            QueueContractError: the node already has an entry.
        """
        raise NotImplementedError

    @abstractmethod
    def extract_min(self) -> L:
        """Remove and return the label with the smallest key.

        Raises:
            QueueContractError: the queue is empty.
        """
        raise NotImplementedError

    @abstractmethod
    def decrease_key(self, node: int, label: L) -> L:
        """Replace the entry of `node` with a lex-smaller label.

        Returns:
            The label that was displaced.

        Raises:
            QueueContractError: no entry for `node`, or the new key is not smaller.
        """
        raise NotImplementedError

    @abstractmethod
    def contains(self, node: int) -> bool:
        raise NotImplementedError

    @abstractmethod
    def get_path(self, node: int) -> L:
        """Return the label currently queued for `node`.

        Raises:
            QueueContractError: no entry for `node`.
        """
        raise NotImplementedError

    @abstractmethod
    def __len__(self) -> int:
        raise NotImplementedError

    def check(self) -> None:
        """Assert internal invariants (one entry per node). Cheap implementations may skip."""

    def _require_absent(self, label: L) -> None:
        if self.contains(label.head):
            raise QueueContractError(f"node {label.head} already has a queue entry")

    def _require_smaller(self, node: int, current: Optional[L], label: L) -> None:
        if current is None:
            raise QueueContractError(f"decrease_key on node {node} without a queue entry")
        if label.head != node:
            raise QueueContractError(f"label for node {label.head} used to decrease node {node}")
        if not label.reduced < current.reduced:
            raise QueueContractError(
                f"decrease_key on node {node}: {label.reduced} is not lex-smaller than {current.reduced}"
            )
