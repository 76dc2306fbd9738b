"""Priority queue registry for pareto-route.

Resolves a queue name ("heap", "bucket") into a fresh queue instance.
Each solver run asks for its own queue.
"""

from __future__ import annotations

import logging
import os
from typing import Callable, Dict, Optional

from .base import BaseQueue
from .bucket import BucketQueue
from .heap import HeapQueue

log = logging.getLogger("pareto_route.queues")

_QUEUE_FACTORIES: Dict[str, Callable[[int], BaseQueue]] = {}

DEFAULT_QUEUE = "heap"


def _register_defaults() -> None:
    if _QUEUE_FACTORIES:
        return
    _QUEUE_FACTORIES["heap"] = lambda size_hint: HeapQueue()
    _QUEUE_FACTORIES["bucket"] = lambda size_hint: BucketQueue(size_hint)


def available_queues() -> list:
    _register_defaults()
    return sorted(_QUEUE_FACTORIES)


def get_queue(name: Optional[str], size_hint: int = 0) -> BaseQueue:
    """Return a new queue for the given name.

    If the name is None, empty, or unknown, defaults to "heap".

    Args:
        name: Queue name ("heap" or "bucket").
        size_hint: Expected largest first key component; bucket queues
            preallocate that many buckets and grow past it on demand.

    Returns:
        BaseQueue instance
    """

    _register_defaults()

    key = (name or DEFAULT_QUEUE).strip().lower()
    factory = _QUEUE_FACTORIES.get(key)
    if factory is None:
        log.warning(f"unknown queue {name!r}, using {DEFAULT_QUEUE}")
        factory = _QUEUE_FACTORIES[DEFAULT_QUEUE]
    return factory(size_hint)


def queue_name(name: Optional[str]) -> str:
    """Canonical name get_queue would resolve `name` to."""
    _register_defaults()
    key = (name or DEFAULT_QUEUE).strip().lower()
    return key if key in _QUEUE_FACTORIES else DEFAULT_QUEUE


def queue_from_env(size_hint: int = 0) -> BaseQueue:
    """Resolve a queue based on PARETO_ROUTE_QUEUE."""

    name = os.environ.get("PARETO_ROUTE_QUEUE", "").strip() or None
    return get_queue(name, size_hint)


__all__ = [
    "BaseQueue",
    "BucketQueue",
    "HeapQueue",
    "available_queues",
    "get_queue",
    "queue_from_env",
    "queue_name",
]
