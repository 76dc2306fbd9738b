"""Instance generator registry for pareto-route.

This module wires together the base generator interface and the built-in
generators (grid, netmaker, random) so that the CLI can resolve a
configured generator name into a generator instance.
"""

from __future__ import annotations

import os
from typing import Callable, Dict, Optional

from .base import BaseGenerator, GeneratorParamError, random_pairs
from .grid import GridGenerator, generate_grid
from .netmaker import NetmakerGenerator, generate_netmaker
from .random_graph import RandomGenerator, generate_random

_GENERATOR_FACTORIES: Dict[str, Callable[[], BaseGenerator]] = {}

DEFAULT_GENERATOR = "random"


def _register_defaults() -> None:
    if _GENERATOR_FACTORIES:
        return
    _GENERATOR_FACTORIES["grid"] = lambda: GridGenerator()
    _GENERATOR_FACTORIES["netmaker"] = lambda: NetmakerGenerator()
    _GENERATOR_FACTORIES["random"] = lambda: RandomGenerator()


def available_generators() -> list:
    _register_defaults()
    return sorted(_GENERATOR_FACTORIES)


def get_generator(name: Optional[str]) -> BaseGenerator:
    """Return a generator instance for the given name.

    Unlike queues and solvers, an unknown generator name is an error: the
    parameters of one generator mean nothing to another.

    Args:
        name: Generator name ("grid", "netmaker", "random"); None or empty
            selects the default ("random").

    Returns:
        BaseGenerator instance
    """

    _register_defaults()

    if not name:
        name = DEFAULT_GENERATOR

    factory = _GENERATOR_FACTORIES.get(name.strip().lower())
    if factory is None:
        raise GeneratorParamError(
            f"unknown generator {name!r}; choose from {', '.join(available_generators())}"
        )
    return factory()


def generator_from_env() -> BaseGenerator:
    """Resolve a generator based on PARETO_ROUTE_GENERATOR."""

    name = os.environ.get("PARETO_ROUTE_GENERATOR", "").strip() or None
    return get_generator(name)


__all__ = [
    "BaseGenerator",
    "GeneratorParamError",
    "available_generators",
    "generate_grid",
    "generate_netmaker",
    "generate_random",
    "generator_from_env",
    "get_generator",
    "random_pairs",
]
