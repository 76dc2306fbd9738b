"""Solver registry for pareto-route.

This module wires together the base solver interface and the built-in
solvers (tmda, mda, tbda, btbda) so that the CLI and the bench runner can
resolve an algorithm name into a solver instance.
"""

from __future__ import annotations

import logging
import os
from typing import Callable, Dict, Optional

from .base import BaseSolver, Label, SolveOptions, reconstruct_path
from .btbda import BtbdaSolver, solve_bidirectional
from .tbda import TbdaSolver, solve2d
from .tmda import MdaSolver, TmdaSolver, solve_tmda

log = logging.getLogger("pareto_route.solvers")

_SOLVER_FACTORIES: Dict[str, Callable[[], BaseSolver]] = {}

DEFAULT_SOLVER = "tmda"


def _register_defaults() -> None:
    if _SOLVER_FACTORIES:
        return
    _SOLVER_FACTORIES["tmda"] = lambda: TmdaSolver()
    _SOLVER_FACTORIES["mda"] = lambda: MdaSolver()
    _SOLVER_FACTORIES["tbda"] = lambda: TbdaSolver()
    _SOLVER_FACTORIES["btbda"] = lambda: BtbdaSolver()


def available_solvers() -> list:
    _register_defaults()
    return sorted(_SOLVER_FACTORIES)


def get_solver(name: Optional[str]) -> BaseSolver:
    """Return a solver instance for the given algorithm name.

    If the name is None or empty, defaults to "tmda". Unknown names also
    fall back to "tmda" with a warning; tmda handles every dimension.

    Args:
        name: Algorithm name ("tmda", "mda", "tbda", "btbda").

    Returns:
        BaseSolver instance
    """

    _register_defaults()

    key = (name or DEFAULT_SOLVER).strip().lower()
    factory = _SOLVER_FACTORIES.get(key)
    if factory is None:
        log.warning(f"unknown algorithm {name!r}, using {DEFAULT_SOLVER}")
        factory = _SOLVER_FACTORIES[DEFAULT_SOLVER]
    return factory()


def solver_from_env() -> BaseSolver:
    """Resolve a solver based on PARETO_ROUTE_ALGO."""

    name = os.environ.get("PARETO_ROUTE_ALGO", "").strip() or None
    return get_solver(name)


__all__ = [
    "BaseSolver",
    "BtbdaSolver",
    "Label",
    "MdaSolver",
    "SolveOptions",
    "TbdaSolver",
    "TmdaSolver",
    "available_solvers",
    "get_solver",
    "reconstruct_path",
    "solve2d",
    "solve_bidirectional",
    "solve_tmda",
    "solver_from_env",
]
