"""pareto-route: exact one-to-one multiobjective shortest path solving.

pareto-route computes minimal complete sets of efficient s-t paths on
digraphs with non-negative integer cost vectors. It ships a targeted
multiobjective label-setting Dijkstra (and its untargeted baseline), a
biobjective specialization with shortcuts to the target, a bidirectional
biobjective search, the lexicographic preprocessing these need, DIMACS
instance I/O, a verification oracle and a benchmark harness.
"""

from __future__ import annotations

from .__version__ import __version__

__all__ = ["__version__"]
