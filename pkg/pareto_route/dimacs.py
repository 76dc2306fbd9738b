"""DIMACS shortest-path files and s-t pair files.

A multi-criteria instance is stored as one `.gr` file per cost component,
all describing the same topology. Node ids are 1-based on disk and 0-based
in memory.
"""

from __future__ import annotations

import logging
from typing import IO, Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

from .errors import DimacsParseError, InstanceFormatError
from .model import Graph, Instance

log = logging.getLogger("pareto_route.dimacs")

_RawArc = Tuple[int, int, int]


def _parse_stream(stream: Iterable[str]) -> Tuple[int, List[_RawArc]]:
    """Parse one `.gr` stream into (n, [(tail, head, weight), ...]) with 0-based ids."""

    n: Optional[int] = None
    m: Optional[int] = None
    arcs: List[_RawArc] = []

    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]

        if tag == "p":
            if n is not None:
                raise DimacsParseError("duplicate problem line", line_no)
            if len(parts) != 4 or parts[1] != "sp":
                raise DimacsParseError(f"expected 'p sp <n> <m>', got {line!r}", line_no)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError as e:
                raise DimacsParseError(f"non-integer size in {line!r}", line_no) from e
            if n < 0 or m < 0:
                raise DimacsParseError(f"negative size in {line!r}", line_no)
            continue

        if tag == "a":
            if n is None:
                raise DimacsParseError("arc line before problem line", line_no)
            if len(parts) != 4:
                raise DimacsParseError(f"expected 'a <tail> <head> <weight>', got {line!r}", line_no)
            try:
                tail, head, weight = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError as e:
                raise DimacsParseError(f"non-integer field in {line!r}", line_no) from e
            if not (1 <= tail <= n and 1 <= head <= n):
                raise DimacsParseError(f"node id outside [1, {n}] in {line!r}", line_no)
            if weight < 0:
                raise InstanceFormatError(f"line {line_no}: negative weight {weight}")
            arcs.append((tail - 1, head - 1, weight))
            continue

        raise DimacsParseError(f"unknown line type {tag!r}", line_no)

    if n is None or m is None:
        raise DimacsParseError("missing problem line")
    if len(arcs) != m:
        raise InstanceFormatError(f"problem line announces {m} arcs, found {len(arcs)}")
    return n, arcs


def _canonical(arcs: List[_RawArc]) -> List[Tuple[int, int, int, int]]:
    """Sort arcs by (tail, head, occurrence index among parallel arcs)."""

    seen: Dict[Tuple[int, int], int] = {}
    keyed = []
    for tail, head, weight in arcs:
        occ = seen.get((tail, head), 0)
        seen[(tail, head)] = occ + 1
        keyed.append((tail, head, occ, weight))
    keyed.sort()
    return keyed


def parse_dimacs_gr(streams: Sequence[Iterable[str]]) -> Graph:
    """Parse one DIMACS `.gr` stream per cost component into a graph.

    Args:
        streams: Text streams (or any iterables of lines), one per criterion.

    Returns:
        Graph with dimension = len(streams); arc k's i-th cost comes from stream i.

    Raises:
        DimacsParseError: a line is malformed (carries the line number).
        InstanceFormatError: negative weight, or topologies differ between streams.
    """

    if not streams:
        raise InstanceFormatError("no DIMACS streams given")

    parsed = [_parse_stream(s) for s in streams]
    n0, arcs0 = parsed[0]
    base = _canonical(arcs0)

    weights: List[List[int]] = [[w] for (_, _, _, w) in base]
    for k, (n_k, arcs_k) in enumerate(parsed[1:], start=2):
        if n_k != n0:
            raise InstanceFormatError(f"stream {k} has {n_k} nodes, stream 1 has {n0}")
        other = _canonical(arcs_k)
        if len(other) != len(base):
            raise InstanceFormatError(
                f"stream {k} has {len(other)} arcs, stream 1 has {len(base)}"
            )
        for i, (a, b) in enumerate(zip(base, other)):
            if a[:3] != b[:3]:
                raise InstanceFormatError(
                    f"stream {k} topology differs from stream 1 at arc {b[0] + 1}->{b[1] + 1}"
                )
            weights[i].append(b[3])

    triples = [(t, h, tuple(w)) for (t, h, _, _), w in zip(base, weights)]
    return Graph.build(n0, len(streams), triples)


def write_dimacs_gr(graph: Graph, component: int, stream: TextIO, comment: str = "") -> None:
    """Write the single-criterion `.gr` file for one cost component (0-based index)."""

    if not 0 <= component < graph.dimension:
        raise InstanceFormatError(
            f"component {component} outside [0, {graph.dimension}) for this graph"
        )
    if comment:
        for line in comment.splitlines():
            stream.write(f"c {line}\n")
    stream.write(f"p sp {graph.node_count} {graph.arc_count}\n")
    for a in graph.arcs:
        stream.write(f"a {a.tail + 1} {a.head + 1} {a.cost[component]}\n")


def synthesize_unit_component(graph: Graph) -> Graph:
    """Append a trailing cost component equal to 1 on every arc."""

    return graph.with_costs([a.cost + (1,) for a in graph.arcs], graph.dimension + 1)


def with_endpoints(graph: Graph, source: int, target: int, name: str = "") -> Instance:
    return Instance(graph=graph, source=source, target=target, name=name)


def read_pairs(stream: Iterable[str], node_count: Optional[int] = None) -> List[Tuple[int, int]]:
    """Read `q <s> <t>` lines (1-based) into 0-based (s, t) pairs."""

    pairs: List[Tuple[int, int]] = []
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "q" or len(parts) != 3:
            raise DimacsParseError(f"expected 'q <s> <t>', got {line!r}", line_no)
        try:
            s, t = int(parts[1]), int(parts[2])
        except ValueError as e:
            raise DimacsParseError(f"non-integer node id in {line!r}", line_no) from e
        if s < 1 or t < 1 or (node_count is not None and (s > node_count or t > node_count)):
            raise DimacsParseError(f"node id out of range in {line!r}", line_no)
        pairs.append((s - 1, t - 1))
    return pairs


def write_pairs(pairs: Iterable[Tuple[int, int]], stream: IO[str]) -> None:
    for s, t in pairs:
        stream.write(f"q {s + 1} {t + 1}\n")
