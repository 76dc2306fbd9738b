"""Solution records and their CSV form.

File layout::

    instance,s,t,algo,queue,n_t,inserted,extracted,time_ms,preprocess_ms
    ny-d,1,42,tbda,heap,3,120,97,4.210,12.003
    f,1,10
    p,1,42
    f,3,4
    ...

The first data row holds the run statistics; every `f` line is one frontier
cost vector and may be followed by a `p` line with its node sequence.
Node ids in the file are 1-based like DIMACS; records hold them 0-based. A
record that timed out carries a `timed_out` flag in an optional trailing
column. Readers also accept the nine-column header without `preprocess_ms`.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import List, Optional, TextIO, Tuple

from .errors import SolutionFormatError
from .model import CostVector, dominates_or_equal

HEADER = (
    "instance",
    "s",
    "t",
    "algo",
    "queue",
    "n_t",
    "inserted",
    "extracted",
    "time_ms",
    "preprocess_ms",
)
_SHORT_HEADER = HEADER[:-1]


@dataclass
class SolutionRecord:
    instance: str
    source: int
    target: int
    algo: str
    queue: str
    frontier: List[CostVector] = field(default_factory=list)
    inserted: int = 0
    extracted: int = 0
    time_ms: float = 0.0
    preprocess_ms: float = 0.0
    paths: Optional[List[List[int]]] = None
    timed_out: bool = False

    @property
    def n_t(self) -> int:
        return len(self.frontier)

    def frontier_set(self) -> set:
        return set(self.frontier)

    def check_frontier(self) -> None:
        """Raise if the frontier is not lex-sorted and mutually non-dominated."""
        for a, b in zip(self.frontier, self.frontier[1:]):
            if not a < b:
                raise SolutionFormatError(f"frontier not lex-increasing at {a} / {b}")
        for i, a in enumerate(self.frontier):
            for b in self.frontier[i + 1 :]:
                if dominates_or_equal(a, b) or dominates_or_equal(b, a):
                    raise SolutionFormatError(f"frontier vectors {a} and {b} are comparable")


def _fmt_ms(value: float) -> str:
    return repr(float(value))


def write_solution(record: SolutionRecord, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    header = list(HEADER)
    row = [
        record.instance,
        record.source + 1,
        record.target + 1,
        record.algo,
        record.queue,
        record.n_t,
        record.inserted,
        record.extracted,
        _fmt_ms(record.time_ms),
        _fmt_ms(record.preprocess_ms),
    ]
    if record.timed_out:
        header.append("timed_out")
        row.append(1)
    writer.writerow(header)
    writer.writerow(row)
    for i, cost in enumerate(record.frontier):
        writer.writerow(["f", *cost])
        if record.paths is not None and i < len(record.paths):
            writer.writerow(["p", *(v + 1 for v in record.paths[i])])


def _ints(cells: List[str], line_no: int) -> Tuple[int, ...]:
    try:
        return tuple(int(c) for c in cells)
    except ValueError as e:
        raise SolutionFormatError(f"line {line_no}: non-integer value in {cells!r}") from e


def _node_ids(cells: List[str], line_no: int) -> Tuple[int, ...]:
    ids = _ints(cells, line_no)
    if any(v < 1 for v in ids):
        raise SolutionFormatError(f"line {line_no}: node ids are 1-based, got {cells!r}")
    return ids


def read_solution(stream: TextIO) -> SolutionRecord:
    rows = [
        (i, [c.strip() for c in row])
        for i, row in enumerate(csv.reader(stream), start=1)
        if row and any(c.strip() for c in row)
    ]
    if len(rows) < 2:
        raise SolutionFormatError("solution file needs a header and a statistics row")

    _, header = rows[0]
    stats_line, stats = rows[1]
    columns = tuple(header)
    timed_out_col = False
    if columns and columns[-1] == "timed_out":
        timed_out_col = True
        columns = columns[:-1]
    if columns not in (HEADER, _SHORT_HEADER):
        raise SolutionFormatError(f"unexpected header {header!r}")
    if len(stats) != len(header):
        raise SolutionFormatError(
            f"line {stats_line}: expected {len(header)} fields, got {len(stats)}"
        )

    values = dict(zip(header, stats))
    try:
        record = SolutionRecord(
            instance=values["instance"],
            source=int(values["s"]) - 1,
            target=int(values["t"]) - 1,
            algo=values["algo"],
            queue=values["queue"],
            inserted=int(values["inserted"]),
            extracted=int(values["extracted"]),
            time_ms=float(values["time_ms"]),
            preprocess_ms=float(values.get("preprocess_ms", "0") or 0),
            timed_out=timed_out_col and values.get("timed_out") == "1",
        )
        n_t = int(values["n_t"])
    except ValueError as e:
        raise SolutionFormatError(f"line {stats_line}: {e}") from e
    if record.source < 0 or record.target < 0:
        raise SolutionFormatError(f"line {stats_line}: node ids are 1-based")

    paths: List[List[int]] = []
    for line_no, row in rows[2:]:
        tag, cells = row[0], row[1:]
        if tag == "f":
            if not cells:
                raise SolutionFormatError(f"line {line_no}: empty frontier vector")
            record.frontier.append(_ints(cells, line_no))
        elif tag == "p":
            if not record.frontier or len(paths) >= len(record.frontier):
                raise SolutionFormatError(f"line {line_no}: path line without a frontier line")
            # Earlier vectors without a path line get an empty placeholder.
            while len(paths) < len(record.frontier) - 1:
                paths.append([])
            paths.append([v - 1 for v in _node_ids(cells, line_no)])
        else:
            raise SolutionFormatError(f"line {line_no}: unknown row tag {tag!r}")

    if len(record.frontier) != n_t:
        raise SolutionFormatError(
            f"n_t says {n_t} frontier vectors, file holds {len(record.frontier)}"
        )
    if paths:
        while len(paths) < len(record.frontier):
            paths.append([])
        record.paths = paths
    return record
