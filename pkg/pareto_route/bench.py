"""Batch benchmarks driven by a JSON manifest.

For every run in the manifest the cost files are loaded once, every s-t
pair is preprocessed once, and every algorithm/queue combination is solved
on it. Three CSV files come out of a bench:

* ``runs.csv``: one row per (instance, pair, algorithm, queue).
* ``aggregates.csv``: rounded geometric means per baseline solve-time
  interval and variant, with the speedup over the baseline.
* ``scatter.csv``: (baseline time, variant time) per pair, for plotting
  with any external tool.

Unsolved runs count with the time limit as their time. Pairs no variant
solved are left out of the aggregates.
"""

from __future__ import annotations

import csv
import logging
import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from unidecode import unidecode

from .cache import cached_preprocess
from .config import BenchManifest, BenchRun
from .dimacs import parse_dimacs_gr, read_pairs, synthesize_unit_component, with_endpoints
from .errors import ParetoRouteError
from .generators import random_pairs
from .model import Graph, Instance, reverse_instance
from .preprocessing import preprocess
from .solvers import SolveOptions, get_solver
from .solvers.btbda import BtbdaSolver

log = logging.getLogger("pareto_route.bench")

# Upper edges (seconds) of the baseline solve-time intervals; the last one is open.
TIME_EDGES = (0.5, 5.0, 50.0, 500.0)
DEFAULT_PAIR_COUNT = 20

RUN_HEADER = (
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
    "timed_out",
)
AGGREGATE_HEADER = (
    "interval",
    "variant",
    "count",
    "n_t",
    "inserted",
    "time_ms",
    "speedup",
)
SCATTER_HEADER = ("instance", "s", "t", "baseline_ms", "variant_ms", "algo")


@dataclass
class BenchRow:
    instance: str
    source: int
    target: int
    algo: str
    queue: str
    n_t: int
    inserted: int
    extracted: int
    time_ms: float
    preprocess_ms: float
    timed_out: bool = False

    @property
    def variant(self) -> str:
        return f"{self.algo}/{self.queue}"


@dataclass
class BenchResult:
    rows: List[BenchRow] = field(default_factory=list)
    aggregates: List[Tuple] = field(default_factory=list)
    scatter: List[Tuple] = field(default_factory=list)
    failures: int = 0


def slugify(name: str) -> str:
    """ASCII, lower-case, non-alphanumerics collapsed to '-'."""
    s = unidecode(name).lower()
    s = re.sub(r"[^a-z0-9]+", "-", s).strip("-")
    return s or "instance"


def geometric_mean(values: Sequence[float]) -> float:
    """Geometric mean of the positive values; 0.0 when there are none."""
    arr = np.asarray([v for v in values if v > 0], dtype=float)
    if arr.size == 0:
        return 0.0
    return float(np.exp(np.mean(np.log(arr))))


def interval_of(seconds: float) -> str:
    lower = 0.0
    for edge in TIME_EDGES:
        if seconds <= edge:
            return f"({_fmt_edge(lower)}, {_fmt_edge(edge)}]"
        lower = edge
    return f"({_fmt_edge(lower)}, inf)"


def _fmt_edge(x: float) -> str:
    return f"{x:g}"


def interval_labels() -> List[str]:
    labels = []
    lower = 0.0
    for edge in TIME_EDGES:
        labels.append(f"({_fmt_edge(lower)}, {_fmt_edge(edge)}]")
        lower = edge
    labels.append(f"({_fmt_edge(lower)}, inf)")
    return labels


def load_run_graph(run: BenchRun) -> Graph:
    """Parse a run's cost files, appending the unit component when asked."""

    missing = [p for p in run.graphs if not p.exists()]
    if missing:
        raise FileNotFoundError(", ".join(str(p) for p in missing))
    handles = [p.open("r", encoding="utf-8") for p in run.graphs]
    try:
        graph = parse_dimacs_gr(handles)
    finally:
        for h in handles:
            h.close()
    if run.unit_component:
        graph = synthesize_unit_component(graph)
    return graph


def _run_pairs(run: BenchRun, graph: Graph) -> List[Tuple[int, int]]:
    if run.pairs is None:
        return random_pairs(graph, DEFAULT_PAIR_COUNT, seed=0)
    with run.pairs.open("r", encoding="utf-8") as f:
        return read_pairs(f, graph.node_count)


def _solve_pair(
    inst: Instance,
    run: BenchRun,
    time_limit: Optional[float],
    cache_dir: Optional[Path],
) -> List[BenchRow]:
    pre = cached_preprocess(inst, cache_dir)
    pre_bwd = None
    rows: List[BenchRow] = []
    for algo in run.algos:
        solver = get_solver(algo)
        if not solver.supports(inst.dimension):
            log.warning(f"[{inst.name}] {solver.name} does not handle d = {inst.dimension}, skipped")
            continue
        if isinstance(solver, BtbdaSolver):
            if pre_bwd is None:
                pre_bwd = preprocess(reverse_instance(inst))
            solver = BtbdaSolver(pre_bwd)
        for queue in run.queues:
            opts = SolveOptions(queue=queue, time_limit=time_limit, shortcuts=run.shortcuts)
            record = solver.solve(inst, pre, opts)
            time_ms = record.time_ms
            if record.timed_out and time_limit is not None:
                time_ms = time_limit * 1000.0
            rows.append(
                BenchRow(
                    instance=inst.name,
                    source=inst.source,
                    target=inst.target,
                    algo=record.algo,
                    queue=record.queue,
                    n_t=record.n_t,
                    inserted=record.inserted,
                    extracted=record.extracted,
                    time_ms=time_ms,
                    preprocess_ms=record.preprocess_ms,
                    timed_out=record.timed_out,
                )
            )
    return rows


def _baseline_variant(manifest: BenchManifest, rows: List[BenchRow]) -> Optional[str]:
    if not rows:
        return None
    base = manifest.baseline or rows[0].algo
    if "/" in base:
        return base
    for row in rows:
        if row.algo == base:
            return row.variant
    return None


def aggregate(
    rows: List[BenchRow], baseline: Optional[str]
) -> Tuple[List[Tuple], List[Tuple]]:
    """Aggregate and scatter rows for the given baseline variant ("algo/queue")."""

    if baseline is None:
        return [], []

    by_pair: Dict[Tuple[str, int, int], Dict[str, BenchRow]] = {}
    for row in rows:
        by_pair.setdefault((row.instance, row.source, row.target), {})[row.variant] = row

    groups: Dict[Tuple[str, str], List[Tuple[BenchRow, BenchRow]]] = {}
    scatter: List[Tuple] = []
    for (instance, s, t), variants in sorted(by_pair.items()):
        base = variants.get(baseline)
        if base is None:
            continue
        if all(r.timed_out for r in variants.values()):
            continue
        label = interval_of(base.time_ms / 1000.0)
        for name, row in sorted(variants.items()):
            groups.setdefault((label, name), []).append((base, row))
            if name != baseline:
                scatter.append(
                    (instance, s, t, round(base.time_ms, 3), round(row.time_ms, 3), row.algo)
                )

    order = {label: i for i, label in enumerate(interval_labels())}
    aggregates: List[Tuple] = []
    for (label, name), pairs in sorted(groups.items(), key=lambda kv: (order[kv[0][0]], kv[0][1])):
        variant_rows = [r for _, r in pairs]
        base_time = geometric_mean([b.time_ms for b, _ in pairs])
        var_time = geometric_mean([r.time_ms for r in variant_rows])
        speedup = base_time / var_time if var_time > 0 else math.nan
        aggregates.append(
            (
                label,
                name,
                len(pairs),
                round(geometric_mean([r.n_t for r in variant_rows])),
                round(geometric_mean([r.inserted for r in variant_rows])),
                round(var_time, 2),
                round(speedup, 2),
            )
        )
    return aggregates, scatter


def run_bench(
    manifest: BenchManifest,
    workers: int = 1,
    time_limit: Optional[float] = None,
    cache_dir: Optional[Path] = None,
) -> BenchResult:
    """Solve every (run, pair, algorithm, queue) combination of the manifest.

    Missing or malformed files fail only their own manifest entry.
    `time_limit` overrides the manifest's limit when given.
    """

    limit = time_limit if time_limit is not None else manifest.time_limit
    result = BenchResult()
    jobs: List[Tuple[Instance, BenchRun]] = []

    for run in manifest.runs:
        try:
            graph = load_run_graph(run)
            pairs = _run_pairs(run, graph)
        except FileNotFoundError as e:
            log.error(f"[{run.name}] missing file(s): {e}")
            result.failures += 1
            continue
        except ParetoRouteError as e:
            log.error(f"[{run.name}] {e}")
            result.failures += 1
            continue
        name = slugify(run.name)
        log.info(f"[{name}] {graph.node_count} nodes, {graph.arc_count} arcs, {len(pairs)} pair(s)")
        for s, t in pairs:
            if s == t:
                log.warning(f"[{name}] skipping pair with s = t = {s + 1}")
                continue
            jobs.append((with_endpoints(graph, s, t, name), run))

    def work(job: Tuple[Instance, BenchRun]) -> Optional[List[BenchRow]]:
        inst, run = job
        try:
            return _solve_pair(inst, run, limit, cache_dir)
        except ParetoRouteError as e:
            log.error(f"[{inst.name}] s={inst.source + 1} t={inst.target + 1}: {e}")
            return None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="bench") as pool:
            outcomes = list(pool.map(work, jobs))
    else:
        outcomes = [work(job) for job in jobs]
    for rows in outcomes:
        if rows is None:
            result.failures += 1
        else:
            result.rows.extend(rows)

    baseline = _baseline_variant(manifest, result.rows)
    result.aggregates, result.scatter = aggregate(result.rows, baseline)
    return result


def write_bench(result: BenchResult, out_dir: Path) -> Dict[str, Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = {
        "runs": out_dir / "runs.csv",
        "aggregates": out_dir / "aggregates.csv",
        "scatter": out_dir / "scatter.csv",
    }

    with paths["runs"].open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(RUN_HEADER)
        for r in result.rows:
            writer.writerow(
                [
                    r.instance,
                    r.source + 1,
                    r.target + 1,
                    r.algo,
                    r.queue,
                    r.n_t,
                    r.inserted,
                    r.extracted,
                    repr(float(r.time_ms)),
                    repr(float(r.preprocess_ms)),
                    1 if r.timed_out else 0,
                ]
            )

    # Node ids go out 1-based, like the pair files they came from.
    scatter = [(name, s + 1, t + 1, *rest) for name, s, t, *rest in result.scatter]
    for key, header, data in (
        ("aggregates", AGGREGATE_HEADER, result.aggregates),
        ("scatter", SCATTER_HEADER, scatter),
    ):
        with paths[key].open("w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(data)

    log.info(f"bench: {len(result.rows)} row(s) written to {out_dir}")
    return paths


__all__ = [
    "BenchResult",
    "BenchRow",
    "aggregate",
    "geometric_mean",
    "interval_of",
    "load_run_graph",
    "run_bench",
    "slugify",
    "write_bench",
]
