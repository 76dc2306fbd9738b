"""Command-line front end: generate, preprocess, solve, validate and bench.

Node ids on the command line and in pair files are 1-based, like the
DIMACS files they refer to.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .__version__ import __version__
from .bench import run_bench, slugify, write_bench
from .cache import cache_path, cached_preprocess, save_preprocess
from .config import RouteSettings, load_manifest, load_settings
from .dimacs import (
    parse_dimacs_gr,
    read_pairs,
    synthesize_unit_component,
    with_endpoints,
    write_dimacs_gr,
    write_pairs,
)
from .errors import (
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    OracleGuardError,
    ParetoRouteError,
)
from .generators import available_generators, get_generator
from .model import Graph, Instance, reverse_instance
from .oracle import DFS, LABEL, enumerate_frontier
from .preprocessing import PreprocessData, preprocess, zero_heuristic
from .queues import available_queues
from .records import SolutionRecord, write_solution
from .solvers import SolveOptions, available_solvers, get_solver
from .solvers.btbda import MODES, BtbdaSolver

log = logging.getLogger("pareto_route")

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"


class UsageError(ParetoRouteError):
    exit_code = EXIT_USAGE


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; usage errors are 1 here.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def configure_logging(level: int, log_path: Optional[Path] = None) -> None:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_path is not None:
        handlers.append(logging.FileHandler(log_path, encoding="utf-8"))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def _load_graph(paths: Sequence[Path], unit_component: bool) -> Graph:
    handles = []
    try:
        for p in paths:
            handles.append(p.open("r", encoding="utf-8"))
        graph = parse_dimacs_gr(handles)
    finally:
        for h in handles:
            h.close()
    if unit_component:
        graph = synthesize_unit_component(graph)
    return graph


def _instance(args: argparse.Namespace, graph: Graph, s: int, t: int) -> Instance:
    name = slugify(args.graphs[0].stem)
    return with_endpoints(graph, s, t, name)


def _prepare(inst: Instance, heuristic: str, algo: str, settings: RouteSettings) -> PreprocessData:
    if heuristic == "zero":
        if algo == "btbda":
            raise UsageError("btbda needs the computed heuristic")
        return zero_heuristic(inst)
    return cached_preprocess(inst, settings.cache_dir)


def _solve(
    inst: Instance,
    algo: str,
    pre: PreprocessData,
    opts: SolveOptions,
) -> SolutionRecord:
    solver = get_solver(algo)
    if not solver.supports(inst.dimension):
        raise UsageError(f"{solver.name} does not handle d = {inst.dimension}")
    if isinstance(solver, BtbdaSolver):
        solver = BtbdaSolver(preprocess(reverse_instance(inst)))
    return solver.solve(inst, pre, opts)


def _options(args: argparse.Namespace, settings: RouteSettings, queue: Optional[str] = None) -> SolveOptions:
    return SolveOptions(
        queue=queue or args.queue or settings.queue,
        time_limit=args.time_limit if args.time_limit is not None else settings.time_limit,
        paths=getattr(args, "paths", False),
        shortcuts=args.shortcuts,
        mode=args.mode,
        seed=args.seed,
    )


def cmd_generate(args: argparse.Namespace, settings: RouteSettings) -> int:
    generator = get_generator(args.kind)
    params = {
        k: v
        for k, v in (
            ("width", args.width),
            ("height", args.height),
            ("n", args.nodes),
            ("m", args.arcs),
            ("d", args.dimension),
            ("extra_arcs", args.extra_arcs),
            ("max_cost", args.max_cost),
        )
        if v is not None
    }
    inst = generator.generate(args.seed, **params)

    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    prefix = args.prefix or generator.name
    for k in range(inst.dimension):
        path = out_dir / f"{prefix}-{k + 1}.gr"
        with path.open("w", encoding="utf-8") as f:
            write_dimacs_gr(
                inst.graph,
                k,
                f,
                comment=f"{generator.name} seed {args.seed}, cost component {k + 1} of {inst.dimension}",
            )
        log.info(f"wrote {path}")

    pairs = generator.pairs(inst, args.pairs, args.seed)
    pairs_path = out_dir / f"{prefix}.pairs"
    with pairs_path.open("w", encoding="utf-8") as f:
        write_pairs(pairs, f)
    log.info(f"wrote {len(pairs)} pair(s) to {pairs_path}")
    return EXIT_OK


def cmd_preprocess(args: argparse.Namespace, settings: RouteSettings) -> int:
    graph = _load_graph(args.graphs, args.unit_component)
    inst = _instance(args, graph, args.source - 1, args.target - 1)
    pre = preprocess(inst)
    out = args.out or cache_path(Path("."), inst)
    save_preprocess(pre, inst, out)
    print(f"pi(s)={pre.pi[inst.source]} beta_t={pre.beta_t} time_ms={pre.elapsed_ms:.1f}")
    return EXIT_OK


def cmd_solve(args: argparse.Namespace, settings: RouteSettings) -> int:
    graph = _load_graph(args.graphs, args.unit_component)
    inst = _instance(args, graph, args.source - 1, args.target - 1)
    pre = _prepare(inst, args.heuristic, args.algo, settings)
    record = _solve(inst, args.algo, pre, _options(args, settings))

    if args.out is not None:
        with args.out.open("w", encoding="utf-8", newline="") as f:
            write_solution(record, f)
        log.info(f"wrote {args.out}")
    else:
        write_solution(record, sys.stdout)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, settings: RouteSettings) -> int:
    graph = _load_graph(args.graphs, args.unit_component)
    with args.pairs.open("r", encoding="utf-8") as f:
        pairs = read_pairs(f, graph.node_count)
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    queues = [q.strip() for q in (args.queue or settings.queue).split(",") if q.strip()]

    failed = 0
    for s, t in pairs:
        inst = _instance(args, graph, s, t)
        try:
            expected = set(enumerate_frontier(inst, mode=args.oracle))
        except OracleGuardError as e:
            log.warning(f"skipping s={s + 1} t={t + 1}: {e}")
            continue
        pre = preprocess(inst)
        for algo in algos:
            if not get_solver(algo).supports(inst.dimension):
                log.warning(f"{algo} does not handle d = {inst.dimension}, skipped")
                continue
            for queue in queues:
                record = _solve(inst, algo, pre, _options(args, settings, queue))
                ok = record.frontier_set() == expected and len(record.frontier) == len(expected)
                if not ok:
                    failed += 1
                    log.debug(f"expected {sorted(expected)}, got {record.frontier}")
                print(f"{'PASS' if ok else 'FAIL'} {algo}/{record.queue} s={s + 1} t={t + 1} N_t={record.n_t}")

    if failed:
        log.error(f"{failed} run(s) disagree with the oracle")
        return EXIT_VALIDATION
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, settings: RouteSettings) -> int:
    manifest = load_manifest(args.manifest)
    workers = args.workers if args.workers is not None else settings.workers
    time_limit = args.time_limit if args.time_limit is not None else settings.time_limit
    result = run_bench(manifest, workers=workers, time_limit=time_limit, cache_dir=settings.cache_dir)
    write_bench(result, args.out_dir)
    if result.failures:
        log.warning(f"{result.failures} manifest entr(y/ies) failed")
    return EXIT_OK


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--queue", default=None, help=f"priority queue ({', '.join(available_queues())})")
    p.add_argument(
        "--shortcuts",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="complete extracted paths along the lexicographic tree (tbda, btbda)",
    )
    p.add_argument("--mode", choices=MODES, default="parallel", help="btbda scheduling")
    p.add_argument("--seed", type=int, default=0, help="seed for btbda's random schedule")
    p.add_argument("--time-limit", type=float, default=None, help="per-solve limit in seconds")
    p.add_argument(
        "--unit-component",
        action="store_true",
        help="append a cost component equal to 1 on every arc",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pareto-route",
        description="pareto-route: exact one-to-one multiobjective shortest paths",
    )
    parser.add_argument("--version", action="version", version=f"pareto-route {__version__}")
    parser.add_argument("--verbose", action="store_true", help="Enable verbose logging output")
    parser.add_argument("--log-path", type=Path, default=None, help="also log to this file")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="write a synthetic instance as DIMACS files")
    gen.add_argument("kind", choices=available_generators())
    gen.add_argument("--out-dir", type=Path, default=Path("."))
    gen.add_argument("--prefix", default=None)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--width", type=int)
    gen.add_argument("--height", type=int)
    gen.add_argument("--nodes", type=int)
    gen.add_argument("--arcs", type=int)
    gen.add_argument("--dimension", type=int)
    gen.add_argument("--extra-arcs", type=int)
    gen.add_argument("--max-cost", type=int)
    gen.add_argument("--pairs", type=int, default=20, help="number of s-t pairs to write")
    gen.set_defaults(func=cmd_generate)

    pre = sub.add_parser("preprocess", help="compute and store the heuristic and bounds")
    pre.add_argument("graphs", nargs="+", type=Path, help="one .gr file per cost component")
    pre.add_argument("--source", type=int, required=True)
    pre.add_argument("--target", type=int, required=True)
    pre.add_argument("--unit-component", action="store_true")
    pre.add_argument("--out", type=Path, default=None)
    pre.set_defaults(func=cmd_preprocess)

    solve = sub.add_parser("solve", help="compute the frontier of one s-t pair")
    solve.add_argument("graphs", nargs="+", type=Path, help="one .gr file per cost component")
    solve.add_argument("--source", type=int, required=True)
    solve.add_argument("--target", type=int, required=True)
    solve.add_argument("--algo", choices=available_solvers(), default="tmda")
    solve.add_argument("--heuristic", choices=("computed", "zero"), default="computed")
    solve.add_argument("--paths", action="store_true", help="also write each frontier path")
    solve.add_argument("--out", type=Path, default=None, help="solution CSV (default: stdout)")
    _add_solver_flags(solve)
    solve.set_defaults(func=cmd_solve)

    val = sub.add_parser("validate", help="compare solver frontiers against the oracle")
    val.add_argument("graphs", nargs="+", type=Path, help="one .gr file per cost component")
    val.add_argument("--pairs", type=Path, required=True)
    val.add_argument("--algos", default="tmda,tbda,btbda")
    val.add_argument("--oracle", choices=(LABEL, DFS), default=LABEL)
    _add_solver_flags(val)
    val.set_defaults(func=cmd_validate)

    bench = sub.add_parser("bench", help="run a benchmark manifest")
    bench.add_argument("manifest", type=Path)
    bench.add_argument("--out-dir", type=Path, default=Path("bench-out"))
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--time-limit", type=float, default=None)
    bench.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = load_settings()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"pareto-route: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    level = logging.DEBUG if args.verbose else settings.log_level
    configure_logging(level, args.log_path or settings.log_path)
    log.debug(f"settings: {settings}")

    try:
        return args.func(args, settings)
    except ParetoRouteError as e:
        log.error(str(e))
        return e.exit_code
    except OSError as e:
        log.error(f"{e}")
        return EXIT_IO
