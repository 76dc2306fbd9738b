from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from .errors import ManifestError

log = logging.getLogger("pareto_route.config")

_LEVELS = {
    "debug": logging.DEBUG,
    "1": logging.DEBUG,
    "verbose": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
}


@dataclass(frozen=True)
class RouteSettings:
    log_level: int = logging.INFO
    log_path: Optional[Path] = None
    queue: str = "heap"
    workers: int = 1
    time_limit: Optional[float] = None
    cache_dir: Optional[Path] = None


@dataclass
class BenchRun:
    name: str
    graphs: List[Path]
    pairs: Optional[Path]
    algos: List[str]
    queues: List[str]
    unit_component: bool = False
    shortcuts: bool = True


@dataclass
class BenchManifest:
    runs: List[BenchRun] = field(default_factory=list)
    baseline: Optional[str] = None
    time_limit: Optional[float] = None


def load_settings(project_root: Optional[Path] = None) -> RouteSettings:
    """
    Load settings from the environment, after merging a project .env file
    """

    if project_root is None:
        # Assume this file is pareto_route/config.py
        project_root = Path(__file__).resolve().parents[1]

    env_path = project_root / ".env"
    if env_path.exists():
        load_dotenv(env_path, override=False)

    raw_level = os.getenv("PARETO_ROUTE_LOG", "info").strip().strip("'\"").lower()
    log_level = _LEVELS.get(raw_level, logging.INFO)

    log_path_raw = os.getenv("PARETO_ROUTE_LOG_PATH", "").strip()
    log_path = Path(log_path_raw).expanduser() if log_path_raw else None

    queue = os.getenv("PARETO_ROUTE_QUEUE", "").strip().lower() or "heap"

    try:
        workers = max(1, int(os.getenv("PARETO_ROUTE_WORKERS", "1")))
    except ValueError:
        workers = 1

    time_limit_raw = os.getenv("PARETO_ROUTE_TIME_LIMIT", "").strip()
    try:
        time_limit = float(time_limit_raw) if time_limit_raw else None
    except ValueError:
        time_limit = None

    cache_raw = os.getenv("PARETO_ROUTE_CACHE_DIR", "").strip()
    cache_dir = Path(cache_raw).expanduser() if cache_raw else None

    return RouteSettings(
        log_level=log_level,
        log_path=log_path,
        queue=queue,
        workers=workers,
        time_limit=time_limit,
        cache_dir=cache_dir,
    )


def load_manifest(path: Path) -> BenchManifest:
    """
    Load a bench manifest. Relative paths resolve against the manifest's directory.
    """

    if not path.exists():
        raise ManifestError(f"Manifest file not found: {path}")

    try:
        with path.open("r", encoding="utf-8") as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise ManifestError(f"Manifest is not valid JSON: {path}: {e}") from e

    base = path.resolve().parent
    runs: List[BenchRun] = []

    for entry in raw.get("runs", []) or []:
        name = entry.get("name")
        graphs_raw = entry.get("graphs") or []
        if not name or not graphs_raw:
            log.warning(f"skipping incomplete manifest entry: {entry!r}")
            continue

        graphs = [(base / g).expanduser() for g in graphs_raw]
        pairs_raw = entry.get("pairs")
        pairs = (base / pairs_raw).expanduser() if pairs_raw else None

        runs.append(
            BenchRun(
                name=str(name),
                graphs=graphs,
                pairs=pairs,
                algos=list(entry.get("algos") or ["tmda"]),
                queues=list(entry.get("queues") or ["heap"]),
                unit_component=bool(entry.get("unit_component", False)),
                shortcuts=bool(entry.get("shortcuts", True)),
            )
        )

    time_limit = raw.get("time_limit")
    return BenchManifest(
        runs=runs,
        baseline=raw.get("baseline"),
        time_limit=float(time_limit) if time_limit is not None else None,
    )
