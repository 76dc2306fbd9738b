"""CSV cache for preprocessing results.

A fingerprint row, one row per node and a trailing bound row::

    fingerprint,3f1c...
    node,reachable,pi_1,pi_2,beta_1,beta_2,parent_arc,tree_1,tree_2
    0,1,1,3,4,10,1,1,10
    ...
    bound,5,11

The fingerprint is a sha256 over the instance's size, endpoints and every
arc with its costs; a cache whose fingerprint differs from the instance is
stale and never read. `beta_*` columns are empty for d > 2 and every value
column is empty for nodes that cannot reach the target. `tree_*` and
`parent_arc` describe the first preprocessing order's tree, which is all
the shortcut logic needs. The bound row is `bound` alone for an infeasible
instance.
"""

from __future__ import annotations

import csv
import hashlib
import logging
from pathlib import Path
from typing import List, Optional

from .errors import InstanceFormatError
from .model import CostVector, Instance
from .preprocessing import REVERSE, LexTree, PreprocessData, preprocess, preprocessing_orders

log = logging.getLogger("pareto_route.cache")

FINGERPRINT = "fingerprint"


def instance_fingerprint(inst: Instance) -> str:
    digest = hashlib.sha256()
    digest.update(
        f"n={inst.node_count} m={inst.arc_count} d={inst.dimension} "
        f"s={inst.source} t={inst.target}\n".encode()
    )
    for a in inst.graph.arcs:
        digest.update(f"{a.tail} {a.head} {' '.join(map(str, a.cost))}\n".encode())
    return digest.hexdigest()


def _header(d: int) -> List[str]:
    return (
        ["node", "reachable"]
        + [f"pi_{i}" for i in range(1, d + 1)]
        + ["beta_1", "beta_2", "parent_arc"]
        + [f"tree_{i}" for i in range(1, d + 1)]
    )


def _cells(vec: Optional[CostVector], d: int) -> List[str]:
    return [str(c) for c in vec] if vec is not None else [""] * d


def save_preprocess(pre: PreprocessData, inst: Instance, path: Path) -> None:
    d = inst.dimension
    tree = pre.shortcut
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([FINGERPRINT, instance_fingerprint(inst)])
        writer.writerow(_header(d))
        for v, pi in enumerate(pre.pi):
            beta = pre.beta_v[v] if pre.beta_v is not None else None
            parent = tree.parent_arc[v] if tree is not None else None
            cost = tree.tree_cost[v] if tree is not None else None
            writer.writerow(
                [v, 1 if pre.reachable[v] else 0]
                + _cells(pi, d)
                + _cells(beta, 2)
                + ["" if parent is None else parent]
                + _cells(cost, d)
            )
        writer.writerow(["bound"] + ([str(b) for b in pre.beta_t] if pre.beta_t else []))
    log.debug(f"wrote preprocessing cache {path}")


def _vec(cells: List[str], path: Path, line_no: int) -> Optional[CostVector]:
    if all(c == "" for c in cells):
        return None
    try:
        return tuple(int(c) for c in cells)
    except ValueError as e:
        raise InstanceFormatError(f"{path}:{line_no}: bad cost cell in {cells!r}") from e


def load_preprocess(path: Path, inst: Instance) -> PreprocessData:
    """Read a cache written by `save_preprocess` for the same instance.

    Raises:
        InstanceFormatError: the file was written for other instance contents,
            or does not match the instance's size or dimension.
    """

    d, n = inst.dimension, inst.node_count
    with path.open("r", encoding="utf-8", newline="") as f:
        rows = [r for r in csv.reader(f) if r]

    if not rows or rows[0][:1] != [FINGERPRINT]:
        raise InstanceFormatError(f"{path}: missing fingerprint row")
    if rows[0][1:] != [instance_fingerprint(inst)]:
        raise InstanceFormatError(f"{path}: written for different instance contents")
    rows = rows[1:]
    if not rows or rows[0] != _header(d):
        raise InstanceFormatError(f"{path}: header does not match a d = {d} cache")
    if len(rows) != n + 2 or rows[-1][:1] != ["bound"]:
        raise InstanceFormatError(f"{path}: expected {n} node rows and a bound row")

    pi: List[Optional[CostVector]] = []
    beta_v: List[Optional[CostVector]] = []
    reachable: List[bool] = []
    parents: List[Optional[int]] = []
    tree_cost: List[Optional[CostVector]] = []

    for line_no, row in enumerate(rows[1:-1], start=3):
        if len(row) != len(rows[0]) or row[0] != str(line_no - 3):
            raise InstanceFormatError(f"{path}:{line_no}: malformed node row")
        reachable.append(row[1] == "1")
        pi.append(_vec(row[2 : 2 + d], path, line_no))
        beta_v.append(_vec(row[2 + d : 4 + d], path, line_no))
        parents.append(int(row[4 + d]) if row[4 + d] else None)
        tree_cost.append(_vec(row[5 + d : 5 + 2 * d], path, line_no))

    beta_t = _vec(rows[-1][1:], path, len(rows) + 1) if len(rows[-1]) > 1 else None
    shortcut = LexTree(
        order=preprocessing_orders(d)[0],
        root=inst.target,
        direction=REVERSE,
        parent_arc=tuple(parents),
        tree_cost=tuple(tree_cost),
    )
    return PreprocessData(
        pi=pi,
        beta_v=beta_v if d == 2 else None,
        beta_t=beta_t,
        shortcut=shortcut,
        reachable=reachable,
        trees=[shortcut],
        feasible=beta_t is not None,
    )


def cache_path(cache_dir: Path, inst: Instance) -> Path:
    name = inst.name or "instance"
    return cache_dir / f"{name}.s{inst.source + 1}.t{inst.target + 1}.pre.csv"


def cached_preprocess(inst: Instance, cache_dir: Optional[Path] = None) -> PreprocessData:
    """Preprocess `inst`, reading and writing `cache_dir` when one is configured.

    An unreadable cache file is logged and recomputed.
    """

    if cache_dir is None:
        return preprocess(inst)
    path = cache_path(cache_dir, inst)
    if path.exists():
        try:
            pre = load_preprocess(path, inst)
            log.debug(f"loaded preprocessing cache {path}")
            return pre
        except InstanceFormatError as e:
            log.warning(f"ignoring stale preprocessing cache: {e}")
    pre = preprocess(inst)
    cache_dir.mkdir(parents=True, exist_ok=True)
    save_preprocess(pre, inst, path)
    return pre
