"""Edge-list files, CSV tables and JSON reports.

Edge-list format (UTF-8 text):

* one directed edge per line: ``u<TAB>v`` with base-10 node ids;
* optional third and fourth columns give the ranks of ``u`` and ``v``
  (a node's rank must agree across lines; unranked nodes rank by id);
* lines starting with ``#`` are comments, blank lines are skipped;
* the comment ``# nodes: N`` fixes the node count so isolated trailing
  nodes survive a round trip, and ``# rank: v r`` gives the rank of a node
  that appears on no edge line.
"""

from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import ParseError
from .graph import OrderedDag

_NODES_RE = re.compile(r"^#\s*nodes:\s*(\d+)\s*$")
_RANK_RE = re.compile(r"^#\s*rank:\s*(\d+)\s+(-?\d+)\s*$")


def parse_edge_list(text: str) -> OrderedDag:
    edges = []
    ranks: dict[int, int] = {}
    n_nodes = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _NODES_RE.match(line)
            if m:
                n_nodes = int(m.group(1))
            m = _RANK_RE.match(line)
            if m:
                node, r = int(m.group(1)), int(m.group(2))
                if ranks.setdefault(node, r) != r:
                    raise ParseError(f"conflicting ranks for node {node}", lineno)
            continue
        cols = raw.rstrip("\r\n").split("\t")
        if len(cols) not in (2, 4):
            raise ParseError(f"expected 2 or 4 tab-separated columns, got {len(cols)}", lineno)
        try:
            vals = [int(c.strip()) for c in cols]
        except ValueError:
            raise ParseError(f"non-integer field in {raw!r}", lineno) from None
        u, v = vals[0], vals[1]
        if u < 0 or v < 0:
            raise ParseError("node ids must be non-negative", lineno)
        edges.append((u, v))
        if len(vals) == 4:
            for node, r in ((u, vals[2]), (v, vals[3])):
                if ranks.setdefault(node, r) != r:
                    raise ParseError(f"conflicting ranks for node {node}", lineno)
    top = 1 + max((max(e) for e in edges), default=-1)
    if n_nodes is None:
        n_nodes = max(top, 1 + max(ranks, default=-1))
    elif n_nodes < top:
        raise ParseError(f"'# nodes: {n_nodes}' is smaller than the largest node id {top - 1}")
    rank = tuple(ranks.get(v, v) for v in range(n_nodes)) if ranks else None
    return OrderedDag(n_nodes, tuple(edges), rank)


def read_edge_list(path: str | Path) -> OrderedDag:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def format_edge_list(dag: OrderedDag, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"# nodes: {dag.n_nodes}")
    with_ranks = dag.rank != tuple(range(dag.n_nodes))
    if with_ranks:
        touched = {x for e in dag.edges for x in e}
        lines.extend(f"# rank: {v} {dag.rank[v]}" for v in range(dag.n_nodes) if v not in touched)
    for u, v in dag.edges:
        if with_ranks:
            lines.append(f"{u}\t{v}\t{dag.rank[u]}\t{dag.rank[v]}")
        else:
            lines.append(f"{u}\t{v}")
    return "\n".join(lines) + "\n"


def write_edge_list(dag: OrderedDag, path: str | Path, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_edge_list(dag, comments), encoding="utf-8")


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def rows_to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow(["" if r.get(c) is None else _fmt(r[c]) for c in columns])
    return buf.getvalue()


def matrix_to_csv(m: np.ndarray) -> str:
    return "".join(",".join(str(int(x)) for x in row) + "\n" for row in np.asarray(m))


def dump_json(obj, fh: TextIO | None = None) -> str:
    """Deterministic JSON: sorted keys, floats as shortest round-trip repr."""
    text = json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"
    if fh is not None:
        fh.write(text)
    return text
