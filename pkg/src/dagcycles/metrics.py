"""Per-cycle and per-basis metrics: size, path balance, height, stretch, edge participation.

All standard deviations are population (ddof=0) standard deviations.
"""

from __future__ import annotations

import math
import statistics
import warnings
from dataclasses import asdict, dataclass
from typing import Sequence

from .basis import Cycle, CycleBasis
from .classify import CycleClass, DirectedCycle, NodeRole, classify, directed_image
from .errors import FeedbackCycleHasNoPaths
from .graph import OrderedDag, UndirectedGraph, node_heights
from .reduction import is_transitively_reduced


def cycle_paths(dc: DirectedCycle) -> list[int]:
    """Lengths of the maximal coherently directed runs, starting from the first source."""
    roles = dc.roles()
    if NodeRole.SOURCE not in roles:
        raise FeedbackCycleHasNoPaths("a feedback cycle is one directed loop, not source-to-sink paths")
    L = len(roles)
    start = roles.index(NodeRole.SOURCE)
    lengths = []
    run = 0
    for k in range(L):
        i = (start + k) % L
        if k and roles[i] is not NodeRole.NEUTRAL:
            lengths.append(run)
            run = 0
        run += 1
    lengths.append(run)
    return lengths


def balance(path_lengths: Sequence[int]) -> float:
    """Coefficient of variation (population std / mean)."""
    if not path_lengths:
        raise ValueError("balance needs at least one path length")
    return statistics.pstdev(path_lengths) / statistics.fmean(path_lengths)


def cycle_height(cycle, heights: Sequence[int]) -> float:
    nodes = getattr(cycle, "nodes", cycle)
    return statistics.fmean(heights[v] for v in nodes)


def stretch(cycle, heights: Sequence[int]) -> int:
    hs = [heights[v] for v in getattr(cycle, "nodes", cycle)]
    return max(hs) - min(hs)


def edge_participation(basis: CycleBasis, g: UndirectedGraph) -> tuple[float, float, list[int]]:
    """(mean, population std, per-edge counts) of basis cycles through each edge."""
    counts = [0] * g.n_edges
    for c in basis.cycles:
        for e in c.edge_indices():
            counts[e] += 1
    if not counts:
        return 0.0, 0.0, counts
    return statistics.fmean(counts), statistics.pstdev(counts), counts


@dataclass(frozen=True)
class CycleRecord:
    index: int
    size: int
    balance: float
    height: float
    stretch: int
    cls: CycleClass
    path_lengths: tuple[int, ...]
    n_sources: int
    nodes: tuple[int, ...]

    def as_row(self) -> dict:
        return {
            "index": self.index,
            "size": self.size,
            "class": self.cls.value,
            "n_sources": self.n_sources,
            "balance": self.balance,
            "height": self.height,
            "stretch": self.stretch,
            "path_lengths": " ".join(map(str, self.path_lengths)),
            "nodes": " ".join(map(str, self.nodes)),
        }


def cycle_record(index: int, cycle: Cycle, dag: OrderedDag, heights: Sequence[int]) -> CycleRecord:
    dc = directed_image(cycle, dag)
    cls = classify(dc)
    if cls is CycleClass.FEEDBACK:
        paths: list[int] = []
        b = math.nan
    else:
        paths = cycle_paths(dc)
        b = balance(paths)
    return CycleRecord(
        index=index,
        size=cycle.weight,
        balance=b,
        height=cycle_height(cycle, heights),
        stretch=stretch(cycle, heights),
        cls=cls,
        path_lengths=tuple(paths),
        n_sources=sum(r is NodeRole.SOURCE for r in dc.roles()),
        nodes=cycle.nodes,
    )


@dataclass(frozen=True)
class BasisSummary:
    d: int
    mean_size: float
    std_size: float
    max_size: int
    mean_balance: float
    std_balance: float
    max_balance: float
    mean_stretch: float
    std_stretch: float
    max_stretch: int
    mean_height: float
    std_height: float
    max_height: float
    n_diamonds: int
    n_mixers: int
    n_shortcuts: int
    n_feedback: int
    ep_mean: float
    ep_std: float

    def as_dict(self) -> dict:
        return asdict(self)


def _stats(values: Sequence[float]) -> tuple[float, float, float]:
    if not values:
        return 0.0, 0.0, 0
    return statistics.fmean(values), statistics.pstdev(values), max(values)


def basis_records(basis: CycleBasis, dag: OrderedDag, heights: Sequence[int] | None = None) -> list[CycleRecord]:
    if heights is None:
        heights = node_heights(dag)
    return [cycle_record(i, c, dag, heights) for i, c in enumerate(basis.cycles)]


def summarize(records: Sequence[CycleRecord], basis: CycleBasis) -> BasisSummary:
    sizes = [r.size for r in records]
    balances = [r.balance for r in records if not math.isnan(r.balance)]
    stretches = [r.stretch for r in records]
    heights = [r.height for r in records]
    counts = {c: 0 for c in CycleClass}
    for r in records:
        counts[r.cls] += 1
    ep_mean, ep_std, _ = edge_participation(basis, basis.graph)
    ms, ss, xs = _stats(sizes)
    mb, sb, xb = _stats(balances)
    mt, st, xt = _stats(stretches)
    mh, sh, xh = _stats(heights)
    return BasisSummary(
        d=len(records),
        mean_size=ms, std_size=ss, max_size=int(xs),
        mean_balance=mb, std_balance=sb, max_balance=float(xb),
        mean_stretch=mt, std_stretch=st, max_stretch=int(xt),
        mean_height=mh, std_height=sh, max_height=float(xh),
        n_diamonds=counts[CycleClass.DIAMOND],
        n_mixers=counts[CycleClass.MIXER],
        n_shortcuts=counts[CycleClass.SHORTCUT],
        n_feedback=counts[CycleClass.FEEDBACK],
        ep_mean=ep_mean,
        ep_std=ep_std,
    )


def basis_summary(basis: CycleBasis, dag: OrderedDag) -> BasisSummary:
    """Aggregate the per-cycle metrics of ``basis``; heights come from the whole ``dag``."""
    if not is_transitively_reduced(dag):
        warnings.warn("basis_summary is meant for transitively reduced DAGs", stacklevel=2)
    return summarize(basis_records(basis, dag), basis)
