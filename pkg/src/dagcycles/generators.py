"""Model DAG families: lattice, Russian doll, Erdos-Renyi DAG and Price model.

Every generator returns an :class:`OrderedDag` whose node ids already follow
the model's natural order (coordinates or arrival time), so ranks equal ids.

Random models draw from numpy's PCG64 bit generator.  A realisation is
identified by ``(seed, index)``: its stream is ``SeedSequence(seed,
spawn_key=(index,))``, which is stable across platforms and numpy versions
that keep PCG64.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSpec
from .graph import OrderedDag

MODEL_KINDS = ("lattice", "doll", "er", "price")


def rng_for(seed: int | None, index: int = 0) -> np.random.Generator:
    """Generator for realisation ``index`` of an ensemble seeded with ``seed``."""
    ss = np.random.SeedSequence(seed, spawn_key=(index,))
    return np.random.Generator(np.random.PCG64(ss))


def lattice_dag(L: int) -> OrderedDag:
    """L x L grid; node (x, y) has id y*L + x and edges point to (x+1, y), (x, y+1)."""
    if L < 2:
        raise InvalidSpec(f"lattice needs L >= 2, got {L}")
    edges = []
    for y in range(L):
        for x in range(L):
            i = y * L + x
            if x + 1 < L:
                edges.append((i, i + 1))
            if y + 1 < L:
                edges.append((i, i + L))
    return OrderedDag(L * L, tuple(edges))


def _doll_paper_edges(d: int) -> list[tuple[int, int]]:
    edges = []
    for k in range(1, d + 1):
        prev_source = max(3 * k - 5, 0)
        edges += [
            (3 * k - 2, prev_source),
            (3 * k - 2, 3 * k - 1),
            (3 * k - 1, 3 * k),
            (3 * k - 3, 3 * k),
        ]
    return edges


def russian_doll_labels(d: int) -> list[int]:
    """``labels[i]`` is the node id assigned to the construction's node u_i.

    Each step adds a new global source below the previous one, so the
    construction's own indices are not a topological order.  Ids are assigned
    by (height, construction index).
    """
    n = 1 + 3 * d
    succ: list[list[int]] = [[] for _ in range(n)]
    indeg = [0] * n
    for u, v in _doll_paper_edges(d):
        succ[u].append(v)
        indeg[v] += 1
    height = [0] * n
    ready = [v for v in range(n) if indeg[v] == 0]
    while ready:
        u = ready.pop()
        for v in succ[u]:
            height[v] = max(height[v], height[u] + 1)
            indeg[v] -= 1
            if indeg[v] == 0:
                ready.append(v)
    order = sorted(range(n), key=lambda i: (height[i], i))
    labels = [0] * n
    for new_id, i in enumerate(order):
        labels[i] = new_id
    return labels


def russian_doll(d: int) -> OrderedDag:
    """Russian doll R_d: 1 + 3d nodes, 4d edges, height 2d, one new 6-cycle per step.

    R_1 is the 4-cycle on u_0..u_3 (the "previous source" of step 1 is u_0).
    """
    if d < 1:
        raise InvalidSpec(f"russian doll needs d >= 1, got {d}")
    labels = russian_doll_labels(d)
    edges = tuple((labels[u], labels[v]) for u, v in _doll_paper_edges(d))
    return OrderedDag(1 + 3 * d, edges)


def er_dag(n: int, p: float, seed: int | None = None, *, rng: np.random.Generator | None = None) -> OrderedDag:
    """Each pair i < j becomes the edge i -> j independently with probability p."""
    if n < 1:
        raise InvalidSpec(f"er_dag needs n >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise InvalidSpec(f"p must lie in [0, 1], got {p}")
    rng = rng if rng is not None else rng_for(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    edges = tuple(zip(iu[keep].tolist(), ju[keep].tolist()))
    return OrderedDag(n, edges)


def price_dag(
    n: int,
    m: int,
    delta: float | None = None,
    seed: int | None = None,
    *,
    rng: np.random.Generator | None = None,
    distinct_targets: bool = True,
) -> OrderedDag:
    """Price's cumulative-advantage citation model.

    Growth starts from the directed path 0 -> 1 -> ... -> m.  Each new node t
    receives edges from m distinct older nodes; each draw picks node v with
    probability ``delta * k_out(v) / E + (1 - delta) / N``, duplicates are
    redrawn.  With ``distinct_targets=False`` exactly m draws are made and
    repeats collapse into one edge, so a node may cite fewer than m others.
    ``delta`` defaults to m / (1 + m).
    """
    if m < 1 or n <= m:
        raise InvalidSpec(f"price_dag needs n > m >= 1, got n={n}, m={m}")
    if delta is None:
        delta = m / (1 + m)
    if not 0.0 <= delta < 1.0:
        raise InvalidSpec(f"delta must lie in [0, 1), got {delta}")
    rng = rng if rng is not None else rng_for(seed)
    edges = [(i, i + 1) for i in range(m)]
    # one entry per edge, holding its tail: a uniform pick is a k_out-weighted pick
    tails = list(range(m))
    for t in range(m + 1, n):
        chosen: set[int] = set()
        draws = 0
        while len(chosen) < m and (distinct_targets or draws < m):
            draws += 1
            if rng.random() < delta:
                v = tails[int(rng.integers(len(tails)))]
            else:
                v = int(rng.integers(t))
            chosen.add(v)
        for v in sorted(chosen):
            edges.append((v, t))
            tails.append(v)
    return OrderedDag(n, tuple(edges))


def price_delta_from_c(m: int, c: float) -> float:
    """delta for a given random-attachment level c = m (1 - delta)."""
    return 1.0 - c / m


@dataclass(frozen=True)
class ModelSpec:
    """A model family with its parameters, e.g. ``ModelSpec("er", {"n": 100, "p": 0.3})``."""

    kind: str
    params: dict = field(default_factory=dict)
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in MODEL_KINDS:
            raise InvalidSpec(f"unknown model {self.kind!r}; expected one of {MODEL_KINDS}")
        required = {"lattice": ("L",), "doll": ("d",), "er": ("n", "p"), "price": ("n", "m")}[self.kind]
        missing = [k for k in required if k not in self.params]
        if missing:
            raise InvalidSpec(f"model {self.kind!r} is missing parameters {missing}")

    @property
    def is_random(self) -> bool:
        return self.kind in ("er", "price")

    def build(self, realization: int = 0) -> OrderedDag:
        p = self.params
        if self.kind == "lattice":
            return lattice_dag(int(p["L"]))
        if self.kind == "doll":
            return russian_doll(int(p["d"]))
        rng = rng_for(self.seed, realization)
        if self.kind == "er":
            return er_dag(int(p["n"]), float(p["p"]), rng=rng)
        delta = p.get("delta")
        if delta is None and p.get("c") is not None:
            delta = price_delta_from_c(int(p["m"]), float(p["c"]))
        return price_dag(int(p["n"]), int(p["m"]), None if delta is None else float(delta), rng=rng)

    def describe(self) -> str:
        args = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()) if v is not None)
        return f"{self.kind} {args}" + (f" seed={self.seed}" if self.is_random else "")
