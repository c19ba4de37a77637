"""Graph containers and the directed/undirected mappings.

A DAG is treated as an undirected graph plus per-node order metadata
(``rank``).  :func:`underlying_undirected` drops the directions and
:func:`direct_edges` puts them back from the ranks.  Node ids are dense
integers in ``[0, n_nodes)`` and edge lists are stored sorted, so an edge's
position doubles as its bit index in cycle incidence vectors.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    DirectedCycleDetected,
    DuplicateEdge,
    IncomparableAdjacentPair,
    InvalidGraph,
    RankViolation,
    SelfLoop,
)

Edge = tuple[int, int]


def _check_nodes(n_nodes: int, edges: Iterable[Edge]) -> None:
    if n_nodes < 0:
        raise InvalidGraph(f"n_nodes must be non-negative, got {n_nodes}")
    for u, v in edges:
        if not (0 <= u < n_nodes and 0 <= v < n_nodes):
            raise InvalidGraph(f"edge ({u}, {v}) references a node outside [0, {n_nodes})")
        if u == v:
            raise SelfLoop(u)


def _topological_order(n_nodes: int, edges: Sequence[Edge]) -> list[int]:
    succ: list[list[int]] = [[] for _ in range(n_nodes)]
    indeg = [0] * n_nodes
    for u, v in edges:
        succ[u].append(v)
        indeg[v] += 1
    queue = deque(v for v in range(n_nodes) if indeg[v] == 0)
    order = []
    while queue:
        u = queue.popleft()
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    if len(order) < n_nodes:
        raise DirectedCycleDetected(_find_directed_cycle(n_nodes, edges, indeg))
    return order


def _find_directed_cycle(n_nodes: int, edges: Sequence[Edge], indeg: list[int]) -> list[int]:
    # Nodes left with positive in-degree after Kahn's pass all have a
    # predecessor inside the leftover set, so walking backwards must repeat.
    pred: dict[int, int] = {}
    for u, v in edges:
        if indeg[u] > 0 and indeg[v] > 0:
            pred.setdefault(v, u)
    start = min(pred)
    seen: dict[int, int] = {}
    walk = []
    node = start
    while node not in seen:
        seen[node] = len(walk)
        walk.append(node)
        node = pred[node]
    cycle = walk[seen[node]:]
    cycle.reverse()
    return cycle


@dataclass(frozen=True)
class OrderedDag:
    """Directed acyclic graph with an order value per node.

    Construction canonicalises the edge list (sorted, tuples) and rejects
    self-loops, duplicate edges and directed cycles.  When ``rank`` is omitted
    the node id is used, unless some edge points from a larger to a smaller id,
    in which case the position in a topological order is used instead.
    Explicit ranks must increase along every edge.
    """

    n_nodes: int
    edges: tuple[Edge, ...]
    rank: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        edges = tuple(sorted((int(u), int(v)) for u, v in self.edges))
        _check_nodes(self.n_nodes, edges)
        for a, b in zip(edges, edges[1:]):
            if a == b:
                raise DuplicateEdge(a)
        order = _topological_order(self.n_nodes, edges)
        if self.rank is None:
            if all(u < v for u, v in edges):
                rank = tuple(range(self.n_nodes))
            else:
                pos = [0] * self.n_nodes
                for i, v in enumerate(order):
                    pos[v] = i
                rank = tuple(pos)
        else:
            rank = tuple(self.rank)
            if len(rank) != self.n_nodes:
                raise InvalidGraph(f"expected {self.n_nodes} ranks, got {len(rank)}")
            for u, v in edges:
                if not rank[u] < rank[v]:
                    raise RankViolation((u, v))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "_topo", tuple(order))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        succ: list[list[int]] = [[] for _ in range(self.n_nodes)]
        for u, v in self.edges:
            succ[u].append(v)
        return tuple(tuple(s) for s in succ)

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        pred: list[list[int]] = [[] for _ in range(self.n_nodes)]
        for u, v in self.edges:
            pred[v].append(u)
        return tuple(tuple(sorted(p)) for p in pred)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def topological_order(self) -> tuple[int, ...]:
        return self._topo  # type: ignore[attr-defined]

    def sources(self) -> list[int]:
        return [v for v in range(self.n_nodes) if not self.predecessors[v]]

    def sinks(self) -> list[int]:
        return [v for v in range(self.n_nodes) if not self.successors[v]]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edge_set


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph; edges stored as sorted ``(u, v)`` with ``u < v``."""

    n_nodes: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        edges = tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        _check_nodes(self.n_nodes, edges)
        for a, b in zip(edges, edges[1:]):
            if a == b:
                raise DuplicateEdge(a)
        object.__setattr__(self, "edges", edges)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per node, ``(neighbour, edge index)`` pairs in increasing edge index."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_nodes)]
        for i, (u, v) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return tuple(tuple(a) for a in adj)

    def index_of(self, u: int, v: int) -> int:
        return self.edge_index[(u, v) if u < v else (v, u)]


def from_edge_list(
    pairs: Iterable[Sequence[int]],
    ranks: Mapping[int, int] | Sequence[int] | None = None,
    n_nodes: int | None = None,
) -> OrderedDag:
    """Build an :class:`OrderedDag` from directed ``(u, v)`` pairs.

    ``n_nodes`` defaults to one more than the largest id seen (or in ``ranks``).
    """
    edges = [(int(u), int(v)) for u, v in pairs]
    if n_nodes is None:
        n_nodes = 1 + max((max(e) for e in edges), default=-1)
        if isinstance(ranks, Mapping) and ranks:
            n_nodes = max(n_nodes, 1 + max(ranks))
        elif ranks is not None and not isinstance(ranks, Mapping):
            n_nodes = max(n_nodes, len(ranks))
    rank_tuple = None
    if isinstance(ranks, Mapping):
        rank_tuple = tuple(ranks.get(v, v) for v in range(n_nodes))
    elif ranks is not None:
        rank_tuple = tuple(ranks)
    return OrderedDag(n_nodes, tuple(edges), rank_tuple)


def underlying_undirected(dag: OrderedDag) -> UndirectedGraph:
    return UndirectedGraph(dag.n_nodes, dag.edges)


def direct_edges(g: UndirectedGraph, ranks: Sequence[int]) -> OrderedDag:
    """Orient every edge from the lower-ranked to the higher-ranked endpoint."""
    directed = []
    for u, v in g.edges:
        if ranks[u] < ranks[v]:
            directed.append((u, v))
        elif ranks[v] < ranks[u]:
            directed.append((v, u))
        else:
            raise IncomparableAdjacentPair(u, v)
    return OrderedDag(g.n_nodes, tuple(directed), tuple(ranks))


def node_heights(dag: OrderedDag) -> tuple[int, ...]:
    """Longest directed path length from any source to each node."""
    height = [0] * dag.n_nodes
    succ = dag.successors
    for u in dag.topological_order():
        hu = height[u] + 1
        for v in succ[u]:
            if height[v] < hu:
                height[v] = hu
    return tuple(height)


def connected_components(g: UndirectedGraph) -> tuple[int, list[int]]:
    """Union-find component count and a label per node (labels are 0..n_c-1)."""
    parent = list(range(g.n_nodes))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    labels = []
    relabel: dict[int, int] = {}
    for v in range(g.n_nodes):
        labels.append(relabel.setdefault(find(v), len(relabel)))
    return len(relabel), labels
