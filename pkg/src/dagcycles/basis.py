"""Cycle space over GF(2) and minimum cycle bases.

Cycles are stored as packed edge-incidence bit vectors (Python ints indexed
by the canonical edge index of an :class:`UndirectedGraph`) together with a
cyclic node sequence.

``minimum_cycle_basis`` is De Pina's support-vector algorithm: the i-th
cycle is the shortest cycle with odd inner product against support vector
S_i, found as a shortest v+ -> v- path in the signed double cover of the
graph.  ``minimum_diamond_basis`` sifts a linear-size set of diamond
candidates with the same support-vector scheme.  ``brute_force_mcb`` is the
exhaustive oracle for small graphs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from . import gf2
from .errors import DagCycError, MultipleSourcesWithoutVirtualRoot, TooLarge
from .graph import OrderedDag, UndirectedGraph, connected_components, underlying_undirected
from .reduction import is_transitively_reduced

BRUTE_FORCE_MAX_EDGES = 20


class BasisInvariantError(DagCycError, RuntimeError):
    """An internal invariant of a basis computation failed."""


@dataclass(frozen=True)
class Cycle:
    edge_vec: int
    nodes: tuple[int, ...]

    @property
    def weight(self) -> int:
        return len(self.nodes)

    def edge_indices(self) -> list[int]:
        return gf2.bits(self.edge_vec)

    @classmethod
    def from_edge_vector(
        cls, g: UndirectedGraph, vec: int, start: int | None = None
    ) -> Cycle:
        """Recover the node order of a simple cycle given its edge set.

        Raises ``ValueError`` if ``vec`` is not a single connected 2-regular
        subgraph.
        """
        eids = gf2.bits(vec)
        if len(eids) < 3:
            raise ValueError("a cycle needs at least three edges")
        incident: dict[int, list[int]] = {}
        for e in eids:
            u, v = g.edges[e]
            incident.setdefault(u, []).append(v)
            incident.setdefault(v, []).append(u)
        if any(len(nb) != 2 for nb in incident.values()):
            raise ValueError("edge set is not 2-regular")
        node = min(incident) if start is None else start
        if node not in incident:
            raise ValueError(f"start node {node} is not on the cycle")
        nodes = [node]
        prev, cur = node, min(incident[node])
        while cur != node:
            nodes.append(cur)
            a, b = incident[cur]
            prev, cur = cur, (b if a == prev else a)
        if len(nodes) != len(eids):
            raise ValueError("edge set is not connected")
        return cls(vec, tuple(nodes))


@dataclass(frozen=True)
class CycleBasis:
    graph: UndirectedGraph
    cycles: tuple[Cycle, ...] = field(default=())

    @property
    def dimension(self) -> int:
        return len(self.cycles)

    @property
    def total_weight(self) -> int:
        return sum(c.weight for c in self.cycles)

    def weights(self) -> list[int]:
        return [c.weight for c in self.cycles]

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)


def cycle_space_dimension(g: UndirectedGraph) -> int:
    """Circuit rank E - N + n_c."""
    n_c, _ = connected_components(g)
    return g.n_edges - g.n_nodes + n_c


def spanning_forest(g: UndirectedGraph) -> set[int]:
    """Edge indices of a BFS spanning forest (roots: lowest id per component)."""
    seen = [False] * g.n_nodes
    tree: set[int] = set()
    adj = g.adjacency
    for root in range(g.n_nodes):
        if seen[root]:
            continue
        seen[root] = True
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for v, e in adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        tree.add(e)
                        nxt.append(v)
            frontier = nxt
    return tree


def _initial_support(g: UndirectedGraph, rng: np.random.Generator | None = None) -> list[int]:
    tree = spanning_forest(g)
    nontree = [e for e in range(g.n_edges) if e not in tree]
    if rng is not None:
        nontree = [nontree[i] for i in rng.permutation(len(nontree))]
    return [1 << e for e in nontree]


class _SignedCover:
    """Signed double cover of ``g``: node v+ is ``v``, node v- is ``v + N``."""

    def __init__(self, g: UndirectedGraph):
        self.g = g
        n = g.n_nodes
        ends = np.array(g.edges, dtype=np.int64).reshape(-1, 2)
        self._u = ends[:, 0]
        self._v = ends[:, 1]
        self._ones = np.ones(2 * g.n_edges, dtype=np.int8)
        self._plus = np.arange(n)

    def shortest_odd_cycle(self, support: int) -> tuple[int, tuple[int, ...]]:
        """Shortest cycle C with <C, support> = 1.

        Ties: lowest start node, then lexicographically smallest sequence of
        edge indices along the v+ -> v- path.
        """
        g = self.g
        n, m = g.n_nodes, g.n_edges
        cross = np.zeros(m, dtype=bool)
        cross[gf2.bits(support)] = True
        shift = np.where(cross, n, 0)
        rows = np.concatenate([self._u, self._u + n])
        cols = np.concatenate([self._v + shift, self._v + n - shift])
        cover = csr_matrix((self._ones, (rows, cols)), shape=(2 * n, 2 * n))
        dist = shortest_path(cover, method="D", directed=False, unweighted=True, indices=self._plus)
        lengths = dist[self._plus, self._plus + n]
        best = lengths.min()
        if not np.isfinite(best):
            raise BasisInvariantError("support vector is orthogonal to every cycle")
        start = int(np.flatnonzero(lengths == best)[0])
        # dist(x, start-) equals dist(start+, x with layer flipped)
        row = dist[start]
        to_target = np.concatenate([row[n:], row[:n]])
        adj = g.adjacency
        node, layer, remaining = start, 0, int(best)
        vec = 0
        nodes = [start]
        while remaining:
            for nbr, e in adj[node]:
                nl = layer ^ int(cross[e])
                if to_target[nbr + nl * n] == remaining - 1:
                    break
            else:  # pragma: no cover - distances are exact
                raise BasisInvariantError("broken shortest-path walk")
            vec ^= 1 << e
            node, layer, remaining = nbr, nl, remaining - 1
            nodes.append(node)
        if vec.bit_count() != int(best) or nodes[-1] != start:
            raise BasisInvariantError("shortest odd walk is not a simple cycle")
        return vec, tuple(nodes[:-1])


def minimum_cycle_basis(g: UndirectedGraph, seed=None, *, shuffle_ties: bool = False) -> CycleBasis:
    """De Pina's minimum cycle basis.

    ``seed`` permutes the initial order of the non-tree edges that seed the
    support vectors; ``None`` keeps edge-index order.  Any fixed seed gives a
    fixed basis.

    Ties between equally short cycles are broken canonically (lowest start
    node, then smallest edge-index path).  That is a strict total order on
    cycles, and under it the result is the greedy basis for that order
    whatever the support order, so the seed alone never changes the output.
    ``shuffle_ties=True`` additionally relabels the nodes by a seeded random
    permutation before the run (mapping cycles back afterwards), which
    randomises the spanning tree and every tie.

    Cycles are returned sorted by (weight, edge vector), so equal cycle sets
    give identical bases.
    """
    rng = None if seed is None else np.random.default_rng(seed)
    if not shuffle_ties:
        return CycleBasis(g, _canonical_order(_de_pina(g, rng)))
    if rng is None:
        rng = np.random.default_rng()
    perm = rng.permutation(g.n_nodes)
    h = UndirectedGraph(g.n_nodes, tuple((int(perm[u]), int(perm[v])) for u, v in g.edges))
    inv = np.argsort(perm)
    back = [g.index_of(int(inv[u]), int(inv[v])) for u, v in h.edges]
    cycles = []
    for c in _de_pina(h, rng):
        vec = 0
        for e in gf2.bits(c.edge_vec):
            vec |= 1 << back[e]
        cycles.append(_rotate_to_min(Cycle(vec, tuple(int(inv[v]) for v in c.nodes))))
    return CycleBasis(g, _canonical_order(cycles))


def _canonical_order(cycles) -> tuple[Cycle, ...]:
    return tuple(sorted(cycles, key=lambda c: (c.weight, c.edge_vec)))


def _rotate_to_min(c: Cycle) -> Cycle:
    """Start at the smallest node and step to its smaller cycle neighbour."""
    k = c.nodes.index(min(c.nodes))
    nodes = c.nodes[k:] + c.nodes[:k]
    if nodes[-1] < nodes[1]:
        nodes = nodes[:1] + nodes[:0:-1]
    return Cycle(c.edge_vec, nodes)


def _de_pina(g: UndirectedGraph, rng: np.random.Generator | None) -> tuple[Cycle, ...]:
    support = _initial_support(g, rng)
    if not support:
        return ()
    cover = _SignedCover(g)
    cycles = []
    d = len(support)
    for i in range(d):
        s_i = support[i]
        vec, nodes = cover.shortest_odd_cycle(s_i)
        cycles.append(Cycle(vec, nodes))
        for j in range(i + 1, d):
            if gf2.parity(vec, support[j]):
                support[j] ^= s_i
    return tuple(cycles)


def simple_cycles(g: UndirectedGraph) -> list[int]:
    """All simple cycles of ``g`` as edge bit vectors (each listed once)."""
    adj = g.adjacency
    found: set[int] = set()
    for s in range(g.n_nodes):
        # only extend through nodes larger than s so each cycle is rooted at its minimum
        stack = [(s, 0, 1 << s, 1)]
        while stack:
            node, vec, visited, length = stack.pop()
            for nbr, e in adj[node]:
                if nbr == s and length >= 3:
                    found.add(vec | (1 << e))
                elif nbr > s and not (visited >> nbr) & 1:
                    stack.append((nbr, vec | (1 << e), visited | (1 << nbr), length + 1))
    return sorted(found)


def brute_force_mcb(g: UndirectedGraph) -> CycleBasis:
    """Exhaustive minimum cycle basis: every simple cycle, sifted greedily by weight."""
    if g.n_edges > BRUTE_FORCE_MAX_EDGES:
        raise TooLarge(f"brute force is limited to {BRUTE_FORCE_MAX_EDGES} edges, got {g.n_edges}")
    d = cycle_space_dimension(g)
    elim = gf2.EliminationBasis()
    chosen = []
    for vec in sorted(simple_cycles(g), key=lambda c: (c.bit_count(), c)):
        if len(chosen) == d:
            break
        if elim.add(vec):
            chosen.append(Cycle.from_edge_vector(g, vec))
    return CycleBasis(g, tuple(chosen))


def _bfs_tree(succ, root: int) -> tuple[dict[int, int], dict[int, int]]:
    """Level-synchronous directed BFS; the parent is the lowest-id node one level up."""
    dist = {root: 0}
    parent = {root: root}
    frontier = [root]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for u in frontier:
            for v in succ[u]:
                if v not in dist:
                    dist[v] = level
                    parent[v] = u
                    nxt.append(v)
        nxt.sort()
        frontier = nxt
    return dist, parent


def _tree_path(parent: dict[int, int], root: int, x: int) -> list[int]:
    path = [x]
    while x != root:
        x = parent[x]
        path.append(x)
    path.reverse()
    return path


def _diamond_candidates(succ, pred, virtual: int | None):
    """Candidate diamonds: one shortest per sink in-edge, plus fundamental cycles.

    For a sink ``w`` entered from ``u`` and ``p`` and a common ancestor ``v``,
    the cycle v ~> u -> w <- p <~ v is a diamond when both arcs have length
    at least two; for each in-edge we keep the shortest such cycle found.
    """
    n_total = len(succ)
    trees = {v: _bfs_tree(succ, v) for v in range(n_total)}
    best: dict[tuple[int, int], tuple[int, int, int, int]] = {}
    for v in range(n_total):
        if v == virtual:
            continue
        dist, parent = trees[v]
        for w in dist:
            inner = [u for u in pred[w] if u != v and u in dist]
            for u, p in combinations(inner, 2):
                length = dist[u] + dist[p] + 2
                if all(best.get((x, w), (length + 1,))[0] <= length for x in (u, p)):
                    continue
                pu = _tree_path(parent, v, u)
                pp = _tree_path(parent, v, p)
                if set(pu).intersection(pp) != {v}:
                    continue
                for x in (u, p):
                    if best.get((x, w), (length + 1,))[0] > length:
                        best[(x, w)] = (length, v, u, p)
    candidates = []
    for (_, w), (_, v, u, p) in best.items():
        _, parent = trees[v]
        candidates.append(_tree_path(parent, v, u) + [w] + _tree_path(parent, v, p)[:0:-1])

    # fundamental cycles of the arborescence from the global (or virtual) root
    root = virtual if virtual is not None else next(v for v in range(n_total) if not pred[v])
    dist, parent = trees[root]
    for u in range(n_total):
        for w in succ[u]:
            if parent.get(w) == u or u not in dist:
                continue
            pu, pw = _tree_path(parent, root, u), _tree_path(parent, root, w)
            k = 0
            while k < min(len(pu), len(pw)) and pu[k] == pw[k]:
                k += 1
            apex = pu[k - 1]
            arc_a, arc_b = pu[k - 1:] + [w], pw[k - 1:]
            if apex == virtual or len(arc_a) < 3 or len(arc_b) < 3:
                continue
            candidates.append(arc_a + arc_b[-2:0:-1])
    return [c for c in candidates if virtual not in c]


def minimum_diamond_basis(dag: OrderedDag, virtual_root: bool = False) -> CycleBasis:
    """Cycle basis made only of diamonds (single source and single sink per cycle).

    Expects a transitively reduced DAG with one global source.  With
    ``virtual_root`` a synthetic root feeding every source is used and
    candidates through it are discarded; the result then spans only the
    part of the cycle space reachable by diamonds, which may be smaller than
    the full dimension when mixers are unavoidable.
    """
    g = underlying_undirected(dag)
    if dag.n_nodes == 0 or dag.n_edges == 0:
        return CycleBasis(g, ())
    sources = dag.sources()
    if len(sources) > 1 and not virtual_root:
        raise MultipleSourcesWithoutVirtualRoot(
            f"DAG has {len(sources)} sources; enable the virtual root option"
        )
    if not is_transitively_reduced(dag):
        warnings.warn("minimum_diamond_basis expects a transitively reduced DAG", stacklevel=2)

    succ = [list(s) for s in dag.successors]
    pred = [list(p) for p in dag.predecessors]
    virtual = None
    if len(sources) > 1:
        virtual = dag.n_nodes
        succ.append(list(sources))
        pred.append([])
        for s in sources:
            pred[s].append(virtual)
    paths = _diamond_candidates(succ, pred, virtual)

    seen = set()
    candidates = []
    for nodes in paths:
        vec = 0
        for a, b in zip(nodes, nodes[1:] + nodes[:1]):
            vec ^= 1 << g.index_of(a, b)
        if vec in seen or vec.bit_count() != len(nodes):
            continue
        seen.add(vec)
        start = nodes.index(min(nodes))
        candidates.append(Cycle(vec, tuple(nodes[start:] + nodes[:start])))
    candidates.sort(key=lambda c: (c.weight, c.edge_vec))

    support = _initial_support(g)
    chosen = []
    for i, s_i in enumerate(support):
        pick = next((c for c in candidates if gf2.parity(c.edge_vec, s_i)), None)
        if pick is None:
            continue
        chosen.append(pick)
        for j in range(i + 1, len(support)):
            if gf2.parity(pick.edge_vec, support[j]):
                support[j] ^= s_i
    if len(chosen) < len(support):
        warnings.warn(
            f"diamond candidates span {len(chosen)} of {len(support)} cycle-space dimensions",
            stacklevel=2,
        )
    return CycleBasis(g, tuple(chosen))


@dataclass(frozen=True)
class BasisReport:
    expected_dimension: int
    dimension: int
    rank: int
    cycles_valid: bool
    total_weight: int
    invalid_cycles: tuple[int, ...] = ()

    @property
    def independent(self) -> bool:
        return self.rank == self.dimension

    @property
    def dimension_ok(self) -> bool:
        return self.dimension == self.expected_dimension

    @property
    def ok(self) -> bool:
        return self.independent and self.dimension_ok and self.cycles_valid


def verify_basis(basis: CycleBasis, g: UndirectedGraph) -> BasisReport:
    bad = []
    for k, c in enumerate(basis.cycles):
        try:
            again = Cycle.from_edge_vector(g, c.edge_vec)
        except (ValueError, IndexError):
            bad.append(k)
            continue
        if again.weight != c.weight or set(again.nodes) != set(c.nodes):
            bad.append(k)
    return BasisReport(
        expected_dimension=cycle_space_dimension(g),
        dimension=basis.dimension,
        rank=gf2.rank([c.edge_vec for c in basis.cycles]),
        cycles_valid=not bad,
        total_weight=basis.total_weight,
        invalid_cycles=tuple(bad),
    )
