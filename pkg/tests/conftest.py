from __future__ import annotations

import os

import networkx as nx
import numpy as np
from hypothesis import HealthCheck, settings, strategies as st

from dagcycles.graph import OrderedDag, UndirectedGraph

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def dags(draw, max_nodes: int = 12, shuffle_ids: bool = True):
    """Random DAG; with ``shuffle_ids`` node ids are not a topological order."""
    n = draw(st.integers(1, max_nodes))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, keep in zip(pairs, mask) if keep]
    if shuffle_ids:
        perm = draw(st.permutations(range(n)))
        edges = [(perm[u], perm[v]) for u, v in edges]
    return OrderedDag(n, tuple(edges))


@st.composite
def graphs(draw, max_nodes: int = 9, max_edges: int | None = None):
    n = draw(st.integers(1, max_nodes))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [e for e, keep in zip(pairs, mask) if keep]
    if max_edges is not None:
        edges = edges[:max_edges]
    return UndirectedGraph(n, tuple(edges))


def random_graph(rng: np.random.Generator, n: int, p: float) -> UndirectedGraph:
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return UndirectedGraph(n, tuple(zip(iu[keep].tolist(), ju[keep].tolist())))


def reachability(dag: OrderedDag) -> np.ndarray:
    """Boolean closure oracle by repeated squaring of (I + A)."""
    n = dag.n_nodes
    a = np.eye(n, dtype=np.int64)
    for u, v in dag.edges:
        a[u, v] = 1
    steps = 1
    while steps < n:
        a = np.minimum(a @ a, 1)
        steps *= 2
    return a.astype(bool)


def to_nx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n_nodes))
    h.add_edges_from(g.edges)
    return h


def to_nx_dag(dag: OrderedDag) -> nx.DiGraph:
    h = nx.DiGraph()
    h.add_nodes_from(range(dag.n_nodes))
    h.add_edges_from(dag.edges)
    return h


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
