import networkx as nx
import numpy as np
from hypothesis import given, strategies as st

from conftest import dags, reachability, to_nx_dag
from dagcycles.generators import lattice_dag
from dagcycles.graph import OrderedDag, node_heights
from dagcycles.reduction import descendant_masks, is_transitively_reduced, transitive_reduce


def test_examples():
    tri = OrderedDag(3, ((0, 1), (1, 2), (0, 2)))
    assert transitive_reduce(tri).edges == ((0, 1), (1, 2))
    assert not is_transitively_reduced(tri)
    assert is_transitively_reduced(lattice_dag(6))
    assert is_transitively_reduced(OrderedDag(0, ()))
    assert is_transitively_reduced(OrderedDag(4, ()))


def test_complete_dag_reduces_to_path():
    n = 8
    full = OrderedDag(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))
    assert transitive_reduce(full).edges == tuple((i, i + 1) for i in range(n - 1))


def test_descendant_masks():
    dag = OrderedDag(4, ((0, 1), (1, 2), (3, 2)))
    assert descendant_masks(dag) == [0b110, 0b100, 0, 0b100]


@given(dags())
def test_reachability_preserved(dag):
    assert np.array_equal(reachability(transitive_reduce(dag)), reachability(dag))


@given(dags())
def test_idempotent(dag):
    once = transitive_reduce(dag)
    assert transitive_reduce(once) == once
    assert is_transitively_reduced(once)


@given(dags())
def test_minimal(dag):
    tr = transitive_reduce(dag)
    closure = reachability(tr)
    for e in tr.edges:
        smaller = OrderedDag(tr.n_nodes, tuple(x for x in tr.edges if x != e), tr.rank)
        assert not np.array_equal(reachability(smaller), closure)


@given(dags())
def test_matches_networkx(dag):
    expected = sorted(nx.transitive_reduction(to_nx_dag(dag)).edges())
    assert list(transitive_reduce(dag).edges) == expected


@given(dags(), st.randoms(use_true_random=False))
def test_edge_order_irrelevant(dag, rnd):
    edges = list(dag.edges)
    rnd.shuffle(edges)
    assert transitive_reduce(OrderedDag(dag.n_nodes, tuple(edges), dag.rank)) == transitive_reduce(dag)


@given(dags())
def test_heights_and_ranks_kept(dag):
    tr = transitive_reduce(dag)
    assert node_heights(tr) == node_heights(dag)
    assert tr.rank == dag.rank
