import networkx as nx
import pytest
from hypothesis import given

from conftest import dags, graphs, to_nx, to_nx_dag
from dagcycles.errors import (
    DirectedCycleDetected,
    DuplicateEdge,
    IncomparableAdjacentPair,
    InvalidGraph,
    RankViolation,
    SelfLoop,
)
from dagcycles.generators import lattice_dag, russian_doll, ModelSpec
from dagcycles.graph import (
    OrderedDag,
    UndirectedGraph,
    connected_components,
    direct_edges,
    from_edge_list,
    node_heights,
    underlying_undirected,
)


def test_edges_are_canonically_sorted():
    dag = OrderedDag(3, ((1, 2), (0, 2), (0, 1)))
    assert dag.edges == ((0, 1), (0, 2), (1, 2))
    g = UndirectedGraph(3, ((2, 1), (1, 0)))
    assert g.edges == ((0, 1), (1, 2))


def test_rejects_self_loop_and_duplicates():
    with pytest.raises(SelfLoop):
        OrderedDag(2, ((1, 1),))
    with pytest.raises(DuplicateEdge):
        OrderedDag(2, ((0, 1), (0, 1)))
    with pytest.raises(DuplicateEdge):
        UndirectedGraph(2, ((0, 1), (1, 0)))
    with pytest.raises(InvalidGraph):
        OrderedDag(2, ((0, 5),))


def test_directed_cycle_reported():
    with pytest.raises(DirectedCycleDetected) as info:
        OrderedDag(4, ((0, 1), (1, 2), (2, 3), (3, 1)))
    cyc = info.value.cycle
    assert sorted(cyc) == [1, 2, 3]
    arcs = {(0, 1), (1, 2), (2, 3), (3, 1)}
    assert all((cyc[i], cyc[(i + 1) % len(cyc)]) in arcs for i in range(len(cyc)))


def test_two_cycle_detected():
    with pytest.raises(DirectedCycleDetected):
        OrderedDag(2, ((0, 1), (1, 0)))


def test_default_ranks():
    assert OrderedDag(3, ((0, 1), (1, 2))).rank == (0, 1, 2)
    # ids against the edge direction fall back to topological positions
    dag = OrderedDag(3, ((2, 1), (1, 0)))
    assert dag.rank == (2, 1, 0)


def test_explicit_rank_violation():
    with pytest.raises(RankViolation):
        OrderedDag(2, ((0, 1),), (5, 3))
    assert OrderedDag(2, ((1, 0),), (7, 3)).rank == (7, 3)


def test_from_edge_list():
    dag = from_edge_list([(0, 1), (1, 2)], n_nodes=5)
    assert dag.n_nodes == 5 and dag.sources() == [0, 3, 4]
    dag = from_edge_list([(1, 0)], ranks={0: 10, 1: 2})
    assert dag.rank == (10, 2)


def test_incomparable_adjacent_pair():
    g = UndirectedGraph(2, ((0, 1),))
    with pytest.raises(IncomparableAdjacentPair):
        direct_edges(g, [3, 3])


def test_components_examples():
    tri2 = UndirectedGraph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    assert connected_components(tri2)[0] == 2
    assert connected_components(underlying_undirected(lattice_dag(5)))[0] == 1
    assert connected_components(UndirectedGraph(3, ()))[0] == 3


@given(graphs(max_nodes=12))
def test_components_match_networkx(g):
    n_c, labels = connected_components(g)
    assert n_c == nx.number_connected_components(to_nx(g))
    for u, v in g.edges:
        assert labels[u] == labels[v]
    assert sorted(set(labels)) == list(range(n_c))


@given(dags())
def test_round_trip_random(dag):
    assert direct_edges(underlying_undirected(dag), dag.rank) == dag


@pytest.mark.parametrize("dag", [
    lattice_dag(4),
    russian_doll(5),
    ModelSpec("er", {"n": 40, "p": 0.2}, 3).build(0),
    ModelSpec("price", {"n": 40, "m": 3}, 3).build(0),
], ids=["lattice", "doll", "er", "price"])
def test_round_trip_models(dag):
    assert direct_edges(underlying_undirected(dag), dag.rank) == dag
    assert dag.rank == tuple(range(dag.n_nodes))


@given(dags())
def test_heights(dag):
    h = node_heights(dag)
    for u, v in dag.edges:
        assert h[v] >= h[u] + 1
    preds = dag.predecessors
    for v in range(dag.n_nodes):
        assert (h[v] == 0) == (not preds[v])
    # oracle: networkx longest path ending at each node
    g = to_nx_dag(dag)
    for v in range(dag.n_nodes):
        anc = nx.ancestors(g, v) | {v}
        assert h[v] == nx.dag_longest_path_length(g.subgraph(anc))


@given(dags())
def test_rank_order_is_topological(dag):
    order = sorted(range(dag.n_nodes), key=dag.rank.__getitem__)
    pos = {v: i for i, v in enumerate(order)}
    assert all(pos[u] < pos[v] for u, v in dag.edges)
    topo = dag.topological_order()
    tpos = {v: i for i, v in enumerate(topo)}
    assert all(tpos[u] < tpos[v] for u, v in dag.edges)
