import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import dags, graphs, random_graph, to_nx
from dagcycles import gf2
from dagcycles.basis import (
    Cycle,
    brute_force_mcb,
    cycle_space_dimension,
    minimum_cycle_basis,
    minimum_diamond_basis,
    simple_cycles,
    spanning_forest,
    verify_basis,
)
from dagcycles.classify import CycleClass, classify, directed_image
from dagcycles.errors import MultipleSourcesWithoutVirtualRoot, TooLarge
from dagcycles.generators import ModelSpec, lattice_dag, russian_doll
from dagcycles.graph import OrderedDag, UndirectedGraph, underlying_undirected
from dagcycles.reduction import transitive_reduce


def K(n):
    return UndirectedGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


# --- GF(2) helpers ---------------------------------------------------------

def test_gf2_basics():
    assert gf2.parity(0b1011, 0b0011) == 0
    assert gf2.parity(0b1011, 0b0010) == 1
    assert gf2.bits(0b100101) == [0, 2, 5]
    assert gf2.from_indices([0, 2, 5, 5]) == 0b101
    assert gf2.rank([0b011, 0b110, 0b101]) == 2
    assert gf2.rank([]) == 0


@given(st.lists(st.integers(0, 2**12 - 1), max_size=12))
def test_gf2_rank_matches_numpy_elimination(vectors):
    # independent oracle: row reduction over GF(2) on a dense 0/1 matrix
    a = np.array([[(v >> i) & 1 for i in range(12)] for v in vectors], dtype=np.uint8).reshape(-1, 12)
    r = 0
    for col in range(12):
        piv = next((i for i in range(r, a.shape[0]) if a[i, col]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(a.shape[0]):
            if i != r and a[i, col]:
                a[i] ^= a[r]
        r += 1
    assert gf2.rank(vectors) == r


# --- circuit rank and examples ----------------------------------------------

def test_dimension_examples():
    assert cycle_space_dimension(UndirectedGraph(3, ((0, 1), (1, 2), (0, 2)))) == 1
    assert cycle_space_dimension(K(4)) == 3
    assert cycle_space_dimension(UndirectedGraph(5, ())) == 0
    tri2 = UndirectedGraph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    assert cycle_space_dimension(tri2) == 2


def test_mcb_examples():
    b = minimum_cycle_basis(K(4))
    assert b.weights() == [3, 3, 3]
    lat = underlying_undirected(lattice_dag(3))
    b = minimum_cycle_basis(lat)
    assert b.weights() == [4, 4, 4, 4] and verify_basis(b, lat).ok
    assert brute_force_mcb(K(4)).total_weight == 9
    assert brute_force_mcb(lat).total_weight == 16
    assert minimum_cycle_basis(UndirectedGraph(4, ((0, 1), (1, 2)))).dimension == 0


def test_brute_force_limit():
    g = random_graph(np.random.default_rng(0), 12, 0.5)
    g = UndirectedGraph(g.n_nodes, g.edges[:21])
    assert g.n_edges == 21
    with pytest.raises(TooLarge):
        brute_force_mcb(g)


def test_simple_cycles_of_k4():
    # K4: four triangles and three 4-cycles
    assert sorted(v.bit_count() for v in simple_cycles(K(4))) == [3, 3, 3, 3, 4, 4, 4]


@given(graphs(max_nodes=9))
def test_basis_properties(g):
    b = minimum_cycle_basis(g)
    rep = verify_basis(b, g)
    assert rep.ok, rep
    for c in b.cycles:
        assert c.edge_vec.bit_count() == c.weight == len(c.nodes)


@given(graphs(max_nodes=8, max_edges=20))
def test_total_weight_matches_brute_force(g):
    assert minimum_cycle_basis(g).total_weight == brute_force_mcb(g).total_weight


@given(graphs(max_nodes=11))
def test_total_weight_matches_networkx(g):
    expected = sum(len(c) for c in nx.minimum_cycle_basis(to_nx(g)))
    assert minimum_cycle_basis(g).total_weight == expected


@given(graphs(max_nodes=10), st.integers(0, 2**32))
def test_seeded_basis_is_minimum(g, seed):
    ref = minimum_cycle_basis(g).total_weight
    for shuffle in (False, True):
        b = minimum_cycle_basis(g, seed=seed, shuffle_ties=shuffle)
        assert verify_basis(b, g).ok
        assert b.total_weight == ref
        assert b == minimum_cycle_basis(g, seed=seed, shuffle_ties=shuffle)


@given(graphs(max_nodes=10), st.integers(0, 2**32))
def test_support_order_alone_never_changes_the_basis(g, seed):
    # canonical tie-breaking is a total order on cycles, so De Pina returns the
    # greedy basis for that order; only the order of the picks may differ
    def cycle_set(b):
        return {c.edge_vec for c in b.cycles}

    assert cycle_set(minimum_cycle_basis(g, seed=seed)) == cycle_set(minimum_cycle_basis(g))


def test_shuffled_ties_do_vary():
    # the 3-cube has six square faces and any five form a minimum basis
    cube = UndirectedGraph(8, tuple((a, b) for a in range(8) for b in range(a + 1, 8)
                                    if bin(a ^ b).count("1") == 1))
    seen = {frozenset(c.edge_vec for c in minimum_cycle_basis(cube, seed=s, shuffle_ties=True).cycles)
            for s in range(30)}
    assert len(seen) > 1
    assert all(len(b) == 5 for b in seen)


@given(graphs(max_nodes=10))
def test_span_contains_fundamental_cycles(g):
    b = minimum_cycle_basis(g)
    elim = gf2.EliminationBasis()
    for c in b.cycles:
        elim.add(c.edge_vec)
    tree = spanning_forest(g)
    # fundamental cycle of edge e: e plus the tree path between its ends
    adj = {v: [] for v in range(g.n_nodes)}
    for e in tree:
        u, v = g.edges[e]
        adj[u].append((v, e))
        adj[v].append((u, e))
    for e in range(g.n_edges):
        if e in tree:
            continue
        u, v = g.edges[e]
        stack, via = [u], {u: 0}
        while stack:
            x = stack.pop()
            for y, f in adj[x]:
                if y not in via:
                    via[y] = via[x] ^ (1 << f)
                    stack.append(y)
        assert elim.contains(via[v] ^ (1 << e))


@given(graphs(max_nodes=10))
def test_xor_of_basis_cycles_is_eulerian(g):
    b = minimum_cycle_basis(g)
    for i in range(len(b.cycles)):
        for j in range(i + 1, len(b.cycles)):
            deg = [0] * g.n_nodes
            for e in gf2.bits(b.cycles[i].edge_vec ^ b.cycles[j].edge_vec):
                u, v = g.edges[e]
                deg[u] += 1
                deg[v] += 1
            assert all(x % 2 == 0 for x in deg)


def test_cycle_from_edge_vector():
    g = K(4)
    vec = gf2.from_indices([g.index_of(0, 1), g.index_of(1, 2), g.index_of(0, 2)])
    c = Cycle.from_edge_vector(g, vec)
    assert c.nodes in ((0, 1, 2), (0, 2, 1)) and c.weight == 3
    with pytest.raises(ValueError):
        Cycle.from_edge_vector(g, gf2.from_indices([g.index_of(0, 1), g.index_of(1, 2)]))
    two_triangles = UndirectedGraph(6, ((0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)))
    with pytest.raises(ValueError):
        Cycle.from_edge_vector(two_triangles, (1 << 6) - 1)


# --- minimum diamond basis --------------------------------------------------

def _all_diamonds(basis, dag):
    return all(classify(directed_image(c, dag)) is CycleClass.DIAMOND for c in basis.cycles)


@pytest.mark.parametrize("dag", [lattice_dag(3), lattice_dag(6), russian_doll(1), russian_doll(7)],
                         ids=["lattice3", "lattice6", "doll1", "doll7"])
def test_mdb_on_models(dag):
    g = underlying_undirected(dag)
    mdb = minimum_diamond_basis(dag)
    assert verify_basis(mdb, g).ok
    assert _all_diamonds(mdb, dag)
    assert mdb.total_weight == minimum_cycle_basis(g).total_weight


def single_source_tr_dags(count: int, seed: int):
    """TR DAGs with one global source: ER and Price graphs plus a common root."""
    out = []
    for i in range(count):
        kind, params = (("er", {"n": 30, "p": 0.2}) if i % 2 else ("price", {"n": 30, "m": 3}))
        dag = ModelSpec(kind, params, seed).build(i)
        srcs = dag.sources()
        if len(srcs) > 1:
            n = dag.n_nodes
            dag = OrderedDag(n + 1, tuple((u + 1, v + 1) for u, v in dag.edges) + tuple((0, s + 1) for s in srcs))
        dag = transitive_reduce(dag)
        assert len(dag.sources()) == 1
        out.append(dag)
    return out


def test_mdb_single_source_random():
    for dag in single_source_tr_dags(10, 5):
        g = underlying_undirected(dag)
        mdb = minimum_diamond_basis(dag)
        assert verify_basis(mdb, g).ok
        assert _all_diamonds(mdb, dag)
        assert mdb.total_weight >= minimum_cycle_basis(g).total_weight


def test_mdb_multiple_sources():
    dag = OrderedDag(6, ((0, 2), (1, 2), (0, 3), (1, 3), (2, 4), (3, 4), (4, 5)))
    with pytest.raises(MultipleSourcesWithoutVirtualRoot):
        minimum_diamond_basis(dag)
    # the only cycle 0-2-1-3 has two sources, so no diamond can span it
    with pytest.warns(UserWarning):
        b = minimum_diamond_basis(dag, virtual_root=True)
    g = underlying_undirected(dag)
    assert _all_diamonds(b, dag)
    assert gf2.rank([c.edge_vec for c in b.cycles]) == b.dimension
    assert b.dimension < cycle_space_dimension(g)


def test_mdb_virtual_root_complete_case():
    # two sources feeding a lattice through one node: every cycle is still a diamond
    lat = lattice_dag(3)
    n = lat.n_nodes
    dag = OrderedDag(n + 1, lat.edges + ((n, 4),))
    b = minimum_diamond_basis(dag, virtual_root=True)
    assert verify_basis(b, underlying_undirected(dag)).ok
    assert _all_diamonds(b, dag)
    assert all(max(c.nodes) <= n for c in b.cycles)


@given(dags(max_nodes=10, shuffle_ids=False))
def test_mdb_cycles_always_diamonds(dag):
    tr = transitive_reduce(dag)
    if len(tr.sources()) != 1 or tr.n_edges == 0:
        return
    b = minimum_diamond_basis(tr)
    g = underlying_undirected(tr)
    assert _all_diamonds(b, tr)
    assert gf2.rank([c.edge_vec for c in b.cycles]) == b.dimension
    assert b.dimension <= cycle_space_dimension(g)
