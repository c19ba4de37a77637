"""Transitive reduction of DAGs."""

from __future__ import annotations

from .graph import OrderedDag


def descendant_masks(dag: OrderedDag) -> list[int]:
    """Bit ``w`` of ``masks[u]`` is set iff there is a directed path u -> w (w != u)."""
    masks = [0] * dag.n_nodes
    succ = dag.successors
    for u in reversed(dag.topological_order()):
        m = 0
        for v in succ[u]:
            m |= masks[v] | (1 << v)
        masks[u] = m
    return masks


def transitive_reduce(dag: OrderedDag) -> OrderedDag:
    """Drop every edge (u, v) that is shadowed by a directed path of length >= 2.

    Descendant sets are built once in reverse topological order; an edge
    (u, v) is transitive exactly when v descends from another child of u.
    Ranks are carried over unchanged.
    """
    masks = descendant_masks(dag)
    succ = dag.successors
    kept = []
    for u in range(dag.n_nodes):
        indirect = 0
        for w in succ[u]:
            indirect |= masks[w]
        kept.extend((u, v) for v in succ[u] if not (indirect >> v) & 1)
    if len(kept) == dag.n_edges:
        return dag
    return OrderedDag(dag.n_nodes, tuple(kept), dag.rank)


def is_transitively_reduced(dag: OrderedDag) -> bool:
    return transitive_reduce(dag).n_edges == dag.n_edges
