"""Minimum cycle bases of DAGs: transitive reduction, cycle classification, metrics and spectra."""

from __future__ import annotations

__version__ = "0.1.0"

from .basis import (
    Cycle,
    CycleBasis,
    brute_force_mcb,
    cycle_space_dimension,
    minimum_cycle_basis,
    minimum_diamond_basis,
    verify_basis,
)
from .classify import CycleClass, DirectedCycle, NodeRole, antichain_signature, classify, contract_wedges, directed_image
from .generators import ModelSpec, er_dag, lattice_dag, price_dag, russian_doll
from .graph import OrderedDag, UndirectedGraph, direct_edges, from_edge_list, node_heights, underlying_undirected
from .metrics import BasisSummary, CycleRecord, basis_summary, edge_participation
from .pipeline import Analysis, analyze, ensemble, stability
from .reduction import is_transitively_reduced, transitive_reduce
from .spectral import build_overlap_matrix, cycle_components, eigenvalues_symmetric

__all__ = [
    "Analysis", "BasisSummary", "Cycle", "CycleBasis", "CycleClass", "CycleRecord", "DirectedCycle",
    "ModelSpec", "NodeRole", "OrderedDag", "UndirectedGraph",
    "analyze", "antichain_signature", "basis_summary", "brute_force_mcb", "build_overlap_matrix",
    "classify", "contract_wedges", "cycle_components", "cycle_space_dimension", "direct_edges",
    "directed_image", "edge_participation", "eigenvalues_symmetric", "ensemble", "er_dag",
    "from_edge_list", "is_transitively_reduced", "lattice_dag", "minimum_cycle_basis",
    "minimum_diamond_basis", "node_heights", "price_dag", "russian_doll", "stability",
    "transitive_reduce", "underlying_undirected", "verify_basis",
]
