"""End-to-end analysis: reduce, extract a basis, classify, measure, and aggregate ensembles."""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .basis import CycleBasis, cycle_space_dimension, minimum_cycle_basis, minimum_diamond_basis
from .generators import ModelSpec
from .graph import OrderedDag, connected_components, node_heights, underlying_undirected
from .metrics import BasisSummary, CycleRecord, basis_records, edge_participation, summarize
from .reduction import transitive_reduce
from .spectral import CycleComponents, Spectrum, build_overlap_matrix, cycle_components, eigenvalues_symmetric


@dataclass
class Analysis:
    input_dag: OrderedDag
    dag: OrderedDag
    reduced: bool
    basis_kind: str
    seed: object
    shuffle_ties: bool
    basis: CycleBasis
    records: list[CycleRecord]
    summary: BasisSummary
    overlap: np.ndarray
    spectrum: Spectrum
    components: CycleComponents

    def metrics(self) -> dict[str, float]:
        """Flat scalar metrics, the columns used by ensemble and stability output."""
        s = self.summary
        n = self.dag.n_nodes
        return {
            "n_nodes": n,
            "n_edges": self.input_dag.n_edges,
            "n_edges_analyzed": self.dag.n_edges,
            "density_analyzed": self.dag.n_edges / (n * (n - 1) / 2) if n > 1 else 0.0,
            "d": s.d,
            "mean_size": s.mean_size,
            "std_size": s.std_size,
            "max_size": s.max_size,
            "mean_stretch": s.mean_stretch,
            "mean_balance": s.mean_balance,
            "mean_height": s.mean_height,
            "std_height": s.std_height,
            "n_diamonds": s.n_diamonds,
            "n_mixers": s.n_mixers,
            "n_shortcuts": s.n_shortcuts,
            "ep_mean": s.ep_mean,
            "ep_std": s.ep_std,
            "lambda_max": self.spectrum.lambda_max,
            "lambda_ratio": self.spectrum.lambda_ratio,
            "null_lc": self.components.count,
        }


def analyze(
    dag: OrderedDag,
    *,
    reduce: bool = True,
    diamond_basis: bool = False,
    virtual_root: bool = False,
    seed=None,
    shuffle_ties: bool = False,
) -> Analysis:
    work = transitive_reduce(dag) if reduce else dag
    g = underlying_undirected(work)
    if diamond_basis:
        basis = minimum_diamond_basis(work, virtual_root=virtual_root)
    else:
        basis = minimum_cycle_basis(g, seed=seed, shuffle_ties=shuffle_ties)
    records = basis_records(basis, work, node_heights(work))
    summary = summarize(records, basis)
    overlap = build_overlap_matrix(basis)
    return Analysis(
        input_dag=dag,
        dag=work,
        reduced=reduce,
        basis_kind="diamond" if diamond_basis else "minimum",
        seed=seed,
        shuffle_ties=shuffle_ties and not diamond_basis,
        basis=basis,
        records=records,
        summary=summary,
        overlap=overlap,
        spectrum=eigenvalues_symmetric(overlap),
        components=cycle_components(overlap),
    )


def _clean(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    return x


REPORT_SCHEMA_ID = "dagcycles.report/1"


def report_dict(a: Analysis, provenance: dict | None = None) -> dict:
    heights = node_heights(a.dag)
    n_c, _ = connected_components(underlying_undirected(a.dag))
    return {
        "schema": REPORT_SCHEMA_ID,
        "provenance": {
            **(provenance or {}),
            "transitively_reduced": a.reduced,
            "basis": a.basis_kind,
            "shuffle_ties": a.shuffle_ties,
            "seed": a.seed if isinstance(a.seed, (int, type(None))) else str(a.seed),
        },
        "graph": {
            "n_nodes": a.dag.n_nodes,
            "n_edges_input": a.input_dag.n_edges,
            "n_edges_analyzed": a.dag.n_edges,
            "n_components": n_c,
            "height": max(heights, default=0),
        },
        "summary": {k: _clean(v) for k, v in a.summary.as_dict().items()},
        "spectrum": {
            "lambda_max": a.spectrum.lambda_max,
            "lambda_ratio": a.spectrum.lambda_ratio,
            "null_lc": a.components.count,
            "laplacian_nullity": a.components.laplacian_nullity,
            "eigenvalues": list(a.spectrum.eigenvalues),
        },
        "cycles": [{k: _clean(v) for k, v in r.as_row().items()} for r in a.records],
    }


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "provenance", "graph", "summary", "spectrum", "cycles"],
    "properties": {
        "schema": {"const": REPORT_SCHEMA_ID},
        "provenance": {
            "type": "object",
            "required": ["transitively_reduced", "basis"],
            "properties": {
                "transitively_reduced": {"type": "boolean"},
                "basis": {"enum": ["minimum", "diamond"]},
            },
        },
        "graph": {
            "type": "object",
            "required": ["n_nodes", "n_edges_input", "n_edges_analyzed", "n_components", "height"],
            "additionalProperties": {"type": "integer", "minimum": 0},
        },
        "summary": {
            "type": "object",
            "required": list(BasisSummary.__dataclass_fields__),
            "additionalProperties": {"type": ["number", "null"]},
        },
        "spectrum": {
            "type": "object",
            "required": ["lambda_max", "lambda_ratio", "null_lc", "laplacian_nullity", "eigenvalues"],
            "properties": {
                "lambda_max": {"type": "number"},
                "lambda_ratio": {"type": "number"},
                "null_lc": {"type": "integer", "minimum": 0},
                "laplacian_nullity": {"type": "integer", "minimum": 0},
                "eigenvalues": {"type": "array", "items": {"type": "number"}},
            },
        },
        "cycles": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "size", "class", "n_sources", "balance", "height", "stretch",
                             "path_lengths", "nodes"],
                "properties": {
                    "class": {"enum": ["feedback", "shortcut", "diamond", "mixer"]},
                    "size": {"type": "integer", "minimum": 3},
                    "stretch": {"type": "integer", "minimum": 0},
                },
            },
        },
    },
}


def check_report(a: Analysis) -> list[str]:
    """Internal consistency problems of an analysis (empty when sound)."""
    problems = []
    g = a.basis.graph
    if a.overlap.shape != (a.basis.dimension, a.basis.dimension):
        problems.append("overlap matrix shape does not match the basis")
    if int(np.trace(a.overlap)) != a.basis.total_weight:
        problems.append("trace of M differs from the total cycle size")
    _, _, counts = edge_participation(a.basis, g)
    if sum(counts) != a.basis.total_weight:
        problems.append("edge participation does not add up to the total cycle size")
    if a.components.count != a.components.laplacian_nullity:
        problems.append("component count and Laplacian nullity disagree")
    if a.basis_kind == "minimum":
        if a.basis.dimension != cycle_space_dimension(g):
            problems.append("basis dimension differs from the circuit rank")
    return problems


# ---------------------------------------------------------------- ensembles

ENSEMBLE_COLUMNS = ("model", "param", "value", "metric", "mean", "std", "sem", "n")


def _realization_metrics(task) -> dict[str, float]:
    spec, r, reduce = task
    return analyze(spec.build(r), reduce=reduce).metrics()


def _map(fn, tasks, jobs: int):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def _aggregate(samples: Sequence[dict[str, float]]) -> dict[str, tuple[float, float, float, int]]:
    out = {}
    for key in samples[0]:
        vals = [float(s[key]) for s in samples]
        n = len(vals)
        sd = statistics.pstdev(vals) if n > 1 else 0.0
        out[key] = (statistics.fmean(vals), sd, sd / math.sqrt(n), n)
    return out


def ensemble(
    kind: str,
    base_params: dict,
    param: str,
    values: Sequence[float],
    n_realizations: int,
    seed: int | None = None,
    *,
    reduce: bool = True,
    jobs: int = 1,
) -> list[dict]:
    """Mean, population std and standard error of each metric per parameter value.

    Realisation r of every grid point draws from stream ``(seed, r)``.
    Results are merged in grid order regardless of ``jobs``.
    """
    tasks = []
    for value in values:
        params = {**base_params, param: value}
        spec = ModelSpec(kind, params, seed)
        reps = n_realizations if spec.is_random else 1
        tasks.extend((spec, r, reduce) for r in range(reps))
    results = _map(_realization_metrics, tasks, jobs)
    rows = []
    pos = 0
    for value in values:
        spec = ModelSpec(kind, {**base_params, param: value}, seed)
        reps = n_realizations if spec.is_random else 1
        agg = _aggregate(results[pos:pos + reps])
        pos += reps
        for metric, (mean, sd, sem, n) in agg.items():
            rows.append({"model": kind, "param": param, "value": value, "metric": metric,
                         "mean": mean, "std": sd, "sem": sem, "n": n})
    return rows


STABILITY_METRICS = ("ep_mean", "lambda_max", "mean_balance", "mean_stretch")


def _stability_run(task) -> dict[str, float]:
    dag, basis_seed, reduce, shuffle_ties = task
    return analyze(dag, reduce=reduce, seed=basis_seed, shuffle_ties=shuffle_ties).metrics()


def stability(
    spec: ModelSpec,
    n_runs: int,
    seed: int | None = None,
    *,
    realization: int = 0,
    reduce: bool = True,
    jobs: int = 1,
    shuffle_ties: bool = False,
) -> list[dict]:
    """Spread of basis statistics over repeated extractions on one fixed graph.

    Run k seeds the basis with child k of ``SeedSequence(seed)``.  Without
    ``shuffle_ties`` the seed only reorders the support vectors, which
    cannot change a canonically tie-broken basis, so the spread is zero.
    """
    dag = spec.build(realization)
    children = np.random.SeedSequence(seed).spawn(n_runs)
    basis_seeds = [int(c.generate_state(1, dtype=np.uint64)[0]) for c in children]
    results = _map(_stability_run, [(dag, s, reduce, shuffle_ties) for s in basis_seeds], jobs)
    rows = []
    for metric in STABILITY_METRICS:
        vals = [float(r[metric]) for r in results]
        mean = statistics.fmean(vals)
        sd = statistics.pstdev(vals)
        rows.append({
            "metric": metric,
            "mean": mean,
            "std": sd,
            "rel_std": sd / abs(mean) if mean else (0.0 if sd == 0 else math.inf),
            "runs": n_runs,
            "values": vals,
        })
    return rows
