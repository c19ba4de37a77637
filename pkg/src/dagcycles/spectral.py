"""Cycle overlap matrix M = C C^T, its spectrum, and cycle connectivity.

``M[a, b]`` counts the edges shared by basis cycles a and b; the diagonal
holds cycle sizes.  Closed-form spectra for the lattice and Russian doll
models are provided as references.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import CycleBasis
from .errors import NotSymmetric

DEFAULT_TOL = 1e-10


def incidence_matrix(basis: CycleBasis) -> np.ndarray:
    """Cycle-by-edge 0/1 matrix (one row per basis cycle)."""
    m = basis.graph.n_edges
    out = np.zeros((basis.dimension, m), dtype=np.int64)
    nbytes = (m + 7) // 8
    for i, c in enumerate(basis.cycles):
        raw = np.frombuffer(c.edge_vec.to_bytes(nbytes, "little"), dtype=np.uint8)
        out[i] = np.unpackbits(raw, bitorder="little")[:m]
    return out


def build_overlap_matrix(basis: CycleBasis) -> np.ndarray:
    C = incidence_matrix(basis)
    return C @ C.T


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    mean_size: float

    @property
    def lambda_max(self) -> float:
        return self.eigenvalues[0] if self.eigenvalues else 0.0

    @property
    def lambda_ratio(self) -> float:
        """lambda_max / <S>; 0 for an empty basis."""
        return self.lambda_max / self.mean_size if self.mean_size else 0.0


def eigenvalues_symmetric(m: np.ndarray, tol: float = DEFAULT_TOL) -> Spectrum:
    """Eigenvalues of a symmetric matrix, largest first (LAPACK ``syevd`` via numpy)."""
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSymmetric(f"expected a square matrix, got shape {a.shape}")
    if a.size == 0:
        return Spectrum((), 0.0)
    scale = max(1.0, float(np.abs(a).max()))
    if not np.allclose(a, a.T, rtol=0.0, atol=tol * scale):
        raise NotSymmetric("matrix is not symmetric within tolerance")
    vals = np.linalg.eigvalsh(a)[::-1]
    return Spectrum(tuple(float(x) for x in vals), float(np.trace(a)) / a.shape[0])


def lattice_spectrum_analytic(L: int) -> list[float]:
    """4 + 2cos(pi m / L) + 2cos(pi n / L) for m, n in 1..L-1, largest first."""
    if L < 2:
        raise ValueError(f"L must be >= 2, got {L}")
    ks = range(1, L)
    vals = [4 + 2 * math.cos(math.pi * a / L) + 2 * math.cos(math.pi * b / L) for b in ks for a in ks]
    return sorted(vals, reverse=True)


def russian_doll_spectrum_analytic(d: int) -> list[float]:
    """6 + 4cos(2 pi k / (2d + 1)) for k in 1..d, largest first."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    return sorted((6 + 4 * math.cos(2 * math.pi * k / (2 * d + 1)) for k in range(1, d + 1)), reverse=True)


@dataclass(frozen=True)
class CycleComponents:
    count: int
    labels: tuple[int, ...]
    laplacian_nullity: int


def cycle_components(m: np.ndarray, tol: float = 1e-8) -> CycleComponents:
    """Connected components of cycles linked by shared edges.

    The count comes from union-find on the off-diagonal support of ``m``;
    ``laplacian_nullity`` counts the near-zero eigenvalues of D - A with A
    the off-diagonal overlaps, as an independent check.
    """
    a = np.asarray(m)
    d = a.shape[0]
    parent = list(range(d))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rows, cols = np.nonzero(np.triu(a, k=1))
    for i, j in zip(rows.tolist(), cols.tolist()):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    relabel: dict[int, int] = {}
    labels = tuple(relabel.setdefault(find(i), len(relabel)) for i in range(d))

    if d == 0:
        return CycleComponents(0, (), 0)
    adj = np.asarray(a, dtype=float).copy()
    np.fill_diagonal(adj, 0.0)
    lap = np.diag(adj.sum(axis=1)) - adj
    ev = np.linalg.eigvalsh(lap)
    scale = max(1.0, float(np.abs(ev).max()))
    nullity = int(np.count_nonzero(np.abs(ev) < tol * scale))
    return CycleComponents(len(relabel), labels, nullity)
