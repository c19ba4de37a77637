"""GF(2) linear algebra on Python ints used as packed bit vectors."""

from __future__ import annotations

from typing import Iterable, Sequence


def parity(a: int, b: int) -> int:
    """Inner product <a, b> over GF(2)."""
    return (a & b).bit_count() & 1


def bits(vec: int) -> list[int]:
    """Indices of the set bits, ascending."""
    out = []
    while vec:
        low = vec & -vec
        out.append(low.bit_length() - 1)
        vec ^= low
    return out


def from_indices(indices: Iterable[int]) -> int:
    vec = 0
    for i in indices:
        vec ^= 1 << i
    return vec


class EliminationBasis:
    """Incrementally reduced row basis keyed by leading (highest) bit."""

    def __init__(self) -> None:
        self.rows: dict[int, int] = {}

    def reduce(self, vec: int) -> int:
        while vec:
            lead = vec.bit_length() - 1
            row = self.rows.get(lead)
            if row is None:
                return vec
            vec ^= row
        return 0

    def add(self, vec: int) -> bool:
        """Insert ``vec``; False if it was already in the span."""
        r = self.reduce(vec)
        if not r:
            return False
        self.rows[r.bit_length() - 1] = r
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    def __len__(self) -> int:
        return len(self.rows)


def rank(vectors: Sequence[int]) -> int:
    basis = EliminationBasis()
    for v in vectors:
        basis.add(v)
    return len(basis)
