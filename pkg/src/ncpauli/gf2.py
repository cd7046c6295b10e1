"""Bit-packed GF(2) linear algebra on Python integers.

Each row is an ``int`` whose bit ``i`` is column ``i``.  Pivots are taken from
the most significant column downward, so for symplectic Pauli vectors
``(x << n) | z`` elimination runs over the x block first, qubit 0 first.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

__all__ = ["rref", "rank", "is_independent", "Eliminator"]


def rref(rows: Sequence[int]) -> tuple[list[int], list[int]]:
    """Reduced row-echelon form; returns ``(nonzero rows, pivot columns)``.

    Rows are ordered by descending pivot column.
    """
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = r
                break
            r ^= pivots[lead]
    leads = sorted(pivots, reverse=True)
    basis = [pivots[lead] for lead in leads]
    for i, lead in enumerate(leads):
        for j in range(len(basis)):
            if j != i and (basis[j] >> lead) & 1:
                basis[j] ^= basis[i]
    return basis, leads


def rank(rows: Sequence[int]) -> int:
    return len(rref(rows)[0])


def is_independent(rows: Sequence[int]) -> bool:
    return rank(rows) == len(rows)


@dataclass
class Eliminator:
    """Incremental basis that remembers which input rows build each pivot row.

    ``solve(v)`` returns a bitmask over the inserted rows whose XOR equals
    ``v``, or ``None`` when ``v`` is outside their span.
    """

    _pivots: dict[int, tuple[int, int]] = field(default_factory=dict)
    count: int = 0

    def add(self, row: int) -> bool:
        """Insert the next input row; returns False if it was dependent."""
        combo = 1 << self.count
        self.count += 1
        row, combo = self._reduce(row, combo)
        if row == 0:
            return False
        self._pivots[row.bit_length() - 1] = (row, combo)
        return True

    def _reduce(self, row: int, combo: int) -> tuple[int, int]:
        while row:
            hit = self._pivots.get(row.bit_length() - 1)
            if hit is None:
                break
            row ^= hit[0]
            combo ^= hit[1]
        return row, combo

    def solve(self, target: int) -> int | None:
        row, combo = self._reduce(target, 0)
        return combo if row == 0 else None

    @property
    def rank(self) -> int:
        return len(self._pivots)
