"""Exact Gaussian elimination over Q on sparse rows."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

SparseRow = Mapping[Hashable, Fraction]


def rank(rows: Iterable[SparseRow]) -> int:
    """Rank of the matrix whose rows are {column: value} dicts (columns mutually comparable)."""
    pivots: dict[Hashable, dict] = {}
    r = 0
    for row in rows:
        v = {c: Fraction(x) for c, x in row.items() if x}
        while v:
            col = min(v)
            piv = pivots.get(col)
            if piv is None:
                inv = 1 / v[col]
                pivots[col] = {c: x * inv for c, x in v.items()}
                r += 1
                break
            f = v[col]
            for c, x in piv.items():
                y = v.get(c, 0) - f * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
    return r

