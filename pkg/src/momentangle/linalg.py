"""Sparse exact linear algebra over the integers.

Rank computation by fraction-free elimination: rows stay integer, every
combination is divided by its gcd, so there is no coefficient blow-up from
rational arithmetic and results are exact.
"""

from __future__ import annotations

from math import gcd


def _row_gcd(row):
    g = 0
    for c in row.values():
        g = gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def _normalize(row):
    g = _row_gcd(row)
    if g > 1:
        for k in row:
            row[k] //= g
    return row


class IncrementalRank:
    """Echelon accumulator: feed integer rows, watch the rank grow.

    Each row is reduced against the pivots found so far (pivot column =
    smallest column index in the row) and either vanishes or contributes a
    new pivot.
    """

    def __init__(self):
        self.pivots = {}  # pivot column -> normalized row
        self.rank = 0

    def add(self, row):
        """Reduce ``row`` ({column: value}); return True if the rank grew."""
        row = {c: v for c, v in row.items() if v}
        while row:
            col = min(row)
            pivot = self.pivots.get(col)
            if pivot is None:
                self.pivots[col] = _normalize(row)
                self.rank += 1
                return True
            a = pivot[col]
            b = row[col]
            new = {}
            for c, v in row.items():
                new[c] = v * a
            for c, v in pivot.items():
                new[c] = new.get(c, 0) - v * b
            row = {c: v for c, v in new.items() if v}
            _normalize(row)
        return False


def sparse_rank(rows):
    """Rank of the sparse integer matrix given as dicts {column: value}."""
    acc = IncrementalRank()
    for row in rows:
        acc.add(row)
    return acc.rank
