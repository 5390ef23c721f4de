"""Sparse exact linear algebra over Q (columns as {row index: Fraction})."""

from __future__ import annotations

from fractions import Fraction


def rank_of_columns(cols) -> int:
    """Rank of the column collection, by leading-index echelonization."""
    lead = {}  # leading row index -> reduced column
    rank = 0
    for col in cols:
        col = dict(col)
        while col:
            i = min(col)
            if i in lead:
                piv = lead[i]
                f = col[i] / piv[i]
                for r, v in piv.items():
                    nv = col.get(r, Fraction(0)) - f * v
                    if nv:
                        col[r] = nv
                    else:
                        col.pop(r, None)
            else:
                lead[i] = col
                rank += 1
                break
    return rank


class ColumnSpace:
    """Incremental echelon basis of a column span, supporting reduction of
    query vectors from the lowest row index upward."""

    def __init__(self, cols=()):
        self.lead = {}
        for col in cols:
            self.insert(col)

    def insert(self, col) -> bool:
        """Add a column; returns True if it enlarged the span."""
        col = dict(col)
        while col:
            i = min(col)
            if i in self.lead:
                piv = self.lead[i]
                f = col[i] / piv[i]
                for r, v in piv.items():
                    nv = col.get(r, Fraction(0)) - f * v
                    if nv:
                        col[r] = nv
                    else:
                        col.pop(r, None)
            else:
                self.lead[i] = col
                return True
        return False

    def reduce(self, vec) -> dict:
        """Greedy bottom-up reduction of vec modulo the span.

        The result's smallest support index cannot be decreased by further
        span elements; all indices below it are exactly zero.
        """
        vec = dict(vec)
        while vec:
            i = min(vec)
            piv = self.lead.get(i)
            if piv is None:
                return vec
            f = vec[i] / piv[i]
            for r, v in piv.items():
                nv = vec.get(r, Fraction(0)) - f * v
                if nv:
                    vec[r] = nv
                else:
                    vec.pop(r, None)
        return vec
