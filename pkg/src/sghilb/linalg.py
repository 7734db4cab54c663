"""Exact rank of sparse rational matrices by fraction-free elimination."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Mapping


def _integer_row(row: Mapping[int, object]) -> Dict[int, int]:
    den = 1
    for c in row.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    out = {}
    for j, c in row.items():
        v = int(c * den) if isinstance(c, Fraction) else int(c)
        if v:
            out[j] = v
    return _primitive(out)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


class EchelonForm:
    """Incrementally maintained row echelon form over the integers.

    Rows are sparse dicts ``column -> value``.  Each stored row has a pivot
    (its smallest column) no other stored row shares; reduction uses
    cross-multiplication and divides out the content, so entries stay
    integral and small.
    """

    def __init__(self):
        self.pivots: Dict[int, Dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, object]) -> Dict[int, int]:
        r = _integer_row(row)
        while r:
            p = min(r)
            prow = self.pivots.get(p)
            if prow is None:
                return r
            a, b = prow[p], r[p]
            g = gcd(a, b)
            a, b = a // g, b // g
            out = {j: a * v for j, v in r.items()}
            for j, v in prow.items():
                w = out.get(j, 0) - b * v
                if w:
                    out[j] = w
                else:
                    out.pop(j, None)
            r = _primitive(out)
        return r

    def add(self, row: Mapping[int, object]) -> bool:
        """Insert a row; return True when it raised the rank."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True


def rank(rows: Iterable[Mapping[int, object]]) -> int:
    """Rank over Q of a matrix given as sparse rows ``{column: entry}``."""
    ech = EchelonForm()
    for row in rows:
        ech.add(row)
    return ech.rank


def dense_rank(matrix) -> int:
    return rank({j: v for j, v in enumerate(row) if v} for row in matrix)
