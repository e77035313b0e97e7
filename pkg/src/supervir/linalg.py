"""
Exact sparse Gaussian elimination over the rationals.

Vectors are dicts mapping an orderable key to a nonzero ``Fraction``.  The
pivot of a vector is its smallest key, so results depend only on the key
order and never on dict iteration order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Vec = dict


def axpy(y: dict, a: Fraction, x: Mapping) -> None:
    """In place y += a * x, dropping cancelled entries."""
    for k, v in x.items():
        z = y.get(k, 0) + a * v
        if z:
            y[k] = z
        else:
            y.pop(k, None)


class SparseEchelon:
    """Row echelon basis of a growing subspace, with provenance.

    Each stored row carries ``combo``: the combination of inserted labels it
    equals, so membership answers come with an explicit certificate.
    """

    def __init__(self):
        self.rows: dict[Hashable, tuple[dict, dict]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Mapping, combo: Mapping | None = None) -> tuple[dict, dict]:
        vec = dict(vec)
        combo = dict(combo or {})
        while vec:
            p = min(vec)
            row = self.rows.get(p)
            if row is None:
                break
            f = vec[p]
            axpy(vec, -f, row[0])
            axpy(combo, -f, row[1])
        return vec, combo

    def insert(self, vec: Mapping, label: Hashable) -> tuple[bool, dict]:
        """Add ``vec`` (named ``label``).

        Returns (True, {}) if it enlarged the span, else (False, dependency)
        where ``dependency`` is a combination of labels summing to zero.
        """
        res, combo = self.reduce(vec, {label: Fraction(1)})
        if not res:
            return False, combo
        p = min(res)
        inv = 1 / res[p]
        self.rows[p] = ({k: v * inv for k, v in res.items()}, {k: v * inv for k, v in combo.items()})
        return True, {}

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)[0]

    def express(self, vec: Mapping) -> dict | None:
        """Labels-combination equal to ``vec``, or None when outside the span."""
        res, combo = self.reduce(vec)
        if res:
            return None
        return {k: -v for k, v in combo.items()}


def rref(vectors: Iterable[Mapping]) -> list[dict]:
    """Reduced row echelon form (pivot = smallest key, pivot entry 1), sorted by pivot."""
    ech = SparseEchelon()
    for i, v in enumerate(vectors):
        ech.insert(v, i)
    pivots = sorted(ech.rows)
    rows = {p: dict(ech.rows[p][0]) for p in pivots}
    for p in reversed(pivots):
        for q in pivots:
            if q != p and p in rows[q]:
                axpy(rows[q], -rows[q][p], rows[p])
    return [rows[p] for p in pivots]


def kernel(columns: list[Mapping]) -> list[dict]:
    """Basis of {x : sum_j x_j columns[j] = 0}, as dicts over column indices, in RREF."""
    ech = SparseEchelon()
    deps = []
    for j, col in enumerate(columns):
        fresh, dep = ech.insert(col, j)
        if not fresh:
            deps.append(dep)
    return rref(deps)
