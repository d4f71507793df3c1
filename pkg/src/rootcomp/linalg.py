"""Sparse exact elimination over Q. Rows are ``{column: coefficient}`` dicts."""

from __future__ import annotations

from fractions import Fraction


def _exact(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Echelon:
    """Incrementally maintained row echelon form.

    Each stored pivot row is scaled so its smallest column carries 1.
    """

    def __init__(self):
        self.pivots: dict = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = {k: v for k, v in row.items() if v}
        pivots = self.pivots
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                return row
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = _exact(nv)
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert ``row``; return True when it raised the rank."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        inv = Fraction(1) / r[c]
        self.pivots[c] = {k: _exact(v * inv) for k, v in r.items()}
        return True

    def extend(self, rows) -> int:
        return sum(self.add(r) for r in rows)

    def is_consistent_with(self, row: dict, rhs_column) -> bool:
        """For an augmented row, False iff it reduces to a bare nonzero rhs entry."""
        r = self.reduce(row)
        return not (r and min(r) == rhs_column)

    def reduced_pivots(self) -> dict:
        """Pivot rows in reduced row echelon form."""
        out = {}
        for c in sorted(self.pivots, reverse=True):
            row = dict(self.pivots[c])
            for k in sorted(k for k in row if k != c and k in out):
                f = row.get(k)
                if not f:
                    continue
                for kk, vv in out[k].items():
                    nv = row.get(kk, 0) - f * vv
                    if nv:
                        row[kk] = _exact(nv)
                    else:
                        row.pop(kk, None)
            out[c] = row
        return out


def rank(rows) -> int:
    e = Echelon()
    e.extend(rows)
    return e.rank


def nullspace(rows, columns) -> list:
    """Basis (list of dicts) of ``{x : row . x = 0 for all rows}`` over ``columns``."""
    e = Echelon()
    e.extend(rows)
    rref = e.reduced_pivots()
    basis = []
    for free in columns:
        if free in rref:
            continue
        vec = {free: 1}
        for c, row in rref.items():
            coef = row.get(free)
            if coef:
                vec[c] = _exact(-coef)
        basis.append(vec)
    return basis
