"""Sparse exact linear algebra over a coefficient field.

Rows are dicts column -> nonzero field element. Only ranks are needed by
the callers, so the echelon form is built incrementally and rows are
never stored in dense form.
"""

from typing import Dict, Iterable

from app.models.field import CoefficientField, Element

Row = Dict[int, Element]


class EchelonForm:
    """Incremental row echelon form; each stored row has pivot 1 at its smallest column."""

    def __init__(self, field: CoefficientField):
        self.field = field
        self.pivots: Dict[int, Row] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Row) -> Row:
        F = self.field
        work = {c: v for c, v in row.items() if v != 0}
        while True:
            hits = [c for c in work if c in self.pivots]
            if not hits:
                return work
            c = min(hits)
            factor = work[c]
            for col, value in self.pivots[c].items():
                updated = F.sub(work[col], F.mul(factor, value)) if col in work else F.neg(F.mul(factor, value))
                if updated == 0:
                    work.pop(col, None)
                else:
                    work[col] = updated

    def add(self, row: Row) -> bool:
        """Insert a row; True when it was independent of the rows so far."""
        reduced = self.reduce(row)
        if not reduced:
            return False
        c = min(reduced)
        inv = self.field.inv(reduced[c])
        self.pivots[c] = {col: self.field.mul(v, inv) for col, v in reduced.items()}
        return True

    def contains(self, row: Row) -> bool:
        return not self.reduce(row)


def rank(rows: Iterable[Row], field: CoefficientField) -> int:
    echelon = EchelonForm(field)
    for row in rows:
        echelon.add(row)
    return echelon.rank
