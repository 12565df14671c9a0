"""Homogeneous maps between graded free modules."""

from typing import List, Optional, Sequence

from app.core.exceptions import AlgebraError, InhomogeneousError, RingMismatchError
from app.models.free_module import FreeVector, GradedFreeModule, linear_combination
from app.models.polynomial import Polynomial, PolynomialRing


class GradedMap:
    """A map ⊕ S(-b_j) -> ⊕ S(-a_i) given by its columns.

    Column j is the image of the j-th source generator, a vector of the
    target module. Every nonzero column is homogeneous of degree b_j, so
    entry (i, j) has degree b_j - a_i.
    """

    __slots__ = ("ring", "source", "target", "columns")

    def __init__(
        self,
        ring: PolynomialRing,
        source: GradedFreeModule,
        target: GradedFreeModule,
        columns: Sequence[FreeVector],
        check: bool = True,
    ):
        if len(columns) != source.rank:
            raise AlgebraError(f"{len(columns)} columns for a source of rank {source.rank}")
        self.ring = ring
        self.source = source
        self.target = target
        self.columns = tuple(columns)
        if check:
            self._validate()

    def _validate(self) -> None:
        for j, col in enumerate(self.columns):
            if col.twists != self.target.twists or col.ring != self.ring:
                raise RingMismatchError(f"column {j + 1} is not a vector of the target module")
            for (i, m), _ in col.terms.items():
                if sum(m) + self.target.twists[i] != self.source.twists[j]:
                    raise InhomogeneousError(
                        f"entry ({i + 1},{j + 1}) = {col.component(i)} should have degree "
                        f"{self.source.twists[j] - self.target.twists[i]}"
                    )

    # ----- construction -----

    @classmethod
    def from_matrix(
        cls,
        ring: PolynomialRing,
        rows: Sequence[Sequence[Polynomial]],
        target_twists: Sequence[int],
        source_twists: Optional[Sequence[int]] = None,
    ) -> "GradedMap":
        """Build a map from a row-major matrix of polynomials.

        Source twists default to the ones forced by the entries; a column
        with no nonzero entry gets twist 0 unless given.
        """
        target = GradedFreeModule(tuple(target_twists))
        ncols = len(rows[0]) if rows else (len(source_twists) if source_twists else 0)
        if any(len(r) != ncols for r in rows):
            raise AlgebraError("matrix rows have different lengths")
        if len(rows) != target.rank:
            raise AlgebraError(f"{len(rows)} rows for a target of rank {target.rank}")
        for i, row in enumerate(rows):
            for j, entry in enumerate(row):
                if entry and not entry.is_homogeneous():
                    raise InhomogeneousError(f"entry ({i + 1},{j + 1}) = {entry} is not homogeneous")
        if source_twists is None:
            inferred = []
            for j in range(ncols):
                degree = None
                for i in range(len(rows)):
                    entry = rows[i][j]
                    if entry:
                        d = entry.homogeneous_degree() + target.twists[i]
                        if degree is not None and d != degree:
                            raise InhomogeneousError(
                                f"entry ({i + 1},{j + 1}) = {entry} has degree "
                                f"{entry.homogeneous_degree()}, expected {degree - target.twists[i]}"
                            )
                        degree = d
                inferred.append(degree if degree is not None else 0)
            source_twists = inferred
        source = GradedFreeModule(tuple(source_twists))
        columns = [
            FreeVector.from_components(ring, target.twists, [rows[i][j] for i in range(len(rows))])
            for j in range(ncols)
        ]
        return cls(ring, source, target, columns)

    @classmethod
    def zero(
        cls, ring: PolynomialRing, source: GradedFreeModule, target: GradedFreeModule
    ) -> "GradedMap":
        return cls(ring, source, target, [FreeVector.zero(ring, target.twists)] * source.rank)

    @classmethod
    def identity(cls, ring: PolynomialRing, module: GradedFreeModule) -> "GradedMap":
        return cls(
            ring,
            module,
            module,
            [FreeVector.basis(ring, module.twists, j) for j in range(module.rank)],
        )

    # ----- access -----

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j].component(i)

    def matrix(self) -> List[List[Polynomial]]:
        cols = [c.components() for c in self.columns]
        return [[cols[j][i] for j in range(self.source.rank)] for i in range(self.target.rank)]

    def is_zero(self) -> bool:
        return not any(self.columns)

    def unit_entries(self) -> List[tuple]:
        """Positions (i, j) whose entry has a nonzero constant part."""
        found = []
        for j, col in enumerate(self.columns):
            for (i, m), _ in col.terms.items():
                if not any(m):
                    found.append((i, j))
        return sorted(found)

    def is_minimal(self) -> bool:
        return not self.unit_entries()

    # ----- algebra -----

    def apply(self, v: FreeVector) -> FreeVector:
        if v.twists != self.source.twists:
            raise RingMismatchError("vector is not in the source module")
        return linear_combination(self.ring, self.target.twists, self.columns, v)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self ∘ other."""
        if other.target != self.source:
            raise RingMismatchError("maps are not composable")
        return GradedMap(
            self.ring,
            other.source,
            self.target,
            [self.apply(c) for c in other.columns],
            check=False,
        )

    def scale(self, c) -> "GradedMap":
        c = self.ring.field.element(c)
        return GradedMap(self.ring, self.source, self.target, [v.scale(c) for v in self.columns], check=False)

    def __neg__(self) -> "GradedMap":
        return GradedMap(self.ring, self.source, self.target, [-v for v in self.columns], check=False)

    def map_columns(self, fn) -> "GradedMap":
        return GradedMap(self.ring, self.source, self.target, [fn(v) for v in self.columns])

    def frobenius(self, q: int) -> "GradedMap":
        """Entrywise q-th powers; both twist lists scale by q."""
        return GradedMap(
            self.ring,
            GradedFreeModule(tuple(t * q for t in self.source.twists)),
            GradedFreeModule(tuple(t * q for t in self.target.twists)),
            [v.frobenius(q) for v in self.columns],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.columns == other.columns
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.columns))

    def __str__(self) -> str:
        rows = self.matrix()
        if not rows or not rows[0]:
            return f"0 : {self.source} -> {self.target}"
        return "[" + "; ".join(" ".join(str(e) for e in row) for row in rows) + "]"

    def __repr__(self) -> str:
        return f"GradedMap({self})"
