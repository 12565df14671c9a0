"""Gröbner basis value type."""

from dataclasses import dataclass
from typing import List, Optional, Tuple

from app.models.free_module import FreeVector, Term
from app.models.monomial import AnyModuleOrder
from app.models.polynomial import Polynomial, PolynomialRing


@dataclass(frozen=True)
class GroebnerBasis:
    """A Gröbner basis of a submodule of a graded free module over S.

    `representations[k]` expresses generators[k] in terms of the input
    generators (coordinates twisted by `representation_twists`) when the
    basis was computed with tracking.
    """

    generators: Tuple[FreeVector, ...]
    order: AnyModuleOrder
    ring: PolynomialRing
    twists: Tuple[int, ...]
    reduced: bool = True
    representations: Optional[Tuple[FreeVector, ...]] = None
    representation_twists: Optional[Tuple[int, ...]] = None
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def leads(self) -> List[Term]:
        result = []
        for g in self.generators:
            pos, m, _ = g.leading_term(self.order)
            result.append((pos, m))
        return result

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(g.degree() for g in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def polynomials(self) -> List[Polynomial]:
        """Generators of an ideal basis (rank one ambient) as polynomials."""
        return [g.component(0) for g in self.generators]
