"""Standard graded quotient rings R = S/J."""

from functools import cached_property
from itertools import combinations
from typing import List, Sequence, Tuple

from app.core.exceptions import AlgebraError, InhomogeneousError, RingMismatchError
from app.models.field import CoefficientField
from app.models.free_module import FreeVector
from app.models.groebner_basis import GroebnerBasis
from app.models.monomial import DEGREVLEX, ModuleOrder, MonomialOrder
from app.models.polynomial import Polynomial, PolynomialRing
from app.services.groebner_service import buchberger, quotient_reduce


class GradedRing:
    """R = k[x_1..x_n]/J with J generated by homogeneous polynomials.

    Elements of R are represented by their normal forms modulo a Gröbner
    basis of J, so equality in R is equality of representatives.
    """

    def __init__(self, ambient: PolynomialRing, relations: Sequence[Polynomial] = ()):
        rels: List[Polynomial] = []
        for f in relations:
            if f.ring != ambient:
                raise RingMismatchError(f"relation {f} is not over {ambient}")
            if not f.is_homogeneous():
                raise InhomogeneousError(f"inhomogeneous generator {f}")
            if f:
                if f.is_constant():
                    raise AlgebraError("defining ideal is the unit ideal")
                rels.append(f)
        self.ambient = ambient
        self.relations: Tuple[Polynomial, ...] = tuple(rels)

    @classmethod
    def polynomial_ring(
        cls,
        field: CoefficientField,
        variables: Sequence[str],
        order: MonomialOrder = DEGREVLEX,
    ) -> "GradedRing":
        return cls(PolynomialRing(field, tuple(variables), order))

    # ----- basic data -----

    @property
    def field(self) -> CoefficientField:
        return self.ambient.field

    @property
    def characteristic(self) -> int:
        return self.ambient.field.characteristic

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.ambient.variables

    @property
    def nvars(self) -> int:
        return self.ambient.nvars

    @property
    def module_order(self) -> ModuleOrder:
        return ModuleOrder(self.ambient.order)

    def is_polynomial_ring(self) -> bool:
        return not self.relations

    @cached_property
    def ideal_basis(self) -> GroebnerBasis:
        return buchberger(
            [FreeVector.from_polynomial(f) for f in self.relations],
            self.module_order,
            ring=self.ambient,
            twists=(0,),
        )

    @cached_property
    def dimension(self) -> int:
        """Krull dimension, read off the leading monomials of J.

        The largest set of variables containing the support of no
        leading monomial.
        """
        leads = [m for _, m in self.ideal_basis.leads]
        supports = [frozenset(i for i, e in enumerate(m) if e) for m in leads]
        n = self.nvars
        for size in range(n, -1, -1):
            for subset in combinations(range(n), size):
                chosen = frozenset(subset)
                if not any(s <= chosen for s in supports):
                    return size
        return 0

    @cached_property
    def is_complete_intersection(self) -> bool:
        """J is generated by a regular sequence: ht J equals the generator count."""
        return self.nvars - self.dimension == len(self.relations)

    # ----- reduction -----

    def reduce(self, f: Polynomial) -> Polynomial:
        return quotient_reduce(f, self)

    def reduce_vector(self, v: FreeVector) -> FreeVector:
        """Reduce every component of v modulo J."""
        if not self.relations or not v:
            return v
        return FreeVector.from_components(
            self.ambient, v.twists, [self.reduce(c) for c in v.components()]
        )

    def ideal_vectors(self, twists: Sequence[int]) -> List[FreeVector]:
        """Generators of the submodule J·S^r of the free module with `twists`."""
        twists = tuple(twists)
        gens = self.ideal_basis.polynomials()
        result = []
        for k in range(len(twists)):
            for f in gens:
                comps = [self.ambient.zero()] * len(twists)
                comps[k] = f
                result.append(FreeVector.from_components(self.ambient, twists, comps))
        return result

    # ----- construction -----

    def quotient(self, extra: Sequence[Polynomial]) -> "GradedRing":
        """The ring S/(J + extra)."""
        return GradedRing(self.ambient, list(self.relations) + list(extra))

    def parse(self, text: str) -> Polynomial:
        return self.reduce(self.ambient.parse(text))

    def same_ring(self, other: "GradedRing") -> bool:
        return self.ambient == other.ambient and self.ideal_basis.generators == other.ideal_basis.generators

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedRing):
            return NotImplemented
        return self.same_ring(other)

    def __hash__(self) -> int:
        return hash(self.ambient)

    def __str__(self) -> str:
        if not self.relations:
            return str(self.ambient)
        return f"{self.ambient}/({', '.join(str(f) for f in self.relations)})"
