"""Graded free modules and their elements.

A GradedFreeModule is the list of internal degrees (twists) of its basis
e_1..e_r, i.e. the module ⊕ S(-a_i). A FreeVector is an element of such a
module over the ambient polynomial ring S, stored as a sparse map
(component index, monomial) -> coefficient.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.core.exceptions import AlgebraError, InhomogeneousError, RingMismatchError
from app.models import monomial as mono
from app.models.field import Element
from app.models.monomial import AnyModuleOrder, Monomial
from app.models.polynomial import Polynomial, PolynomialRing

Term = Tuple[int, Monomial]


@dataclass(frozen=True)
class GradedFreeModule:
    """Free module with generators in the given internal degrees."""

    twists: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "twists", tuple(int(t) for t in self.twists))

    @property
    def rank(self) -> int:
        return len(self.twists)

    def is_zero(self) -> bool:
        return not self.twists

    def shift(self, k: int) -> "GradedFreeModule":
        """Twist every generator degree up by k."""
        return GradedFreeModule(tuple(t + k for t in self.twists))

    def direct_sum(self, other: "GradedFreeModule") -> "GradedFreeModule":
        return GradedFreeModule(self.twists + other.twists)

    def __str__(self) -> str:
        if not self.twists:
            return "0"
        return " + ".join(f"R({-t})" if t else "R" for t in self.twists)


class FreeVector:
    """Element of a graded free module over the ambient polynomial ring."""

    __slots__ = ("ring", "twists", "terms")

    def __init__(
        self,
        ring: PolynomialRing,
        twists: Tuple[int, ...],
        terms: Dict[Term, Element],
    ):
        self.ring = ring
        self.twists = twists
        self.terms: Dict[Term, Element] = {t: c for t, c in terms.items() if c != 0}

    # ----- construction -----

    @classmethod
    def zero(cls, ring: PolynomialRing, twists: Sequence[int]) -> "FreeVector":
        return cls(ring, tuple(twists), {})

    @classmethod
    def basis(cls, ring: PolynomialRing, twists: Sequence[int], i: int) -> "FreeVector":
        return cls(ring, tuple(twists), {(i, mono.one(ring.nvars)): ring.field.one})

    @classmethod
    def from_components(
        cls, ring: PolynomialRing, twists: Sequence[int], components: Sequence[Polynomial]
    ) -> "FreeVector":
        twists = tuple(twists)
        if len(components) != len(twists):
            raise AlgebraError("component count does not match the rank")
        terms: Dict[Term, Element] = {}
        for i, f in enumerate(components):
            if f.ring != ring:
                raise RingMismatchError(f"component over {f.ring}, expected {ring}")
            for m, c in f.terms.items():
                terms[(i, m)] = c
        return cls(ring, twists, terms)

    @classmethod
    def from_polynomial(cls, f: Polynomial, twist: int = 0) -> "FreeVector":
        return cls.from_components(f.ring, (twist,), [f])

    # ----- structure -----

    @property
    def rank(self) -> int:
        return len(self.twists)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def component(self, i: int) -> Polynomial:
        return Polynomial(self.ring, {m: c for (j, m), c in self.terms.items() if j == i})

    def components(self) -> List[Polynomial]:
        parts: List[Dict[Monomial, Element]] = [{} for _ in self.twists]
        for (j, m), c in self.terms.items():
            parts[j][m] = c
        return [Polynomial(self.ring, p) for p in parts]

    def support(self) -> List[int]:
        return sorted({j for j, _ in self.terms})

    def term_degree(self, t: Term) -> int:
        return sum(t[1]) + self.twists[t[0]]

    def degree(self) -> Optional[int]:
        """Homogeneous degree, None for the zero vector."""
        degrees = {self.term_degree(t) for t in self.terms}
        if len(degrees) > 1:
            raise InhomogeneousError()
        return degrees.pop() if degrees else None

    def is_homogeneous(self) -> bool:
        return len({self.term_degree(t) for t in self.terms}) <= 1

    def leading_term(self, order: AnyModuleOrder) -> Tuple[int, Monomial, Element]:
        if not self.terms:
            raise AlgebraError("zero vector has no leading term")
        pos, m = max(self.terms, key=lambda t: order.key(t[0], t[1]))
        return pos, m, self.terms[(pos, m)]

    # ----- arithmetic -----

    def _check(self, other: "FreeVector") -> None:
        if self.twists != other.twists or (other.ring is not self.ring and other.ring != self.ring):
            raise RingMismatchError("vectors live in different free modules")

    def __add__(self, other: "FreeVector") -> "FreeVector":
        self._check(other)
        F = self.ring.field
        terms = dict(self.terms)
        for t, c in other.terms.items():
            terms[t] = F.add(terms[t], c) if t in terms else c
        return FreeVector(self.ring, self.twists, terms)

    def __neg__(self) -> "FreeVector":
        F = self.ring.field
        return FreeVector(self.ring, self.twists, {t: F.neg(c) for t, c in self.terms.items()})

    def __sub__(self, other: "FreeVector") -> "FreeVector":
        return self + (-other)

    def scale(self, c: Element) -> "FreeVector":
        F = self.ring.field
        if c == 0:
            return FreeVector(self.ring, self.twists, {})
        return FreeVector(self.ring, self.twists, {t: F.mul(a, c) for t, a in self.terms.items()})

    def mul_term(self, m: Monomial, c: Element) -> "FreeVector":
        F = self.ring.field
        return FreeVector(
            self.ring,
            self.twists,
            {(j, mono.mul(k, m)): F.mul(a, c) for (j, k), a in self.terms.items()},
        )

    def mul_poly(self, f: Polynomial) -> "FreeVector":
        F = self.ring.field
        terms: Dict[Term, Element] = {}
        for m, c in f.terms.items():
            for (j, k), a in self.terms.items():
                t = (j, mono.mul(k, m))
                v = F.mul(a, c)
                terms[t] = F.add(terms[t], v) if t in terms else v
        return FreeVector(self.ring, self.twists, terms)

    def add_scaled(self, other: "FreeVector", m: Monomial, c: Element) -> "FreeVector":
        """self + c * m * other without building the intermediate vector."""
        F = self.ring.field
        terms = dict(self.terms)
        for (j, k), a in other.terms.items():
            t = (j, mono.mul(k, m))
            v = F.mul(a, c)
            if t in terms:
                s = F.add(terms[t], v)
                if s == 0:
                    del terms[t]
                else:
                    terms[t] = s
            else:
                terms[t] = v
        return FreeVector(self.ring, self.twists, terms)

    def frobenius(self, q: int) -> "FreeVector":
        """Raise every component to the q-th power, q a power of p; twists scale by q."""
        return FreeVector(
            self.ring,
            tuple(t * q for t in self.twists),
            {(j, mono.scale(m, q)): c for (j, m), c in self.terms.items()},
        )

    def restrict(self, count: int) -> "FreeVector":
        """Projection onto the first `count` components."""
        return FreeVector(
            self.ring,
            self.twists[:count],
            {(j, m): c for (j, m), c in self.terms.items() if j < count},
        )

    def embed(self, twists: Sequence[int], offset: int = 0) -> "FreeVector":
        """Place this vector into a larger free module starting at `offset`."""
        return FreeVector(
            self.ring,
            tuple(twists),
            {(j + offset, m): c for (j, m), c in self.terms.items()},
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeVector):
            return NotImplemented
        return self.twists == other.twists and self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.twists, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return "(" + ", ".join(str(p) for p in self.components()) + ")"

    def __repr__(self) -> str:
        return f"FreeVector{self}"


def linear_combination(
    ring: PolynomialRing,
    twists: Sequence[int],
    vectors: Sequence[FreeVector],
    coefficients: FreeVector,
) -> FreeVector:
    """Σ_k coefficients[k] * vectors[k]; `coefficients` indexes the vectors."""
    F = ring.field
    terms: Dict[Term, Element] = {}
    for (k, m), c in coefficients.terms.items():
        for (j, n), a in vectors[k].terms.items():
            t = (j, mono.mul(n, m))
            v = F.mul(a, c)
            terms[t] = F.add(terms[t], v) if t in terms else v
    return FreeVector(ring, tuple(twists), terms)


def check_homogeneous(vectors: Iterable[FreeVector]) -> None:
    for v in vectors:
        if not v.is_homogeneous():
            raise InhomogeneousError()
