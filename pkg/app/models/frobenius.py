"""Frobenius iterates and Dutta sequences."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from app.core.exceptions import CharacteristicError
from app.models.ring import GradedRing


@dataclass(frozen=True)
class FrobeniusTwistSpec:
    """The e-th Frobenius iterate over a ring of characteristic p and dimension d."""

    e: int
    p: int
    dimension: int

    def __post_init__(self) -> None:
        if self.p == 0:
            raise CharacteristicError("Frobenius requires positive characteristic")
        if self.e < 0:
            raise ValueError("Frobenius iterate must be non-negative")

    @classmethod
    def for_ring(cls, ring: GradedRing, e: int) -> "FrobeniusTwistSpec":
        return cls(e=e, p=ring.characteristic, dimension=ring.dimension)

    @property
    def q(self) -> int:
        """p^e, the exponent applied to matrix entries."""
        return self.p**self.e

    @property
    def scale(self) -> int:
        """p^{d·e}, the normalisation of χ(ϕ^e F)."""
        return self.p ** (self.dimension * self.e)


@dataclass(frozen=True)
class DuttaSequence:
    """χ(ϕ^e F)/p^{de} for e = 0..e_max, kept exact."""

    p: int
    dimension: int
    raw: Tuple[int, ...]
    terms: Tuple[Fraction, ...]

    @classmethod
    def from_raw(cls, p: int, dimension: int, raw: Sequence[int]) -> "DuttaSequence":
        """Normalise raw Euler characteristics by p^{d·e}."""
        terms = tuple(Fraction(chi, p ** (dimension * e)) for e, chi in enumerate(raw))
        return cls(p=p, dimension=dimension, raw=tuple(raw), terms=terms)

    @property
    def e_max(self) -> int:
        return len(self.terms) - 1

    @property
    def is_constant(self) -> bool:
        return len(set(self.terms)) <= 1

    @property
    def is_positive(self) -> bool:
        return all(t > 0 for t in self.terms)
