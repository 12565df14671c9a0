"""Finitely presented graded modules and their staircases."""

from functools import cached_property
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence

from app.models import monomial as mono
from app.models.free_module import FreeVector, GradedFreeModule, Term
from app.models.graded_map import GradedMap
from app.models.groebner_basis import GroebnerBasis
from app.models.monomial import Monomial
from app.models.polynomial import Polynomial
from app.models.ring import GradedRing
from app.services.groebner_service import normal_form, submodule_basis


class Staircase:
    """Standard monomials of a submodule of a free module, per component.

    `walls[i]` holds the leading monomials of the Gröbner basis that sit in
    component i. A monomial is standard when no wall divides it.
    """

    def __init__(self, nvars: int, twists: Sequence[int], leads: Sequence[Term]):
        self.nvars = nvars
        self.twists = tuple(twists)
        self.walls: List[List[Monomial]] = [[] for _ in self.twists]
        for pos, m in leads:
            self.walls[pos].append(m)

    def killed(self, i: int) -> bool:
        return mono.one(self.nvars) in self.walls[i]

    def bounds(self, i: int) -> List[Optional[int]]:
        """Smallest pure power of each variable among the walls of component i."""
        result: List[Optional[int]] = [None] * self.nvars
        for m in self.walls[i]:
            v = mono.pure_power_variable(m)
            if v is not None and (result[v] is None or m[v] < result[v]):
                result[v] = m[v]
        return result

    def is_finite(self) -> bool:
        return all(
            self.killed(i) or all(b is not None for b in self.bounds(i))
            for i in range(len(self.twists))
        )

    def is_standard(self, i: int, m: Monomial) -> bool:
        return not any(mono.divides(w, m) for w in self.walls[i])

    def standard_monomials(self, i: int) -> Iterator[Monomial]:
        """All standard monomials of a finite component."""
        if self.killed(i):
            return
        bounds = self.bounds(i)
        if any(b is None for b in bounds):
            raise ValueError("component is not of finite length")
        for m in product(*(range(b) for b in bounds)):
            if self.is_standard(i, m):
                yield tuple(m)

    def count(self, t: int) -> int:
        """Number of standard monomials in internal degree t."""
        total = 0
        for i, twist in enumerate(self.twists):
            if self.killed(i):
                continue
            for m in mono.monomials_of_degree(self.nvars, t - twist):
                if self.is_standard(i, m):
                    total += 1
        return total

    def degree_profile(self) -> Dict[int, int]:
        """Internal degree -> count of standard monomials, finite case only."""
        profile: Dict[int, int] = {}
        for i, twist in enumerate(self.twists):
            for m in self.standard_monomials(i):
                d = sum(m) + twist
                profile[d] = profile.get(d, 0) + 1
        return profile

    def total(self) -> int:
        return sum(self.degree_profile().values())

    def top_degree(self) -> Optional[int]:
        profile = self.degree_profile()
        return max(profile) if profile else None


class ModulePresentation:
    """The module coker(φ) for a homogeneous map φ: F1 -> F0 over R.

    Lengths and Hilbert functions come from the staircase of a Gröbner
    basis of the column span plus J·F0.
    """

    def __init__(self, ring: GradedRing, presentation: GradedMap):
        if presentation.ring != ring.ambient:
            raise ValueError("presentation is not over the ring's ambient polynomial ring")
        self.ring = ring
        self.presentation = presentation

    @classmethod
    def cyclic(cls, ring: GradedRing, ideal: Sequence[Polynomial]) -> "ModulePresentation":
        """R/I for I generated by `ideal`."""
        phi = GradedMap.from_matrix(ring.ambient, [list(ideal)], (0,))
        return cls(ring, phi)

    @property
    def generators(self) -> GradedFreeModule:
        return self.presentation.target

    @property
    def twists(self):
        return self.presentation.target.twists

    @property
    def rank(self) -> int:
        return self.presentation.target.rank

    def is_cyclic_presentation(self) -> bool:
        return self.rank == 1

    def ideal(self) -> List[Polynomial]:
        """Entries of a one-row presentation, i.e. I when M = R/I."""
        return [c.component(0) for c in self.presentation.columns if c]

    @cached_property
    def relation_basis(self) -> GroebnerBasis:
        return submodule_basis(self.presentation.columns, self.twists, self.ring)

    @cached_property
    def staircase(self) -> Staircase:
        return Staircase(self.ring.nvars, self.twists, self.relation_basis.leads)

    def hilbert_function(self, t: int) -> int:
        return self.staircase.count(t)

    def is_finite_length(self) -> bool:
        return self.staircase.is_finite()

    @cached_property
    def _length(self) -> Optional[int]:
        if not self.staircase.is_finite():
            return None
        return self.staircase.total()

    def length(self) -> Optional[int]:
        """ℓ(M), or None when M is not of finite length."""
        return self._length

    def is_zero(self) -> bool:
        return all(self.staircase.killed(i) for i in range(self.rank))

    def normal_form(self, v: FreeVector) -> FreeVector:
        return normal_form(v, self.relation_basis)

    def contains_relation(self, v: FreeVector) -> bool:
        """True when v maps to zero in M."""
        return not self.normal_form(v)

    def __str__(self) -> str:
        return f"coker {self.presentation} over {self.ring}"
