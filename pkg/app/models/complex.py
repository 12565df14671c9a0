"""Bounded complexes of graded free modules over R = S/J."""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from app.core.exceptions import AuditError, RingMismatchError
from app.models.betti import BettiTable
from app.models.free_module import FreeVector, GradedFreeModule
from app.models.graded_map import GradedMap
from app.models.ring import GradedRing


class ChainComplex:
    """F_lo <- ... <- F_hi with d_i: F_i -> F_{i-1}.

    Differentials are stored with entries reduced modulo J. Degrees with no
    module are zero; a missing differential is the zero map.
    """

    def __init__(
        self,
        ring: GradedRing,
        modules: Mapping[int, GradedFreeModule],
        differentials: Optional[Mapping[int, GradedMap]] = None,
        check: bool = True,
    ):
        self.ring = ring
        self.modules: Dict[int, GradedFreeModule] = dict(sorted(modules.items()))
        self.differentials: Dict[int, GradedMap] = {}
        for i, d in sorted((differentials or {}).items()):
            if d.ring != ring.ambient:
                raise RingMismatchError(f"differential d_{i} is over another ring")
            if d.source != self.module(i) or d.target != self.module(i - 1):
                raise RingMismatchError(f"differential d_{i} does not map F_{i} to F_{i - 1}")
            if d.source.rank and d.target.rank:
                self.differentials[i] = d.map_columns(ring.reduce_vector)
        if check:
            self.check_square_zero()

    @classmethod
    def from_maps(
        cls, ring: GradedRing, maps: Sequence[GradedMap], start: int = 1, check: bool = True
    ) -> "ChainComplex":
        """Complex whose differentials are maps[0] = d_start, maps[1] = d_{start+1}, ..."""
        modules: Dict[int, GradedFreeModule] = {}
        differentials: Dict[int, GradedMap] = {}
        for k, d in enumerate(maps):
            i = start + k
            modules[i - 1] = d.target
            modules[i] = d.source
            differentials[i] = d
        return cls(ring, modules, differentials, check=check)

    @classmethod
    def concentrated(cls, ring: GradedRing, module: GradedFreeModule, degree: int = 0) -> "ChainComplex":
        return cls(ring, {degree: module}, {})

    # ----- access -----

    def module(self, i: int) -> GradedFreeModule:
        return self.modules.get(i, GradedFreeModule())

    def differential(self, i: int) -> GradedMap:
        d = self.differentials.get(i)
        if d is None:
            return GradedMap.zero(self.ring.ambient, self.module(i), self.module(i - 1))
        return d

    @property
    def degrees(self) -> List[int]:
        return list(self.modules)

    @property
    def lo(self) -> int:
        return min(self.modules, default=0)

    @property
    def hi(self) -> int:
        return max(self.modules, default=-1)

    def ranks(self) -> Tuple[int, ...]:
        """Ranks over lo..hi."""
        return tuple(self.module(i).rank for i in range(self.lo, self.hi + 1))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.modules.values())

    def betti_table(self) -> BettiTable:
        return BettiTable.from_twists({i: m.twists for i, m in self.modules.items()})

    def is_minimal(self) -> bool:
        return all(d.is_minimal() for d in self.differentials.values())

    # ----- audits -----

    def check_square_zero(self) -> None:
        for i in self.differentials:
            if i - 1 not in self.differentials:
                continue
            composite = self.differentials[i - 1].compose(self.differentials[i])
            if any(self.ring.reduce_vector(c) for c in composite.columns):
                raise AuditError(f"d_{i - 1} ∘ d_{i} is not zero")

    # ----- constructions -----

    def shift(self, k: int) -> "ChainComplex":
        """F[k]: (F[k])_n = F_{n-k}, differential (-1)^k d."""
        sign = -1 if k % 2 else 1
        modules = {i + k: m for i, m in self.modules.items()}
        differentials = {
            i + k: (d if sign == 1 else -d) for i, d in self.differentials.items()
        }
        return ChainComplex(self.ring, modules, differentials, check=False)

    def direct_sum(self, other: "ChainComplex") -> "ChainComplex":
        if other.ring != self.ring:
            raise RingMismatchError("complexes over different rings")
        S = self.ring.ambient
        degrees = sorted(set(self.modules) | set(other.modules))
        modules = {i: self.module(i).direct_sum(other.module(i)) for i in degrees}
        differentials: Dict[int, GradedMap] = {}
        for i in degrees:
            if i - 1 not in modules:
                continue
            target = modules[i - 1]
            left_rank = self.module(i - 1).rank
            columns = [c.embed(target.twists, 0) for c in self.differential(i).columns]
            columns += [c.embed(target.twists, left_rank) for c in other.differential(i).columns]
            differentials[i] = GradedMap(S, modules[i], target, columns, check=False)
        return ChainComplex(self.ring, modules, differentials, check=False)

    def base_change(self, ring: GradedRing) -> "ChainComplex":
        """F ⊗_R R' for R' = S/J' with the same ambient S and J ⊆ J'."""
        if ring.ambient != self.ring.ambient:
            raise RingMismatchError("base change needs the same ambient polynomial ring")
        return ChainComplex(ring, self.modules, self.differentials, check=False)

    def trimmed(self) -> "ChainComplex":
        """Drop rank-zero modules at both ends."""
        nonzero = [i for i, m in self.modules.items() if m.rank]
        if not nonzero:
            return ChainComplex(self.ring, {}, {}, check=False)
        lo, hi = min(nonzero), max(nonzero)
        modules = {i: m for i, m in self.modules.items() if lo <= i <= hi}
        differentials = {i: d for i, d in self.differentials.items() if lo < i <= hi}
        return ChainComplex(self.ring, modules, differentials, check=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        if other.ring != self.ring:
            return False
        degrees = set(self.modules) | set(other.modules)
        return all(
            self.module(i) == other.module(i) and self.differential(i) == other.differential(i)
            for i in degrees
        )

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        parts = [f"F_{i} = {m}" for i, m in self.modules.items()]
        return "; ".join(parts) if parts else "0"


@dataclass(frozen=True)
class ComplexInvolution:
    """A degreewise signed permutation of a complex's bases.

    `permutations[n][a] = (b, s)` sends basis vector a of degree n to s times
    basis vector b.
    """

    complex: ChainComplex
    permutations: Mapping[int, Tuple[Tuple[int, int], ...]]

    def as_map(self, n: int) -> GradedMap:
        module = self.complex.module(n)
        S = self.complex.ring.ambient
        F = S.field
        columns = [
            FreeVector.basis(S, module.twists, b).scale(F.element(s))
            for b, s in self.permutations.get(n, ())
        ]
        return GradedMap(S, module, module, columns)

    def matrix(self, n: int) -> List[List[int]]:
        size = self.complex.module(n).rank
        rows = [[0] * size for _ in range(size)]
        for a, (b, s) in enumerate(self.permutations.get(n, ())):
            rows[b][a] = s
        return rows

    def apply(self, n: int, v: FreeVector) -> FreeVector:
        return self.as_map(n).apply(v)

    def squares_to_identity(self) -> bool:
        for n, perm in self.permutations.items():
            for a, (b, s) in enumerate(perm):
                c, t = perm[b]
                if c != a or s * t != 1:
                    return False
        return True

    def commutes_with_differential(self) -> bool:
        ring = self.complex.ring
        for n in self.complex.differentials:
            d = self.complex.differential(n)
            left = d.compose(self.as_map(n))
            right = self.as_map(n - 1).compose(d)
            if any(ring.reduce_vector(a - b) for a, b in zip(left.columns, right.columns)):
                return False
        return True
