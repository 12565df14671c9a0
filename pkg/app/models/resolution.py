"""Minimal free resolutions."""

from dataclasses import dataclass
from typing import Tuple

from app.models.betti import BettiTable
from app.models.complex import ChainComplex
from app.models.graded_map import GradedMap
from app.models.presentation import ModulePresentation


@dataclass(frozen=True)
class Resolution:
    """F_0 <- F_1 <- ... <- F_pd resolving `module`, with its Betti table."""

    module: ModulePresentation
    complex: ChainComplex
    betti: BettiTable
    audited: bool = False

    @property
    def projective_dimension(self) -> int:
        return self.betti.projective_dimension

    @property
    def differentials(self) -> Tuple[GradedMap, ...]:
        return tuple(self.complex.differential(i) for i in range(1, self.complex.hi + 1))

    @property
    def ranks(self) -> Tuple[int, ...]:
        return self.betti.row
