"""Frobenius Service - Frobenius twists of complexes and Dutta sequences."""

from typing import Optional

import structlog

from app.models.complex import ChainComplex
from app.models.frobenius import DuttaSequence, FrobeniusTwistSpec
from app.models.free_module import GradedFreeModule
from app.services.complex_service import splitting
from app.services.homology_service import (
    euler_characteristic,
    homology_presentation,
    homology_vanishes,
)

logger = structlog.get_logger(__name__)


def frobenius_twist(C: ChainComplex, e: int) -> ChainComplex:
    """ϕ^e C: entries raised to the p^e-th power, twists multiplied by p^e.

    Raises:
        CharacteristicError: over a field of characteristic 0
    """
    spec = FrobeniusTwistSpec.for_ring(C.ring, e)
    if e == 0:
        return C
    q = spec.q
    modules = {n: GradedFreeModule(tuple(t * q for t in m.twists)) for n, m in C.modules.items()}
    differentials = {n: d.frobenius(q) for n, d in C.differentials.items()}
    return ChainComplex(C.ring, modules, differentials)


def dutta_estimate(F: ChainComplex, e_max: int, oracle: Optional[bool] = None) -> DuttaSequence:
    """The exact sequence χ(ϕ^e F)/p^{de}, e = 0..e_max.

    Raises:
        CharacteristicError: over a field of characteristic 0
        NotFiniteLengthError: when some ϕ^e F has homology of infinite length
    """
    raw = []
    for e in range(e_max + 1):
        spec = FrobeniusTwistSpec.for_ring(F.ring, e)
        chi = euler_characteristic(frobenius_twist(F, e), oracle)
        raw.append(chi)
        logger.debug("dutta_term", e=e, chi=chi, scale=spec.scale)
    return DuttaSequence.from_raw(F.ring.characteristic, F.ring.dimension, raw)


def frobenius_minimality_audit(F: ChainComplex, e: int) -> bool:
    """ϕ^e F is again a minimal resolution of a finite length module."""
    G = frobenius_twist(F, e)
    if not G.is_minimal():
        return False
    if not all(homology_vanishes(G, i) for i in range(G.lo + 1, G.hi + 1)):
        return False
    return homology_presentation(G, G.lo).is_finite_length()


def frobenius_composes(F: ChainComplex, e1: int, e2: int) -> bool:
    """ϕ^{e1} ∘ ϕ^{e2} = ϕ^{e1+e2} as matrices."""
    return frobenius_twist(frobenius_twist(F, e2), e1) == frobenius_twist(F, e1 + e2)


def frobenius_commutes_with_squares(F: ChainComplex, e: int) -> bool:
    """ϕ^e S²F = S²ϕ^e F and ϕ^e Λ²F = Λ²ϕ^e F under the fixed bases."""
    before = splitting(F)
    after = splitting(frobenius_twist(F, e))
    return (
        frobenius_twist(before.sym, e) == after.sym
        and frobenius_twist(before.wedge, e) == after.wedge
    )
