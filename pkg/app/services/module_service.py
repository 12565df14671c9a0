"""Module Service - Hilbert functions, Koszul complexes and regular sequences."""

from itertools import combinations
from typing import Dict, List, Optional, Sequence

import structlog

from app.core.exceptions import NotCyclicError, RingMismatchError
from app.models.complex import ChainComplex
from app.models.free_module import FreeVector, GradedFreeModule
from app.models.graded_map import GradedMap
from app.models.polynomial import Polynomial
from app.models.presentation import ModulePresentation
from app.models.resolution import Resolution
from app.models.ring import GradedRing
from app.services.homology_service import homology_presentation, homology_vanishes
from app.services.resolution_service import ResolutionService

logger = structlog.get_logger(__name__)


def hilbert_function(M: ModulePresentation, t: int) -> int:
    """dim_k M_t."""
    return M.hilbert_function(t)


def length(M: ModulePresentation) -> Optional[int]:
    """ℓ(M), None when M has infinite length."""
    return M.length()


def _degree(f: Polynomial) -> int:
    d = f.homogeneous_degree()
    return 0 if d is None else d


def koszul_complex(ring: GradedRing, elements: Sequence[Polynomial]) -> ChainComplex:
    """Koszul complex on y_1..y_n.

    F_i has the i-subsets of {1..n} as basis in lexicographic order and
    d(e_S) = Σ_j (-1)^{j+1} y_{s_j} e_{S \\ s_j}.
    """
    S = ring.ambient
    for y in elements:
        if y.ring != S:
            raise RingMismatchError(f"{y} is not an element of {ring}")
    ys = [ring.reduce(y) for y in elements]
    degrees = [_degree(y) for y in elements]
    n = len(ys)
    subsets = {i: list(combinations(range(n), i)) for i in range(n + 1)}
    modules = {
        i: GradedFreeModule(tuple(sum(degrees[s] for s in subset) for subset in subsets[i]))
        for i in range(n + 1)
    }
    differentials: Dict[int, GradedMap] = {}
    for i in range(1, n + 1):
        position = {subset: k for k, subset in enumerate(subsets[i - 1])}
        target = modules[i - 1]
        columns: List[FreeVector] = []
        for subset in subsets[i]:
            comps = [S.zero()] * target.rank
            for j, s in enumerate(subset):
                face = subset[:j] + subset[j + 1:]
                y = ys[s] if j % 2 == 0 else -ys[s]
                comps[position[face]] = comps[position[face]] + y
            columns.append(FreeVector.from_components(S, target.twists, comps))
        differentials[i] = GradedMap(S, modules[i], target, columns, check=False)
    return ChainComplex(ring, modules, differentials)


def is_regular_sequence(ring: GradedRing, elements: Sequence[Polynomial]) -> bool:
    """Positive-degree elements form a regular sequence iff H_i(Koszul) = 0 for i > 0."""
    for y in elements:
        if not ring.reduce(y) or _degree(y) <= 0:
            return False
    K = koszul_complex(ring, elements)
    return all(homology_vanishes(K, i) for i in range(1, len(elements) + 1))


def annihilates(r: Polynomial, M: ModulePresentation) -> bool:
    """r·M = 0."""
    S = M.ring.ambient
    for k in range(M.rank):
        v = FreeVector.basis(S, M.twists, k).mul_poly(r)
        if not M.contains_relation(v):
            return False
    return True


def cyclic_ideal(resolution: Resolution) -> List[Polynomial]:
    """Generators of I for a module resolved as R/I.

    Raises:
        NotCyclicError: when β_0 is not 1
    """
    if resolution.betti.betti(0) != 1:
        raise NotCyclicError()
    if resolution.complex.hi < 1:
        return []
    return [c.component(0) for c in resolution.complex.differential(1).columns]


def tor1_self_test(M: ModulePresentation, cap: Optional[int] = None) -> bool:
    """Is I/I² ≅ Tor_1(R/I, R/I) free over R/I, for M = R/I.

    H_1(F ⊗ R/I) = F_1 ⊗ R/I modulo the image of d_2 ⊗ R/I, so the test
    compares its length with β_1·ℓ(R/I), or when M has infinite length
    checks that d_2 ⊗ R/I vanishes.

    Raises:
        NotCyclicError: when M needs more than one generator
    """
    resolution = ResolutionService(cap=cap).resolve(M)
    ideal = cyclic_ideal(resolution)
    quotient = M.ring.quotient(ideal)
    F = resolution.complex.base_change(quotient)
    beta1 = resolution.betti.betti(1)
    ell = M.length()
    if ell is not None:
        h1 = homology_presentation(F, 1).length() if beta1 else 0
        result = h1 == beta1 * ell
    else:
        result = F.differential(2).is_zero()
    logger.debug("tor1_self_test", beta1=beta1, length=ell, free=result)
    return result
