"""Resolution Service - minimal graded free resolutions over R = S/J."""

from typing import Dict, List, Optional

import structlog

from app.core.config import settings
from app.core.exceptions import AuditError, ResolutionCapError, ZeroModuleError
from app.models.complex import ChainComplex
from app.models.free_module import FreeVector, GradedFreeModule
from app.models.graded_map import GradedMap
from app.models.presentation import ModulePresentation
from app.models.resolution import Resolution
from app.models.ring import GradedRing
from app.services.groebner_service import kernel, minimal_generators
from app.services.homology_service import homology_presentation, homology_vanishes

logger = structlog.get_logger(__name__)


def _drop_component(v: FreeVector, k: int, twists) -> FreeVector:
    terms = {}
    for (j, m), c in v.terms.items():
        if j == k:
            continue
        terms[(j - 1 if j > k else j, m)] = c
    return FreeVector(v.ring, tuple(twists), terms)


def _find_unit(columns: List[FreeVector]) -> Optional[tuple]:
    for b, col in enumerate(columns):
        for (a, m), c in sorted(col.terms.items()):
            if not any(m):
                return a, b, c
    return None


def prune(C: ChainComplex) -> ChainComplex:
    """Gaussian elimination of unit entries.

    For a unit u at (a, b) of d_n the complex splits off u: e_b -> e_a.
    d_n becomes ε - γ u⁻¹ δ on the remaining rows and columns, row b of
    d_{n+1} and column a of d_{n-1} are deleted. The result is homotopy
    equivalent to C and has no constant entries.
    """
    ring = C.ring
    S = ring.ambient
    field = S.field
    twists: Dict[int, List[int]] = {n: list(m.twists) for n, m in C.modules.items()}
    columns: Dict[int, List[FreeVector]] = {
        n: list(C.differential(n).columns) for n in C.modules
    }
    while True:
        hit = None
        for n in sorted(columns):
            if n - 1 not in twists or not twists[n - 1]:
                continue
            found = _find_unit(columns[n])
            if found is not None:
                hit = (n, found)
                break
        if hit is None:
            break
        n, (a, b, u) = hit
        pivot = columns[n][b]
        inv = field.inv(u)
        updated = []
        for j, col in enumerate(columns[n]):
            if j == b:
                continue
            entry = col.component(a)
            if entry:
                col = col - pivot.mul_poly(entry).scale(inv)
            updated.append(col)
        del twists[n - 1][a]
        del twists[n][b]
        columns[n] = [ring.reduce_vector(_drop_component(c, a, twists[n - 1])) for c in updated]
        if n + 1 in columns:
            columns[n + 1] = [_drop_component(c, b, twists[n]) for c in columns[n + 1]]
        if n - 1 in columns:
            del columns[n - 1][a]
    modules = {n: GradedFreeModule(tuple(t)) for n, t in twists.items()}
    differentials = {
        n: GradedMap(S, modules[n], modules[n - 1], cols)
        for n, cols in columns.items()
        if n - 1 in modules
    }
    return ChainComplex(ring, modules, differentials)


class ResolutionService:
    """Service computing minimal free resolutions by iterated syzygies"""

    def __init__(self, cap: Optional[int] = None, audit: Optional[bool] = None):
        """
        Args:
            cap: maximal number of syzygy steps, number of variables + margin by default
            audit: run the exactness and minimality audit, AUDIT_MODE by default
        """
        self.cap = cap
        self.audit = settings.AUDIT_MODE if audit is None else audit

    def cap_for(self, ring: GradedRing) -> int:
        if self.cap is not None:
            return self.cap
        return ring.nvars + settings.RESOLUTION_CAP_MARGIN

    def minimal_presentation(self, M: ModulePresentation) -> GradedMap:
        """Presentation of M with no unit entries and minimal relations."""
        ring = M.ring
        S = ring.ambient
        phi = M.presentation.map_columns(ring.reduce_vector)
        two_term = ChainComplex(
            ring, {0: phi.target, 1: phi.source}, {1: phi}, check=False
        )
        pruned = prune(two_term)
        target = pruned.module(0)
        if not target.rank:
            raise ZeroModuleError()
        relations = minimal_generators(pruned.differential(1).columns, target.twists, ring)
        source = GradedFreeModule(tuple(r.degree() for r in relations))
        return GradedMap(S, source, target, relations)

    def resolve(self, M: ModulePresentation) -> Resolution:
        """Minimal graded free resolution of a nonzero module.

        Args:
            M: the module to resolve

        Returns:
            Resolution with its Betti table

        Raises:
            ZeroModuleError: when M = 0
            ResolutionCapError: when the resolution does not stop within the cap
        """
        ring = M.ring
        S = ring.ambient
        cap = self.cap_for(ring)
        if M.is_zero():
            raise ZeroModuleError()
        maps: List[GradedMap] = []
        d = self.minimal_presentation(M)
        while d.source.rank:
            if len(maps) >= cap:
                raise ResolutionCapError()
            maps.append(d)
            logger.debug("resolution_step", degree=len(maps), rank=d.source.rank)
            found = kernel(d.columns, d.source.twists, d.target.twists, ring)
            gens = minimal_generators(found, d.source.twists, ring)
            d = GradedMap(S, GradedFreeModule(tuple(g.degree() for g in gens)), d.source, gens)
        if maps:
            F = ChainComplex.from_maps(ring, maps, check=self.audit)
        else:
            F = ChainComplex.concentrated(ring, d.target)
        if self.audit:
            self.audit_resolution(M, F)
        betti = F.betti_table()
        logger.info("resolution_computed", betti=betti.row, total=betti.total)
        return Resolution(module=M, complex=F, betti=betti, audited=self.audit)

    def audit_resolution(self, M: ModulePresentation, F: ChainComplex) -> None:
        """Minimality, exactness in positive degrees and H_0 ≅ M by length.

        Raises:
            AuditError: on the first failed property
        """
        if not F.is_minimal():
            raise AuditError("resolution has a constant entry")
        F.check_square_zero()
        for i in range(1, F.hi + 1):
            if not homology_vanishes(F, i):
                raise AuditError(f"resolution is not exact in degree {i}")
        expected = M.length()
        if expected is not None:
            h0 = homology_presentation(F, 0).length()
            if h0 != expected:
                raise AuditError(f"H_0 has length {h0}, module has length {expected}")


def minimal_free_resolution(M: ModulePresentation, cap: Optional[int] = None) -> Resolution:
    return ResolutionService(cap=cap).resolve(M)
