"""Homology Service - homology of complexes over R = S/J.

Two independent paths compute ℓ(H_n): the Gröbner path presents H_n as a
module (kernel generators modulo image and syzygies) and reads its length
off a staircase; the brute-force path expands every graded piece as a
k-vector space and uses nothing but ranks of matrices over k.
"""

from typing import Dict, List, Optional, Tuple

import structlog

from app.core.config import settings
from app.core.exceptions import AuditError, DegreeBoundError, NotFiniteLengthError
from app.models import monomial as mono
from app.models.complex import ChainComplex
from app.models.free_module import FreeVector, GradedFreeModule, linear_combination
from app.models.graded_map import GradedMap
from app.models.presentation import ModulePresentation
from app.services.complex_service import splitting
from app.services.groebner_service import (
    buchberger,
    contains,
    kernel,
    lift,
    minimal_generators,
    submodule_basis,
)
from app.services.linear_algebra import EchelonForm, Row

logger = structlog.get_logger(__name__)


# ----- Gröbner path -----


def cycles(C: ChainComplex, n: int) -> List[FreeVector]:
    """Minimal generators of ker d_n in F_n."""
    Fn = C.module(n)
    if not Fn.rank:
        return []
    d = C.differential(n)
    found = kernel(d.columns, Fn.twists, d.target.twists, C.ring)
    return minimal_generators(found, Fn.twists, C.ring)


def homology_vanishes(C: ChainComplex, n: int) -> bool:
    """H_n = 0, decided by membership of the cycles in the boundaries plus J·F_n."""
    Fn = C.module(n)
    if not Fn.rank:
        return True
    d = C.differential(n)
    found = kernel(d.columns, Fn.twists, d.target.twists, C.ring)
    if not found:
        return True
    boundaries = submodule_basis(C.differential(n + 1).columns, Fn.twists, C.ring)
    return all(contains(z, boundaries) for z in found)


def homology_presentation(C: ChainComplex, n: int) -> ModulePresentation:
    """H_n as coker of a map into the free module on the cycle generators.

    Relations are the boundaries written in cycle coordinates plus the
    syzygies of the cycle generators over R.
    """
    ring = C.ring
    S = ring.ambient
    Fn = C.module(n)
    z = cycles(C, n)
    z_twists = tuple(v.degree() for v in z)
    relations: List[FreeVector] = []
    if z:
        jvecs = ring.ideal_vectors(Fn.twists)
        all_twists = z_twists + tuple(v.degree() for v in jvecs)
        gb = buchberger(
            z + jvecs,
            ring.module_order,
            ring=S,
            twists=Fn.twists,
            track=True,
            representation_twists=all_twists,
        )
        reps = gb.representations or ()
        for col in C.differential(n + 1).columns:
            if not col:
                continue
            remainder, q = lift(col, gb)
            if remainder:
                raise AuditError(f"boundary in degree {n} is not a cycle")
            coords = ring.reduce_vector(linear_combination(S, all_twists, reps, q).restrict(len(z)))
            if coords:
                relations.append(coords)
        relations += kernel(z, z_twists, Fn.twists, ring)
    target = GradedFreeModule(z_twists)
    source = GradedFreeModule(tuple(r.degree() for r in relations))
    return ModulePresentation(ring, GradedMap(S, source, target, relations))


def homology_lengths(C: ChainComplex, oracle: Optional[bool] = None) -> Tuple[int, ...]:
    """ℓ(H_n) for n over the support of C.

    Raises:
        NotFiniteLengthError: when some H_n is not of finite length
    """
    lengths = []
    for n in range(C.lo, C.hi + 1):
        P = homology_presentation(C, n)
        if not P.rank:
            lengths.append(0)
            continue
        value = P.length()
        if value is None:
            raise NotFiniteLengthError()
        lengths.append(value)
    result = tuple(lengths)
    if oracle is None:
        oracle = settings.ORACLE_CROSS_CHECK
    if oracle and C.modules:
        brute = homology_lengths_bruteforce(C, oracle_degree_bound(C))
        if brute != result:
            raise AuditError(f"homology oracle disagrees: {result} vs {brute}")
    logger.debug("homology_lengths", lengths=result)
    return result


def oracle_degree_bound(C: ChainComplex) -> int:
    """One past the top internal degree of any homology, from the staircases."""
    top: Optional[int] = None
    for n in range(C.lo, C.hi + 1):
        P = homology_presentation(C, n)
        if not P.rank:
            continue
        if not P.is_finite_length():
            raise NotFiniteLengthError()
        t = P.staircase.top_degree()
        if t is not None and (top is None or t > top):
            top = t
    if top is None:
        return max((max(m.twists) for m in C.modules.values() if m.rank), default=0) + 1
    return top + 1


def euler_characteristic(C: ChainComplex, oracle: Optional[bool] = None) -> int:
    return sum((-1) ** (C.lo + k) * v for k, v in enumerate(homology_lengths(C, oracle)))


def psi2_euler(F: ChainComplex, oracle: Optional[bool] = None) -> int:
    """χ(S²F) - χ(Λ²F).

    Raises:
        CharacteristicError: in characteristic 2
    """
    split = splitting(F)
    return euler_characteristic(split.sym, oracle) - euler_characteristic(split.wedge, oracle)


# ----- brute-force path -----


class _GradedPiece:
    """Degree-t piece of F_n and of J·F_n as k-vector spaces."""

    def __init__(self, C: ChainComplex, n: int, t: int):
        ring = C.ring
        nvars = ring.nvars
        self.module = C.module(n)
        self.index: Dict[Tuple[int, mono.Monomial], int] = {}
        for i, twist in enumerate(self.module.twists):
            for m in mono.monomials_of_degree(nvars, t - twist):
                self.index[(i, m)] = len(self.index)
        field = ring.field
        self.relations = EchelonForm(field)
        for i, twist in enumerate(self.module.twists):
            for f in ring.relations:
                for u in mono.monomials_of_degree(nvars, t - twist - f.homogeneous_degree()):
                    row: Row = {}
                    for m, c in f.terms.items():
                        row[self.index[(i, mono.mul(m, u))]] = c
                    self.relations.add(row)

    @property
    def dimension(self) -> int:
        return len(self.index)

    @property
    def quotient_dimension(self) -> int:
        return self.dimension - self.relations.rank


def _induced_rank(C: ChainComplex, n: int, source: _GradedPiece, target: _GradedPiece) -> int:
    """Rank of d_n: (F_n/J F_n)_t -> (F_{n-1}/J F_{n-1})_t."""
    if not source.dimension or not target.dimension:
        return 0
    d = C.differential(n)
    echelon = EchelonForm(C.ring.field)
    for row in target.relations.pivots.values():
        echelon.add(row)
    base = echelon.rank
    field = C.ring.field
    for (j, u) in source.index:
        row: Row = {}
        for (i, m), c in d.columns[j].terms.items():
            k = target.index[(i, mono.mul(m, u))]
            row[k] = field.add(row[k], c) if k in row else c
        echelon.add(row)
    return echelon.rank - base


def homology_lengths_bruteforce(C: ChainComplex, degree_bound: int) -> Tuple[int, ...]:
    """ℓ(H_n) by k-linear algebra on graded pieces up to `degree_bound`.

    Raises:
        DegreeBoundError: when some H_n is still nonzero in degree `degree_bound`
    """
    if not C.modules:
        return ()
    low = min((min(m.twists) for m in C.modules.values() if m.rank), default=0)
    totals = {n: 0 for n in range(C.lo, C.hi + 1)}
    for t in range(low, degree_bound + 1):
        pieces = {n: _GradedPiece(C, n, t) for n in range(C.lo - 1, C.hi + 2)}
        ranks = {n: _induced_rank(C, n, pieces[n], pieces[n - 1]) for n in range(C.lo, C.hi + 2)}
        for n in range(C.lo, C.hi + 1):
            h = pieces[n].quotient_dimension - ranks[n] - ranks[n + 1]
            if h and t == degree_bound:
                raise DegreeBoundError()
            totals[n] += h
    return tuple(totals[n] for n in range(C.lo, C.hi + 1))
