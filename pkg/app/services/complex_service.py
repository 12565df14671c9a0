"""Complex Service - tensor products, the swap τ and the S²/Λ² splitting.

Bases of F ⊗ G in homological degree n are ordered by the F-degree i
ascending, and inside the block F_i ⊗ G_{n-i} by pairs (a, b)
lexicographically.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

import structlog

from app.core.exceptions import AuditError, CharacteristicError, RingMismatchError
from app.models import monomial as mono
from app.models.complex import ChainComplex, ComplexInvolution
from app.models.field import Element
from app.models.free_module import FreeVector, GradedFreeModule, Term
from app.models.graded_map import GradedMap
from app.services.linear_algebra import rank

logger = structlog.get_logger(__name__)

BlockIndex = Dict[Tuple[int, int, int], int]


def _tensor_bases(
    F: ChainComplex, G: ChainComplex
) -> Tuple[Dict[int, GradedFreeModule], Dict[int, BlockIndex], Dict[int, List[Tuple[int, int, int]]]]:
    """Modules of F ⊗ G with index maps (i, a, b) <-> position in degree n."""
    modules: Dict[int, GradedFreeModule] = {}
    index: Dict[int, BlockIndex] = {}
    labels: Dict[int, List[Tuple[int, int, int]]] = {}
    if not F.modules or not G.modules:
        return modules, index, labels
    for n in range(F.lo + G.lo, F.hi + G.hi + 1):
        twists: List[int] = []
        idx: BlockIndex = {}
        lab: List[Tuple[int, int, int]] = []
        for i in range(F.lo, F.hi + 1):
            j = n - i
            if j < G.lo or j > G.hi:
                continue
            fi, gj = F.module(i), G.module(j)
            for a in range(fi.rank):
                for b in range(gj.rank):
                    idx[(i, a, b)] = len(twists)
                    lab.append((i, a, b))
                    twists.append(fi.twists[a] + gj.twists[b])
        modules[n] = GradedFreeModule(tuple(twists))
        index[n] = idx
        labels[n] = lab
    return modules, index, labels


def tensor_product(F: ChainComplex, G: ChainComplex, check: bool = True) -> ChainComplex:
    """F ⊗_R G with d(x ⊗ y) = dx ⊗ y + (-1)^|x| x ⊗ dy."""
    if F.ring != G.ring:
        raise RingMismatchError("complexes over different rings")
    ring = F.ring
    S = ring.ambient
    field = S.field
    modules, index, labels = _tensor_bases(F, G)
    differentials: Dict[int, GradedMap] = {}
    for n, lab in labels.items():
        if n - 1 not in modules:
            continue
        target = modules[n - 1]
        target_index = index[n - 1]
        columns: List[FreeVector] = []
        for i, a, b in lab:
            j = n - i
            terms: Dict[Term, Element] = {}
            # dx ⊗ y
            for (a2, m), c in F.differential(i).columns[a].terms.items():
                pos = target_index[(i - 1, a2, b)]
                terms[(pos, m)] = field.add(terms[(pos, m)], c) if (pos, m) in terms else c
            # (-1)^i x ⊗ dy
            sign = field.one if i % 2 == 0 else field.neg(field.one)
            for (b2, m), c in G.differential(j).columns[b].terms.items():
                pos = target_index[(i, a, b2)]
                value = field.mul(sign, c)
                terms[(pos, m)] = field.add(terms[(pos, m)], value) if (pos, m) in terms else value
            columns.append(FreeVector(S, target.twists, terms))
        differentials[n] = GradedMap(S, modules[n], target, columns, check=False)
    result = ChainComplex(ring, modules, differentials, check=check)
    logger.debug("tensor_product", ranks=result.ranks())
    return result


def tensor_square(F: ChainComplex) -> ChainComplex:
    return tensor_product(F, F)


def tau(F: ChainComplex) -> ComplexInvolution:
    """The signed swap x ⊗ y -> (-1)^{|x||y|} y ⊗ x on T²F."""
    T = tensor_square(F)
    _, index, labels = _tensor_bases(F, F)
    permutations: Dict[int, Tuple[Tuple[int, int], ...]] = {}
    for n, lab in labels.items():
        perm = []
        for i, a, b in lab:
            j = n - i
            perm.append((index[n][(j, b, a)], -1 if (i * j) % 2 else 1))
        permutations[n] = tuple(perm)
    return ComplexInvolution(T, permutations)


@dataclass(frozen=True)
class AdamsSplitting:
    """T²F = S²F ⊕ Λ²F with the inclusions written in T²F coordinates.

    Each basis vector of S² or Λ² is a signed sum of at most two basis
    vectors of T²F. Its `primary` coordinate carries coefficient 1 and is
    never a coordinate of another basis vector of the same summand.
    """

    tensor: ChainComplex
    sym: ChainComplex
    wedge: ChainComplex
    sym_inclusion: Dict[int, List[FreeVector]]
    wedge_inclusion: Dict[int, List[FreeVector]]


def _split_basis(
    F: ChainComplex, n: int, index: BlockIndex
) -> Tuple[List[Tuple[int, int, int]], List[Tuple[int, int, int]]]:
    """S² and Λ² basis of degree n as (primary, partner, partner sign); partner -1 when absent."""
    sym: List[Tuple[int, int, int]] = []
    wedge: List[Tuple[int, int, int]] = []
    for i in range(F.lo, F.hi + 1):
        j = n - i
        if j < i or j > F.hi:
            continue
        ri, rj = F.module(i).rank, F.module(j).rank
        if i < j:
            sign = -1 if (i * j) % 2 else 1
            for a in range(ri):
                for b in range(rj):
                    p = index[(i, a, b)]
                    q = index[(j, b, a)]
                    sym.append((p, q, sign))
                    wedge.append((p, q, -sign))
            continue
        even = i % 2 == 0
        for a in range(ri):
            for b in range(a, ri):
                p = index[(i, a, b)]
                if a == b:
                    (sym if even else wedge).append((p, -1, 0))
                    continue
                q = index[(i, b, a)]
                plus, minus = (p, q, 1), (p, q, -1)
                sym.append(plus if even else minus)
                wedge.append(minus if even else plus)
    return sym, wedge


def _inclusion_vectors(
    basis: List[Tuple[int, int, int]], twists: Tuple[int, ...], S
) -> List[FreeVector]:
    field = S.field
    one = field.one
    zero = mono.one(S.nvars)
    vectors = []
    for p, q, s in basis:
        terms: Dict[Term, Element] = {(p, zero): one}
        if q >= 0:
            terms[(q, zero)] = field.element(s)
        vectors.append(FreeVector(S, twists, terms))
    return vectors


def _summand(
    T: ChainComplex,
    bases: Dict[int, List[Tuple[int, int, int]]],
) -> ChainComplex:
    """The subcomplex spanned by `bases`, with the differential read at primary coordinates."""
    ring = T.ring
    S = ring.ambient
    field = S.field
    modules = {
        n: GradedFreeModule(tuple(T.module(n).twists[p] for p, _, _ in basis))
        for n, basis in bases.items()
    }
    differentials: Dict[int, GradedMap] = {}
    for n, basis in bases.items():
        if n - 1 not in bases or not basis or not bases[n - 1]:
            continue
        d = T.differential(n)
        primary = {p: k for k, (p, _, _) in enumerate(bases[n - 1])}
        target = modules[n - 1]
        columns = []
        for p, q, s in basis:
            image = d.columns[p]
            if q >= 0:
                image = image + d.columns[q].scale(field.element(s))
            terms = {(primary[pos], m): c for (pos, m), c in image.terms.items() if pos in primary}
            columns.append(FreeVector(S, target.twists, terms))
        differentials[n] = GradedMap(S, modules[n], target, columns, check=False)
    return ChainComplex(ring, modules, differentials)


def splitting(F: ChainComplex, audit: bool = True) -> AdamsSplitting:
    """Explicit S²F = ker(τ - 1) and Λ²F = ker(τ + 1) inside T²F.

    Raises:
        CharacteristicError: in characteristic 2
    """
    ring = F.ring
    if not ring.field.two_invertible:
        raise CharacteristicError("Adams splitting requires 2 invertible")
    S = ring.ambient
    field = S.field
    T = tensor_square(F)
    _, index, _ = _tensor_bases(F, F)
    sym_bases: Dict[int, List[Tuple[int, int, int]]] = {}
    wedge_bases: Dict[int, List[Tuple[int, int, int]]] = {}
    for n in T.modules:
        sym_bases[n], wedge_bases[n] = _split_basis(F, n, index[n])
    sym = _summand(T, sym_bases)
    wedge = _summand(T, wedge_bases)
    sym_inclusion = {
        n: _inclusion_vectors(b, T.module(n).twists, S) for n, b in sym_bases.items()
    }
    wedge_inclusion = {
        n: _inclusion_vectors(b, T.module(n).twists, S) for n, b in wedge_bases.items()
    }
    if audit:
        for n in T.modules:
            rows = [
                {pos: c for (pos, _), c in v.terms.items()}
                for v in sym_inclusion[n] + wedge_inclusion[n]
            ]
            if rank(rows, field) != T.module(n).rank:
                raise AuditError(f"S² ⊕ Λ² does not fill T² in degree {n}")
    logger.debug("adams_splitting", sym=sym.ranks(), wedge=wedge.ranks())
    return AdamsSplitting(T, sym, wedge, sym_inclusion, wedge_inclusion)


def sym2(F: ChainComplex) -> ChainComplex:
    return splitting(F).sym


def wedge2(F: ChainComplex) -> ChainComplex:
    return splitting(F).wedge


def shift(F: ChainComplex, k: int) -> ChainComplex:
    return F.shift(k)


def direct_sum(F: ChainComplex, G: ChainComplex) -> ChainComplex:
    return F.direct_sum(G)
