"""Groebner Service - Buchberger bases, division and syzygies over S.

Everything here works in a graded free module S^r over the ambient
polynomial ring S = k[x_1..x_n]. Quotient rings R = S/J enter only through
`kernel`, `minimal_generators` and `quotient_reduce`, which append the
submodule J·S^r to whatever they compute.
"""

import heapq
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Set, Tuple

import structlog

from app.core.config import settings
from app.core.exceptions import AlgebraError, AuditError, InhomogeneousError, RingMismatchError
from app.models import monomial as mono
from app.models.field import Element
from app.models.free_module import FreeVector, Term, linear_combination
from app.models.groebner_basis import GroebnerBasis
from app.models.monomial import AnyModuleOrder, ModuleOrder, SchreyerOrder
from app.models.polynomial import Polynomial, PolynomialRing

if TYPE_CHECKING:  # pragma: no cover
    from app.models.ring import GradedRing

logger = structlog.get_logger(__name__)

Quotients = Dict[Tuple[int, mono.Monomial], Element]


# ----- division -----


def _find_divisor(t: Term, leads: Sequence[Term]) -> Optional[int]:
    pos, m = t
    for k, (lp, lm) in enumerate(leads):
        if lp == pos and mono.divides(lm, m):
            return k
    return None


def _divide(
    v: FreeVector,
    divisors: Sequence[FreeVector],
    leads: Sequence[Term],
    order: AnyModuleOrder,
) -> Tuple[FreeVector, Quotients]:
    """Full division of v by `divisors`; returns (remainder, quotient terms)."""
    F = v.ring.field
    key = order.key
    work: Dict[Term, Element] = dict(v.terms)
    remainder: Dict[Term, Element] = {}
    quotients: Quotients = {}
    while work:
        t = max(work, key=lambda u: key(u[0], u[1]))
        c = work[t]
        k = _find_divisor(t, leads)
        if k is None:
            remainder[t] = c
            del work[t]
            continue
        g = divisors[k]
        q = mono.quotient(t[1], leads[k][1])
        coeff = F.div(c, g.terms[leads[k]])
        for (j, n), a in g.terms.items():
            u = (j, mono.mul(n, q))
            value = F.sub(work[u], F.mul(a, coeff)) if u in work else F.neg(F.mul(a, coeff))
            if value == 0:
                work.pop(u, None)
            else:
                work[u] = value
        quotients[(k, q)] = F.add(quotients[(k, q)], coeff) if (k, q) in quotients else coeff
    return FreeVector(v.ring, v.twists, remainder), quotients


def _quotient_vector(
    ring: PolynomialRing, twists: Sequence[int], quotients: Quotients
) -> FreeVector:
    return FreeVector(ring, tuple(twists), dict(quotients))


# ----- Buchberger -----


def _s_vector(
    gi: FreeVector, ti: Term, gj: FreeVector, tj: Term
) -> Tuple[FreeVector, mono.Monomial, mono.Monomial]:
    F = gi.ring.field
    lcm = mono.lcm(ti[1], tj[1])
    mi = mono.quotient(lcm, ti[1])
    mj = mono.quotient(lcm, tj[1])
    ci = F.inv(gi.terms[ti])
    cj = F.inv(gj.terms[tj])
    s = gi.mul_term(mi, ci).add_scaled(gj, mj, F.neg(cj))
    return s, mi, mj


def buchberger(
    generators: Sequence[FreeVector],
    order: Optional[AnyModuleOrder] = None,
    *,
    ring: Optional[PolynomialRing] = None,
    twists: Optional[Sequence[int]] = None,
    track: bool = False,
    representation_twists: Optional[Sequence[int]] = None,
    degree_cap: Optional[int] = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule generated by homogeneous vectors.

    Pairs are processed lowest degree first. The product criterion is used
    for ideals only, the chain criterion always.

    Args:
        generators: homogeneous vectors of one free module
        order: module order, term-over-position on the ring order by default
        ring: ambient ring, required when `generators` is empty
        twists: ambient twists, required when `generators` is empty
        track: record each basis element as a combination of the inputs
        representation_twists: twists of the input coordinates, defaults to
            the input degrees (0 for zero inputs)
        degree_cap: stop considering pairs above this degree

    Returns:
        A monic reduced basis sorted ascending by leading term

    Raises:
        InhomogeneousError: when an input is not homogeneous
    """
    gens = list(generators)
    if gens:
        ring = gens[0].ring
        twists = gens[0].twists
    if ring is None or twists is None:
        raise AlgebraError("ring and twists are required for an empty generator list")
    twists = tuple(twists)
    for g in gens:
        if g.twists != twists or g.ring != ring:
            raise RingMismatchError("generators live in different free modules")
        if not g.is_homogeneous():
            raise InhomogeneousError()
    if order is None:
        order = ModuleOrder(ring.order)
    if degree_cap is None:
        degree_cap = settings.GB_DEGREE_CAP
    if representation_twists is None:
        representation_twists = tuple((g.degree() or 0) for g in gens)
    rep_twists = tuple(representation_twists)
    F = ring.field

    basis: List[FreeVector] = []
    leads: List[Term] = []
    reps: List[FreeVector] = []
    pending: Set[Tuple[int, int]] = set()
    heap: List[Tuple[int, int, int, int, int]] = []
    truncated = False
    counter = 0
    for idx, g in enumerate(gens):
        if g:
            heapq.heappush(heap, (g.degree(), 0, counter, idx, -1))
            counter += 1

    def chain_skip(i: int, j: int) -> bool:
        lcm = mono.lcm(leads[i][1], leads[j][1])
        pos = leads[i][0]
        for k, (kp, km) in enumerate(leads):
            if k in (i, j) or kp != pos or not mono.divides(km, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
        return False

    while heap:
        deg, kind, _, a, b = heapq.heappop(heap)
        if kind == 1:
            pending.discard((a, b))
            if degree_cap is not None and deg > degree_cap:
                truncated = True
                continue
            if len(twists) == 1 and mono.coprime(leads[a][1], leads[b][1]):
                continue
            if chain_skip(a, b):
                continue
            s, ma, mb = _s_vector(basis[a], leads[a], basis[b], leads[b])
            if track:
                ca = F.inv(basis[a].terms[leads[a]])
                cb = F.inv(basis[b].terms[leads[b]])
                s_rep = reps[a].mul_term(ma, ca).add_scaled(reps[b], mb, F.neg(cb))
        else:
            s = gens[a]
            if track:
                s_rep = FreeVector.basis(ring, rep_twists, a)
        r, quotients = _divide(s, basis, leads, order)
        if not r:
            continue
        pos, m, c = r.leading_term(order)
        inv = F.inv(c)
        r = r.scale(inv)
        if track:
            r_rep = s_rep
            for (k, q), coeff in quotients.items():
                r_rep = r_rep.add_scaled(reps[k], q, F.neg(coeff))
            reps.append(r_rep.scale(inv))
        basis.append(r)
        leads.append((pos, m))
        n = len(basis) - 1
        for i in range(n):
            if leads[i][0] != pos:
                continue
            lcm = mono.lcm(leads[i][1], m)
            pending.add((i, n))
            heapq.heappush(heap, (sum(lcm) + twists[pos], 1, counter, i, n))
            counter += 1

    # minimalize: drop elements whose lead is divisible by another lead
    keep: List[int] = []
    for i, (pi, mi) in enumerate(leads):
        redundant = any(
            j != i
            and pj == pi
            and mono.divides(mj, mi)
            and (mj != mi or j < i)
            for j, (pj, mj) in enumerate(leads)
        )
        if not redundant:
            keep.append(i)

    # interreduce the tails
    kept = [basis[i] for i in keep]
    kept_leads = [leads[i] for i in keep]
    kept_reps = [reps[i] for i in keep] if track else []
    final: List[FreeVector] = []
    final_reps: List[FreeVector] = []
    for idx, g in enumerate(kept):
        others = [h for k, h in enumerate(kept) if k != idx]
        other_leads = [t for k, t in enumerate(kept_leads) if k != idx]
        other_index = [k for k in range(len(kept)) if k != idx]
        r, quotients = _divide(g, others, other_leads, order)
        final.append(r)
        if track:
            r_rep = kept_reps[idx]
            for (k, q), coeff in quotients.items():
                r_rep = r_rep.add_scaled(kept_reps[other_index[k]], q, F.neg(coeff))
            final_reps.append(r_rep)

    ranking = sorted(range(len(final)), key=lambda k: order.key(*kept_leads[k]))
    logger.debug("groebner_basis_computed", size=len(final), truncated=truncated)
    gb = GroebnerBasis(
        generators=tuple(final[k] for k in ranking),
        order=order,
        ring=ring,
        twists=twists,
        reduced=True,
        representations=tuple(final_reps[k] for k in ranking) if track else None,
        representation_twists=rep_twists if track else None,
        truncated=truncated,
    )
    if settings.AUDIT_MODE and not truncated and not audit_s_pairs(gb):
        raise AuditError("S-pair audit failed")
    return gb


# ----- operations on a basis -----


def _check_ambient(v: FreeVector, gb: GroebnerBasis) -> None:
    if v.twists != gb.twists or v.ring != gb.ring:
        raise RingMismatchError("vector and basis live in different free modules")


def normal_form(v: FreeVector, gb: GroebnerBasis) -> FreeVector:
    """Remainder of v on full division by the basis."""
    _check_ambient(v, gb)
    remainder, _ = _divide(v, gb.generators, gb.leads, gb.order)
    return remainder


def contains(v: FreeVector, gb: GroebnerBasis) -> bool:
    return not normal_form(v, gb)


def lift(v: FreeVector, gb: GroebnerBasis) -> Tuple[FreeVector, FreeVector]:
    """Division with quotients: v = Σ q_k g_k + remainder.

    Returns:
        (remainder, quotient vector indexed by the basis elements)
    """
    _check_ambient(v, gb)
    remainder, quotients = _divide(v, gb.generators, gb.leads, gb.order)
    return remainder, _quotient_vector(gb.ring, gb.degrees, quotients)


def schreyer_order(gb: GroebnerBasis) -> SchreyerOrder:
    """Order on the syzygy module induced by the basis leading terms."""
    return SchreyerOrder(gb.order, tuple(gb.leads))


def syzygies(gb: GroebnerBasis) -> List[FreeVector]:
    """Schreyer generators of the syzygy module of the basis.

    One S-pair syzygy for each pair with a common leading position, kept
    only when its monomial m_ij is minimal among the candidates for i.
    The results live in the free module twisted by the basis degrees.
    """
    ring = gb.ring
    F = ring.field
    leads = gb.leads
    degrees = gb.degrees
    result: List[FreeVector] = []
    for i, (pi, mi) in enumerate(leads):
        candidates = [
            (j, mono.quotient(mono.lcm(mi, mj), mi))
            for j, (pj, mj) in enumerate(leads)
            if j > i and pj == pi
        ]
        for j, mij in candidates:
            if any(
                mono.divides(other, mij) and (other != mij or k < j)
                for k, other in candidates
                if k != j
            ):
                continue
            mj = leads[j][1]
            mji = mono.quotient(mono.lcm(mi, mj), mj)
            s = gb.generators[i].mul_term(mij, F.one).add_scaled(gb.generators[j], mji, F.neg(F.one))
            remainder, quotients = _divide(s, gb.generators, leads, gb.order)
            if remainder:
                raise AuditError("S-vector does not reduce to zero: not a Gröbner basis")
            sigma = FreeVector(ring, degrees, {(i, mij): F.one, (j, mji): F.neg(F.one)})
            for (k, q), coeff in quotients.items():
                sigma = sigma.add_scaled(FreeVector.basis(ring, degrees, k), q, F.neg(coeff))
            result.append(sigma)
    return result


def audit_s_pairs(gb: GroebnerBasis) -> bool:
    """True when every S-vector of the basis reduces to zero."""
    leads = gb.leads
    for i in range(len(leads)):
        for j in range(i + 1, len(leads)):
            if leads[i][0] != leads[j][0]:
                continue
            s, _, _ = _s_vector(gb.generators[i], leads[i], gb.generators[j], leads[j])
            if normal_form(s, gb):
                return False
    return True


# ----- quotient rings -----


def quotient_reduce(f: Polynomial, ring: "GradedRing") -> Polynomial:
    """Canonical representative of f in R = S/J: its normal form modulo J."""
    if f.ring != ring.ambient:
        raise RingMismatchError(f"{f} is not over {ring.ambient}")
    if not ring.relations or not f:
        return f
    return normal_form(FreeVector.from_polynomial(f), ring.ideal_basis).component(0)


def submodule_basis(
    vectors: Sequence[FreeVector], twists: Sequence[int], ring: "GradedRing", **kwargs
) -> GroebnerBasis:
    """Gröbner basis of the span of `vectors` plus J·S^r."""
    gens = [v for v in vectors if v] + ring.ideal_vectors(twists)
    return buchberger(gens, ring.module_order, ring=ring.ambient, twists=twists, **kwargs)


def kernel(
    columns: Sequence[FreeVector],
    source_twists: Sequence[int],
    target_twists: Sequence[int],
    ring: "GradedRing",
) -> List[FreeVector]:
    """Generators of the kernel of R^s -> R^r, columns given over S.

    The kernel over R is the projection onto the first s coordinates of
    the syzygies of [columns | J·e_k].

    Returns:
        Nonzero kernel vectors in R^s (entries reduced mod J), not minimized
    """
    S = ring.ambient
    source_twists = tuple(source_twists)
    target_twists = tuple(target_twists)
    s = len(columns)
    jvecs = ring.ideal_vectors(target_twists)
    gens = list(columns) + jvecs
    all_twists = source_twists + tuple(v.degree() for v in jvecs)
    gb = buchberger(
        gens,
        ring.module_order,
        ring=S,
        twists=target_twists,
        track=True,
        representation_twists=all_twists,
    )
    reps = gb.representations or ()
    found: List[FreeVector] = []
    for sigma in syzygies(gb):
        found.append(linear_combination(S, all_twists, reps, sigma).restrict(s))
    # inputs that reduced to zero during Buchberger carry relations of their own
    for j, g in enumerate(gens):
        remainder, q = lift(g, gb)
        if remainder:
            raise AuditError("generator not in its own span")
        e_j = FreeVector.basis(S, all_twists, j)
        found.append((e_j - linear_combination(S, all_twists, reps, q)).restrict(s))
    result = []
    for v in found:
        v = ring.reduce_vector(v)
        if v:
            result.append(v)
    logger.debug("kernel", source_rank=s, target_rank=len(target_twists), generators=len(result))
    return result


def minimal_generators(
    vectors: Sequence[FreeVector], twists: Sequence[int], ring: "GradedRing"
) -> List[FreeVector]:
    """A minimal homogeneous generating set of the span in R^r.

    Candidates are taken lowest degree first and kept only when they are
    not in the span of the kept ones plus J·R^r.
    """
    twists = tuple(twists)
    ordered = sorted(
        (ring.reduce_vector(v) for v in vectors if v), key=lambda v: v.degree() or 0
    )
    kept: List[FreeVector] = []
    current = submodule_basis([], twists, ring)
    for v in ordered:
        if not v or contains(v, current):
            continue
        kept.append(v)
        current = buchberger(
            list(current.generators) + [v],
            ring.module_order,
            ring=ring.ambient,
            twists=twists,
        )
    return kept
