"""Theorem Service - end-to-end checks of the Betti-number bounds.

Each check resolves its target, evaluates every quantity it reports
exactly and returns a CheckRecord. Expected mathematical failures
(infinite length, characteristic 2, a resolution over the cap) turn into
`inapplicable` records carrying the exception message.
"""

import asyncio
import threading
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import structlog

from app.core.config import settings
from app.core.exceptions import AlgebraError, AuditError, CharacteristicError, NotFiniteLengthError
from app.models.complex import ChainComplex
from app.models.frobenius import DuttaSequence
from app.models.instance import ComplexKind, ProblemInstance
from app.models.presentation import ModulePresentation
from app.models.resolution import Resolution
from app.schemas.instance import CheckName, CheckRequest
from app.schemas.report import (
    BettiTableRecord,
    CheckRecord,
    DuttaRecord,
    Inequality,
    Verdict,
    VerificationReport,
)
from app.services.complex_service import direct_sum, shift, splitting, tensor_square
from app.services.frobenius_service import (
    dutta_estimate,
    frobenius_commutes_with_squares,
    frobenius_minimality_audit,
    frobenius_twist,
)
from app.services.homology_service import homology_lengths
from app.services.module_service import (
    annihilates,
    cyclic_ideal,
    is_regular_sequence,
    koszul_complex,
    tor1_self_test,
)
from app.services.resolution_service import ResolutionService

logger = structlog.get_logger(__name__)

CERTIFICATE_NOTE = (
    "certifies chi(psi2 F) = 2^d chi(F) for this complex only, "
    "not the quasi-Roberts property of the ring"
)


@dataclass
class _CacheEntry:
    instance: ProblemInstance
    lock: threading.Lock = field(default_factory=threading.Lock)
    resolution: Optional[Resolution] = None


def _chi(C: ChainComplex, lengths: Sequence[int]) -> int:
    return sum((-1) ** (C.lo + k) * v for k, v in enumerate(lengths))


def _by_degree(C: ChainComplex, lengths: Sequence[int]) -> Dict[int, int]:
    return {C.lo + k: v for k, v in enumerate(lengths)}


def _parity_sum(C: ChainComplex, lengths: Sequence[int], parity: int) -> int:
    return sum(v for k, v in enumerate(lengths) if (C.lo + k) % 2 == parity)


def _finite_length(M: ModulePresentation) -> int:
    ell = M.length()
    if ell is None:
        raise NotFiniteLengthError("module is not of finite length")
    return ell


class TheoremService:
    """Service running the verification checks of a problem instance"""

    def __init__(
        self,
        cap: Optional[int] = None,
        e_max: Optional[int] = None,
        oracle: Optional[bool] = None,
        max_workers: Optional[int] = None,
    ):
        """
        Args:
            cap: resolution step cap unless a check line sets its own
            e_max: largest Frobenius iterate for the Dutta check unless a check line sets it
            oracle: cross-check every homology length against the brute-force path
            max_workers: number of checks run at the same time
        """
        self.cap = cap
        self.e_max = settings.DUTTA_EMAX if e_max is None else e_max
        self.oracle = settings.ORACLE_CROSS_CHECK if oracle is None else oracle
        self.max_workers = max_workers or settings.MAX_WORKERS
        self._lock = threading.Lock()
        self._resolutions: Dict[Tuple[int, str, Optional[int]], _CacheEntry] = {}

    # ----- targets -----

    def _resolve(
        self, instance: ProblemInstance, name: str, M: ModulePresentation, cap: Optional[int]
    ) -> Resolution:
        key = (id(instance), name, cap)
        with self._lock:
            entry = self._resolutions.get(key)
            if entry is None:
                entry = self._resolutions[key] = _CacheEntry(instance)
        with entry.lock:
            if entry.resolution is None:
                entry.resolution = ResolutionService(cap=cap).resolve(M)
            return entry.resolution

    def _release(self, instance: ProblemInstance) -> None:
        with self._lock:
            for key in [k for k in self._resolutions if k[0] == id(instance)]:
                del self._resolutions[key]

    def module_target(
        self, instance: ProblemInstance, name: str, cap: Optional[int] = None
    ) -> Tuple[ModulePresentation, Resolution]:
        """The module a target names and its minimal resolution.

        A Koszul complex stands for R/(y_1..y_n).

        Raises:
            AlgebraError: when the target is a shifted or summed complex
        """
        module = instance.module_of(name)
        if module is not None:
            M = instance.modules[module]
            return M, self._resolve(instance, module, M, cap)
        definition = instance.complexes[name]
        if definition.kind is ComplexKind.KOSZUL:
            M = ModulePresentation.cyclic(instance.ring, definition.elements)
            return M, self._resolve(instance, name, M, cap)
        raise AlgebraError(f"{name} is a complex with no module to resolve")

    def complex_target(
        self, instance: ProblemInstance, name: str, cap: Optional[int] = None
    ) -> Tuple[ChainComplex, Optional[Resolution]]:
        """The complex a target names, with its resolution data when it resolves a module."""
        module = instance.module_of(name)
        if module is not None:
            resolution = self._resolve(instance, module, instance.modules[module], cap)
            return resolution.complex, resolution
        definition = instance.complexes[name]
        if definition.kind is ComplexKind.KOSZUL:
            K = koszul_complex(instance.ring, definition.elements)
            if not is_regular_sequence(instance.ring, definition.elements):
                return K, None
            M = ModulePresentation.cyclic(instance.ring, definition.elements)
            return K, Resolution(module=M, complex=K, betti=K.betti_table())
        if definition.kind is ComplexKind.SHIFT:
            F, _ = self.complex_target(instance, definition.operands[0], cap)
            return shift(F, definition.shift), None
        F, _ = self.complex_target(instance, definition.operands[0], cap)
        G, _ = self.complex_target(instance, definition.operands[1], cap)
        return direct_sum(F, G), None

    def _lengths(self, C: ChainComplex) -> Tuple[int, ...]:
        return homology_lengths(C, self.oracle)

    # ----- checks -----

    def _guarded(
        self, name: CheckName, target: str, body: Callable[[CheckRecord], None]
    ) -> CheckRecord:
        record = CheckRecord(name=name.value, target=target, verdict=Verdict.INAPPLICABLE)
        try:
            body(record)
        except AuditError as err:
            record.verdict = Verdict.FAILS
            record.reason = str(err)
        except AlgebraError as err:
            record.verdict = Verdict.INAPPLICABLE
            record.reason = str(err)
        except Exception as err:
            logger.exception("check_errored", check=record.name, target=target)
            record.verdict = Verdict.FAILS
            record.reason = f"error: {type(err).__name__}: {err}"
        if not all(q.rederive() for q in record.inequalities):
            record.verdict = Verdict.FAILS
            record.reason = "a recorded inequality does not re-derive from its sides"
        logger.info(
            "check_completed",
            check=record.name,
            target=target,
            verdict=record.verdict.value,
            reason=record.reason,
        )
        return record

    def beh_total_check(
        self, instance: ProblemInstance, target: str, cap: Optional[int] = None
    ) -> CheckRecord:
        """Σβ_i ≥ 2^d, with the chain of inequalities behind it.

        Args:
            instance: parsed problem instance
            target: name of a module or of a complex standing for one
            cap: resolution step cap

        Returns:
            CheckRecord that holds iff the total Betti number is at least 2^d
        """

        def body(record: CheckRecord) -> None:
            M, resolution = self.module_target(instance, target, cap)
            ell = _finite_length(M)
            d = instance.ring.dimension
            betti = resolution.betti
            F = resolution.complex
            bound = 2**d
            record.betti = BettiTableRecord.from_table(betti)
            record.quantities.update(d=d, length=ell, total=betti.total, bound=bound)

            T = tensor_square(F)
            t_lengths = self._lengths(T)
            tensor_sum = sum(t_lengths)
            upper = ell * betti.total
            record.quantities["tensor_homology"] = list(t_lengths)
            try:
                split = splitting(F)
            except CharacteristicError:
                split = None
                record.notes.append("characteristic 2: the S2/L2 part of the chain is omitted")
            if split is not None:
                s_lengths = self._lengths(split.sym)
                w_lengths = self._lengths(split.wedge)
                middle = _parity_sum(split.sym, s_lengths, 0) + _parity_sum(split.wedge, w_lengths, 1)
                record.quantities.update(
                    sym_homology=list(s_lengths),
                    wedge_homology=list(w_lengths),
                    psi2_euler=_chi(split.sym, s_lengths) - _chi(split.wedge, w_lengths),
                )
                record.inequalities += [
                    Inequality.of(
                        "2^d*l(M) <= sum_even l H_i(S2 F) + sum_odd l H_i(L2 F)", bound * ell, middle
                    ),
                    Inequality.of(
                        "sum_even l H_i(S2 F) + sum_odd l H_i(L2 F) <= sum_i l H_i(T2 F)",
                        middle,
                        tensor_sum,
                    ),
                ]
            record.inequalities.append(
                Inequality.of("sum_i l H_i(T2 F) <= l(M)*sum_i beta_i", tensor_sum, upper)
            )
            for k, value in enumerate(t_lengths):
                i = T.lo + k
                record.inequalities.append(
                    Inequality.of(f"l H_{i}(F (x) M) <= beta_{i}*l(M)", value, betti.betti(i) * ell)
                )
            record.quantities["tensor_equality"] = tensor_sum == upper
            record.verdict = Verdict.HOLDS if betti.total >= bound else Verdict.FAILS

        return self._guarded(CheckName.BEH, target, body)

    def binomial_check(
        self, instance: ProblemInstance, target: str, cap: Optional[int] = None
    ) -> CheckRecord:
        """β_i ≥ C(d, i) for every i."""

        def body(record: CheckRecord) -> None:
            M, resolution = self.module_target(instance, target, cap)
            ell = _finite_length(M)
            d = instance.ring.dimension
            betti = resolution.betti
            record.betti = BettiTableRecord.from_table(betti)
            record.quantities.update(d=d, length=ell, binomials=[comb(d, i) for i in range(d + 1)])
            record.inequalities = [
                Inequality.of(f"C({d},{i}) <= beta_{i}", comb(d, i), betti.betti(i))
                for i in range(d + 1)
            ]
            holds = all(q.holds for q in record.inequalities)
            record.verdict = Verdict.HOLDS if holds else Verdict.FAILS

        return self._guarded(CheckName.BINOMIAL, target, body)

    def quasi_roberts_check(
        self, instance: ProblemInstance, target: str, cap: Optional[int] = None
    ) -> CheckRecord:
        """χ(S²F) - χ(Λ²F) = 2^d·χ(F) for one complex of finite length homology."""

        def body(record: CheckRecord) -> None:
            F, _ = self.complex_target(instance, target, cap)
            d = instance.ring.dimension
            split = splitting(F)
            lengths = self._lengths(F)
            s_lengths = self._lengths(split.sym)
            w_lengths = self._lengths(split.wedge)
            chi = _chi(F, lengths)
            psi2 = _chi(split.sym, s_lengths) - _chi(split.wedge, w_lengths)
            record.quantities.update(
                d=d,
                homology=list(lengths),
                sym_homology=list(s_lengths),
                wedge_homology=list(w_lengths),
                chi=chi,
                psi2_euler=psi2,
                expected=2**d * chi,
            )
            record.notes.append(CERTIFICATE_NOTE)
            record.verdict = Verdict.HOLDS if psi2 == 2**d * chi else Verdict.FAILS

        return self._guarded(CheckName.PSI2, target, body)

    def equality_case_analyze(
        self, instance: ProblemInstance, target: str, cap: Optional[int] = None
    ) -> CheckRecord:
        """When Σβ_i = 2^d, confirm M ≅ R/(y_1..y_d) for a regular sequence.

        Returns:
            CheckRecord with the extracted sequence as witness, inapplicable
            when the total Betti number is not 2^d
        """

        def body(record: CheckRecord) -> None:
            M, resolution = self.module_target(instance, target, cap)
            ell = _finite_length(M)
            ring = instance.ring
            d = ring.dimension
            betti = resolution.betti
            F = resolution.complex
            record.betti = BettiTableRecord.from_table(betti)
            record.quantities.update(d=d, length=ell, total=betti.total, bound=2**d)
            if betti.total != 2**d:
                relation = ">" if betti.total > 2**d else "<"
                record.reason = (
                    f"strict inequality: total {betti.total} {relation} 2^{d} = {2**d}, "
                    "equality case does not apply"
                )
                return

            checks: Dict[str, bool] = {}
            checks["differentials_annihilate_module"] = all(
                annihilates(r, M)
                for i in range(1, F.hi + 1)
                for row in F.differential(i).matrix()
                for r in row
                if r
            )
            checks["cyclic"] = betti.betti(0) == 1
            sequence = cyclic_ideal(resolution) if checks["cyclic"] else []
            checks["regular_sequence"] = len(sequence) == d and is_regular_sequence(ring, sequence)
            quotient_length = ModulePresentation.cyclic(ring, sequence).length() if checks["cyclic"] else None
            checks["same_length"] = quotient_length == ell
            record.witness = [str(y) for y in sequence]
            record.quantities["quotient_length"] = quotient_length

            try:
                split = splitting(F)
            except CharacteristicError:
                record.notes.append("characteristic 2: S2/L2 consequences not evaluated")
            else:
                s_lengths = self._lengths(split.sym)
                w_lengths = self._lengths(split.wedge)
                checks["odd_sym_homology_vanishes"] = _parity_sum(split.sym, s_lengths, 1) == 0
                checks["even_wedge_homology_vanishes"] = _parity_sum(split.wedge, w_lengths, 0) == 0
                checks["wedge_h0_vanishes"] = _by_degree(split.wedge, w_lengths).get(0, 0) == 0
                record.quantities.update(sym_homology=list(s_lengths), wedge_homology=list(w_lengths))
            if checks["cyclic"]:
                checks["tor1_free"] = tor1_self_test(M, cap)

            record.quantities.update(checks)
            record.verdict = Verdict.HOLDS if all(checks.values()) else Verdict.FAILS
            if record.verdict is Verdict.FAILS:
                record.reason = "failed: " + ", ".join(k for k, v in checks.items() if not v)

        return self._guarded(CheckName.EQUALITY, target, body)

    def dutta_check(
        self,
        instance: ProblemInstance,
        target: str,
        e_max: Optional[int] = None,
        cap: Optional[int] = None,
    ) -> CheckRecord:
        """Normalised Euler characteristics of ϕ^e F, ϕ^e S²F and ϕ^e Λ²F.

        Over a complete intersection the termwise identity
        χ(S²ϕ^e F) - χ(Λ²ϕ^e F) = 2^d·χ(ϕ^e F) is required. For a resolution
        of a module every term must be positive, and the per-e inequality and
        Tor bounds are recorded.
        """

        def body(record: CheckRecord) -> None:
            ring = instance.ring
            p = ring.characteristic
            if p == 0:
                raise CharacteristicError("Frobenius requires positive characteristic")
            if p == 2:
                raise CharacteristicError("Adams splitting requires 2 invertible")
            emax = self.e_max if e_max is None else e_max
            F, resolution = self.complex_target(instance, target, cap)
            d = ring.dimension
            record.quantities.update(d=d, p=p, emax=emax)

            sequence = dutta_estimate(F, emax, self.oracle)
            sym_chis: List[int] = []
            wedge_chis: List[int] = []
            identity: List[bool] = []
            commutes: List[bool] = []
            for e in range(emax + 1):
                G = frobenius_twist(F, e)
                split = splitting(G)
                chi = sequence.raw[e]
                chi_s = _chi(split.sym, self._lengths(split.sym))
                chi_w = _chi(split.wedge, self._lengths(split.wedge))
                sym_chis.append(chi_s)
                wedge_chis.append(chi_w)
                identity.append(chi_s - chi_w == 2**d * chi)
                if e:
                    commutes.append(frobenius_commutes_with_squares(F, e))
                if resolution is not None:
                    total = resolution.betti.total
                    record.inequalities.append(
                        Inequality.of(
                            f"e={e}: chi(S2 phi^e F) - chi(L2 phi^e F) <= chi(phi^e F)*sum_i beta_i",
                            chi_s - chi_w,
                            chi * total,
                        )
                    )
                    T = tensor_square(G)
                    for k, value in enumerate(self._lengths(T)):
                        i = T.lo + k
                        record.inequalities.append(
                            Inequality.of(
                                f"e={e}: l H_{i}(T2 phi^e F) <= beta_{i}*chi(phi^e F)",
                                value,
                                resolution.betti.betti(i) * chi,
                            )
                        )
                logger.debug("dutta_iterate", target=target, e=e, chi=chi, sym=chi_s, wedge=chi_w)

            record.dutta = [
                DuttaRecord.from_sequence("chi(phi^e F)", sequence),
                DuttaRecord.from_sequence("chi(S2 phi^e F)", DuttaSequence.from_raw(p, d, sym_chis)),
                DuttaRecord.from_sequence("chi(L2 phi^e F)", DuttaSequence.from_raw(p, d, wedge_chis)),
            ]
            record.quantities.update(
                identity=identity,
                frobenius_commutes_with_squares=commutes,
                constant=sequence.is_constant,
            )

            failures: List[str] = []
            if ring.is_complete_intersection:
                if not all(identity):
                    failures.append("termwise identity")
            else:
                record.notes.append("ring is not a complete intersection: termwise identity recorded, not required")
            if not all(commutes):
                failures.append("Frobenius does not commute with S2/L2")
            if resolution is not None:
                minimal = [frobenius_minimality_audit(F, e) for e in range(1, emax + 1)]
                record.quantities.update(positive=sequence.is_positive, frobenius_minimal=minimal)
                if not sequence.is_positive:
                    failures.append("positivity")
                if not all(minimal):
                    failures.append("minimality of phi^e F")
                if not all(q.holds for q in record.inequalities):
                    failures.append("inequalities")
            else:
                record.notes.append("target is not a resolution: positivity and Tor bounds not applicable")
            record.verdict = Verdict.FAILS if failures else Verdict.HOLDS
            if failures:
                record.reason = "failed: " + ", ".join(failures)

        return self._guarded(CheckName.DUTTA, target, body)

    # ----- runs -----

    def run_check(self, instance: ProblemInstance, request: CheckRequest) -> CheckRecord:
        cap = request.cap if request.cap is not None else self.cap
        if request.name is CheckName.BEH:
            return self.beh_total_check(instance, request.target, cap)
        if request.name is CheckName.BINOMIAL:
            return self.binomial_check(instance, request.target, cap)
        if request.name is CheckName.PSI2:
            return self.quasi_roberts_check(instance, request.target, cap)
        if request.name is CheckName.EQUALITY:
            return self.equality_case_analyze(instance, request.target, cap)
        return self.dutta_check(instance, request.target, request.emax, cap)

    async def run(
        self, instance: ProblemInstance, checks: Optional[Sequence[CheckRequest]] = None
    ) -> VerificationReport:
        """Run checks concurrently; records come back in declared order.

        Args:
            instance: parsed problem instance
            checks: requests to run, the instance's effective checks by default

        Returns:
            VerificationReport
        """
        requests = list(checks) if checks is not None else instance.effective_checks()
        semaphore = asyncio.Semaphore(self.max_workers)

        async def dispatch(request: CheckRequest) -> CheckRecord:
            async with semaphore:
                return await asyncio.to_thread(self.run_check, instance, request)

        try:
            records = await asyncio.gather(*(dispatch(r) for r in requests))
        finally:
            self._release(instance)
        report = VerificationReport(
            instance=instance.name,
            ring=str(instance.ring),
            dimension=instance.ring.dimension,
            records=list(records),
        )
        logger.info("instance_verified", instance=instance.name, checks=len(records), failed=report.failed)
        return report
