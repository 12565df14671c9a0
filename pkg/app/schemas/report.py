"""Verification report schemas"""
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from app.models.betti import BettiTable
from app.models.frobenius import DuttaSequence


class Verdict(str, Enum):
    """Outcome of a check"""
    HOLDS = "holds"
    FAILS = "fails"
    INAPPLICABLE = "inapplicable"


def format_rational(value: Fraction) -> str:
    """Exact rational as 'a/b'."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


class Inequality(BaseModel):
    """One recorded inequality lhs <= rhs with both sides exact"""
    label: str
    lhs: int
    rhs: int
    holds: bool

    @classmethod
    def of(cls, label: str, lhs: int, rhs: int) -> "Inequality":
        return cls(label=label, lhs=lhs, rhs=rhs, holds=lhs <= rhs)

    def rederive(self) -> bool:
        """Recompute the comparison from the recorded sides."""
        return (self.lhs <= self.rhs) == self.holds


class BettiTableRecord(BaseModel):
    """Machine form of a Betti table"""
    entries: List[List[int]] = Field(..., description="[i, j, beta_ij] triples")
    row: List[int] = Field(..., description="Betti numbers beta_0..beta_pd")
    total: int = Field(..., ge=0, description="Sum of the Betti numbers")
    projective_dimension: int

    @classmethod
    def from_table(cls, table: BettiTable) -> "BettiTableRecord":
        return cls(
            entries=[[i, j, b] for (i, j), b in table.entries.items()],
            row=list(table.row),
            total=table.total,
            projective_dimension=table.projective_dimension,
        )


class DuttaRecord(BaseModel):
    """A normalised Euler characteristic sequence"""
    label: str
    p: int = Field(..., gt=0)
    dimension: int = Field(..., ge=0)
    raw: List[int] = Field(..., description="chi(phi^e F) for e = 0..e_max")
    terms: List[str] = Field(..., description="chi(phi^e F) / p^(d e) as a/b")
    constant: bool
    positive: bool

    @classmethod
    def from_sequence(cls, label: str, sequence: DuttaSequence) -> "DuttaRecord":
        return cls(
            label=label,
            p=sequence.p,
            dimension=sequence.dimension,
            raw=list(sequence.raw),
            terms=[format_rational(t) for t in sequence.terms],
            constant=sequence.is_constant,
            positive=sequence.is_positive,
        )


class CheckRecord(BaseModel):
    """Result of one check on one module or complex"""
    name: str
    target: str
    verdict: Verdict
    reason: Optional[str] = None
    quantities: Dict[str, Any] = Field(default_factory=dict)
    inequalities: List[Inequality] = Field(default_factory=list)
    betti: Optional[BettiTableRecord] = None
    dutta: List[DuttaRecord] = Field(default_factory=list)
    witness: Optional[List[str]] = None
    notes: List[str] = Field(default_factory=list)


class VerificationReport(BaseModel):
    """All check records of one instance, in declared order"""
    instance: str
    ring: str
    dimension: Optional[int] = None
    records: List[CheckRecord] = Field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(r.verdict is Verdict.FAILS for r in self.records)

    @property
    def exit_code(self) -> int:
        return 1 if self.failed else 0
