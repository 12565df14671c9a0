"""Pydantic schemas for instance requests and verification reports."""

from app.schemas.instance import CheckName, CheckRequest  # noqa: F401
from app.schemas.report import (  # noqa: F401
    BettiTableRecord,
    CheckRecord,
    DuttaRecord,
    Inequality,
    VerificationReport,
    Verdict,
    format_rational,
)
