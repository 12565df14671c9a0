"""Instance file schemas"""
from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field


class CheckName(str, Enum):
    """Checks understood by the harness"""
    BEH = "beh"
    BINOMIAL = "binomial"
    PSI2 = "psi2"
    EQUALITY = "equality"
    DUTTA = "dutta"


class CheckRequest(BaseModel):
    """A `check <name> on <target>` line"""
    name: CheckName
    target: str = Field(..., min_length=1)
    emax: Optional[int] = Field(None, ge=0, description="Largest Frobenius iterate")
    cap: Optional[int] = Field(None, gt=0, description="Resolution step cap")
    line: Optional[int] = Field(None, ge=1, description="Source line of the request")
