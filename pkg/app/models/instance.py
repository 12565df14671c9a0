"""Parsed problem instances."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from app.models.polynomial import Polynomial
from app.models.presentation import ModulePresentation
from app.models.ring import GradedRing
from app.schemas.instance import CheckName, CheckRequest

DEFAULT_CHECKS = (CheckName.BEH, CheckName.BINOMIAL, CheckName.EQUALITY)


class ComplexKind(str, Enum):
    """How a named complex is built"""
    KOSZUL = "koszul"
    RESOLVE = "resolve"
    SHIFT = "shift"
    SUM = "sum"


@dataclass(frozen=True)
class ComplexDefinition:
    name: str
    kind: ComplexKind
    elements: Tuple[Polynomial, ...] = ()
    operands: Tuple[str, ...] = ()
    shift: int = 0
    line: int = 0


@dataclass
class ProblemInstance:
    """A ring, named modules and complexes over it, and the checks to run."""

    name: str
    ring_name: str
    ring: GradedRing
    modules: Dict[str, ModulePresentation] = field(default_factory=dict)
    complexes: Dict[str, ComplexDefinition] = field(default_factory=dict)
    checks: List[CheckRequest] = field(default_factory=list)

    def effective_checks(self) -> List[CheckRequest]:
        """Declared checks, or beh + binomial + equality on every module."""
        if self.checks:
            return list(self.checks)
        return [
            CheckRequest(name=check, target=module)
            for module in self.modules
            for check in DEFAULT_CHECKS
        ]

    def is_module(self, name: str) -> bool:
        return name in self.modules

    def is_complex(self, name: str) -> bool:
        return name in self.complexes

    def module_of(self, name: str) -> Optional[str]:
        """The module a target stands for: itself, or the module a complex resolves."""
        if name in self.modules:
            return name
        definition = self.complexes.get(name)
        if definition is not None and definition.kind is ComplexKind.RESOLVE:
            return definition.operands[0]
        return None
