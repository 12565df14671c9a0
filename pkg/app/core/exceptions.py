"""Exception hierarchy.

Every error raised by the library derives from AlgebraError so that the
checkers can turn expected mathematical failures into `inapplicable`
verdicts and the CLI can map input problems onto exit code 2.
"""

from typing import Optional


class AlgebraError(Exception):
    """Base class for all library errors."""


class FieldDivisionError(AlgebraError, ZeroDivisionError):
    """Inversion of zero in a coefficient field."""

    def __init__(self, message: str = "division by zero"):
        super().__init__(message)


class RingMismatchError(AlgebraError):
    """Operands live over different variable sets, fields or ambients."""


class InhomogeneousError(AlgebraError):
    """A generator or matrix entry is not homogeneous."""

    def __init__(self, message: str = "inhomogeneous generator"):
        super().__init__(message)


class CharacteristicError(AlgebraError):
    """The coefficient field has the wrong characteristic for an operation."""


class NotFiniteLengthError(AlgebraError):
    """A module or homology group is not of finite length."""

    def __init__(self, message: str = "complex not in Perf^fl"):
        super().__init__(message)


class ResolutionCapError(AlgebraError):
    """A resolution did not terminate within the step cap."""

    def __init__(
        self,
        message: str = "projective dimension exceeds cap (infinite resolution suspected)",
    ):
        super().__init__(message)


class ZeroModuleError(AlgebraError):
    """An operation needs a non-zero module."""

    def __init__(self, message: str = "module is zero"):
        super().__init__(message)


class NotCyclicError(AlgebraError):
    """The module needs more than one generator, so it is no quotient R/I."""

    def __init__(self, message: str = "module is not cyclic"):
        super().__init__(message)


class DegreeBoundError(AlgebraError):
    """A brute-force degree bound is too small to see all of the homology."""

    def __init__(self, message: str = "degree bound insufficient"):
        super().__init__(message)


class AuditError(AlgebraError):
    """An audited identity (d∘d = 0, exactness, splitting, ...) failed."""


class InstanceError(AlgebraError):
    """Problem with an instance file."""


class InstanceSyntaxError(InstanceError):
    """Instance text does not conform to the grammar."""

    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class InstanceSemanticError(InstanceError):
    """Instance text parses but describes an invalid problem."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
