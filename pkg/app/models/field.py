"""Exact coefficient fields.

Two kinds are supported: prime fields F_p with a machine-word prime p, whose
elements are the reduced representatives in [0, p), and the rationals, whose
elements are `fractions.Fraction`. Floating point is never accepted.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from app.core.exceptions import AlgebraError, FieldDivisionError

Element = Union[int, Fraction]

_WORD_LIMIT = 2**63


class FieldKind(str, Enum):
    """Kind of coefficient field"""
    PRIME = "prime"
    RATIONAL = "rational"


class FieldOp(str, Enum):
    ADD = "add"
    MUL = "mul"
    INV = "inv"
    NEG = "neg"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class CoefficientField:
    """An exact field: F_p for a prime p, or Q when characteristic is 0.

    Characteristic 2 is representable; operations that need 1/2 reject it
    themselves.
    """

    characteristic: int = 0

    def __post_init__(self) -> None:
        p = self.characteristic
        if p != 0 and not (p < _WORD_LIMIT and _is_prime(p)):
            raise AlgebraError(f"characteristic must be 0 or a machine-word prime, got {p}")

    @classmethod
    def prime(cls, p: int) -> "CoefficientField":
        return cls(p)

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls(0)

    @property
    def kind(self) -> FieldKind:
        return FieldKind.RATIONAL if self.characteristic == 0 else FieldKind.PRIME

    @property
    def two_invertible(self) -> bool:
        return self.characteristic != 2

    @property
    def zero(self) -> Element:
        return Fraction(0) if self.characteristic == 0 else 0

    @property
    def one(self) -> Element:
        return Fraction(1) if self.characteristic == 0 else 1

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"F({self.characteristic})"

    def element(self, value: Union[int, Fraction, str]) -> Element:
        """Coerce an integer, Fraction or 'a/b' string into the field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise AlgebraError(f"not an exact scalar: {value!r}")
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldDivisionError()
            return value.numerator * pow(value.denominator, -1, p) % p
        return value % p

    def add(self, a: Element, b: Element) -> Element:
        if self.characteristic:
            return (a + b) % self.characteristic
        return a + b

    def sub(self, a: Element, b: Element) -> Element:
        if self.characteristic:
            return (a - b) % self.characteristic
        return a - b

    def mul(self, a: Element, b: Element) -> Element:
        if self.characteristic:
            return a * b % self.characteristic
        return a * b

    def neg(self, a: Element) -> Element:
        if self.characteristic:
            return -a % self.characteristic
        return -a

    def inv(self, a: Element) -> Element:
        if a == 0:
            raise FieldDivisionError()
        if self.characteristic:
            return pow(a, -1, self.characteristic)
        return 1 / Fraction(a)

    def div(self, a: Element, b: Element) -> Element:
        return self.mul(a, self.inv(b))

    def arithmetic(self, op: FieldOp, a: Element, b: Optional[Element] = None) -> Element:
        """Apply one of the four primitive field operations.

        Args:
            op: add, mul, inv or neg
            a: first operand
            b: second operand, required for add and mul

        Returns:
            The exact result

        Raises:
            FieldDivisionError: on inversion of zero
        """
        op = FieldOp(op)
        if op in (FieldOp.ADD, FieldOp.MUL):
            if b is None:
                raise AlgebraError(f"{op.value} needs two operands")
            return self.add(a, b) if op is FieldOp.ADD else self.mul(a, b)
        if op is FieldOp.INV:
            return self.inv(a)
        return self.neg(a)

    def format(self, a: Element) -> str:
        """Render an element; prime-field elements print in (-p/2, p/2]."""
        p = self.characteristic
        if p:
            return str(a - p if a > p // 2 else a)
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
