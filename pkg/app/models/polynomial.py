"""Sparse multivariate polynomials over an exact field.

A Polynomial is a finite map Monomial -> nonzero coefficient over a
PolynomialRing (field, variable names, monomial order). Values are
immutable after construction; arithmetic returns new polynomials.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from app.core.exceptions import AlgebraError, InhomogeneousError, RingMismatchError
from app.models import monomial as mono
from app.models.field import CoefficientField, Element
from app.models.monomial import DEGREVLEX, Monomial, MonomialOrder

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class PolynomialRing:
    """The ambient polynomial ring k[x_1..x_n] with a fixed monomial order."""

    field: CoefficientField
    variables: Tuple[str, ...]
    order: MonomialOrder = DEGREVLEX

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise AlgebraError("duplicate variable names")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: Scalar) -> "Polynomial":
        return Polynomial(self, {mono.one(self.nvars): self.field.element(c)})

    def monomial(self, m: Monomial, c: Scalar = 1) -> "Polynomial":
        return Polynomial(self, {tuple(m): self.field.element(c)})

    def gen(self, name_or_index: Union[str, int]) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self.variables.index(name_or_index)
        m = [0] * self.nvars
        m[i] = 1
        return self.monomial(tuple(m))

    def gens(self) -> List["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __str__(self) -> str:
        return f"{self.field}[{','.join(self.variables)}]"


class Polynomial:
    """Sparse distributed polynomial; zero coefficients are never stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolynomialRing, terms: Mapping[Monomial, Element]):
        self.ring = ring
        self.terms: Dict[Monomial, Element] = {m: c for m, c in terms.items() if c != 0}

    # ----- structure -----

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self) -> List[Tuple[Monomial, Element]]:
        """Terms in decreasing order under the ring's monomial order."""
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise AlgebraError("zero polynomial has no leading term")
        return max(self.terms, key=self.ring.order.key)

    def leading_coefficient(self) -> Element:
        return self.terms[self.leading_monomial()]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def homogeneous_degree(self) -> Optional[int]:
        """The common degree of all terms, None for zero; raises if inhomogeneous."""
        degrees = {sum(m) for m in self.terms}
        if len(degrees) > 1:
            raise InhomogeneousError(f"inhomogeneous polynomial {self}")
        return degrees.pop() if degrees else None

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_term(self) -> Element:
        return self.terms.get(mono.one(self.ring.nvars), self.ring.field.zero)

    # ----- arithmetic -----

    def _check(self, other: "Polynomial") -> None:
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatchError(f"polynomials over {self.ring} and {other.ring}")

    def _coerce(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.constant(other)

    def __add__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        other = self._coerce(other)
        F = self.ring.field
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = F.add(terms[m], c) if m in terms else c
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other: Union["Polynomial", Scalar]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(self.ring.field.element(other))
        self._check(other)
        F = self.ring.field
        terms: Dict[Monomial, Element] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono.mul(m1, m2)
                c = F.mul(c1, c2)
                terms[m] = F.add(terms[m], c) if m in terms else c
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise AlgebraError("negative powers are not polynomials")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Element) -> "Polynomial":
        F = self.ring.field
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: F.mul(a, c) for m, a in self.terms.items()})

    def mul_term(self, m: Monomial, c: Element) -> "Polynomial":
        F = self.ring.field
        return Polynomial(self.ring, {mono.mul(m, k): F.mul(a, c) for k, a in self.terms.items()})

    def frobenius(self, q: int) -> "Polynomial":
        """self^q for q a power of the characteristic p of a prime field.

        Coefficients satisfy c^p = c in F_p, so only exponents change.
        """
        p = self.ring.field.characteristic
        if p == 0:
            raise AlgebraError("Frobenius power needs a prime field")
        return Polynomial(self.ring, {mono.scale(m, q): c for m, c in self.terms.items()})

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_coefficient()))

    # ----- comparison / display -----

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        F = self.ring.field
        names = self.ring.variables
        parts: List[str] = []
        for m, c in self.sorted_terms():
            text = F.format(c)
            negative = text.startswith("-")
            if negative:
                text = text[1:]
            factors = [
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, m) if e
            ]
            if factors:
                body = "*".join(factors) if text == "1" else "*".join([text] + factors)
            else:
                body = text
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def sum_polynomials(ring: PolynomialRing, items: Iterable[Polynomial]) -> Polynomial:
    F = ring.field
    terms: Dict[Monomial, Element] = {}
    for p in items:
        for m, c in p.terms.items():
            terms[m] = F.add(terms[m], c) if m in terms else c
    return Polynomial(ring, terms)


# ----- text syntax -----

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _PolynomialParser:
    """Recursive descent over: expr := term (('+'|'-') term)*,
    term := factor ('*' factor)*, factor := '-' factor | atom ('^' int)?,
    atom := int ('/' int)? | variable | '(' expr ')'.
    """

    def __init__(self, text: str, ring: PolynomialRing):
        self.text = text
        self.ring = ring
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN.match(text, pos)
            if match is None or match.end() == pos:
                break
            number, name, other = match.groups()
            column = match.start(match.lastindex) if match.lastindex else pos
            if number is not None:
                self.tokens.append(("num", number, column))
            elif name is not None:
                self.tokens.append(("var", name, column))
            elif other is not None and not other.isspace():
                self.tokens.append(("op", other, column))
            pos = match.end()
        self.i = 0

    def error(self, message: str) -> AlgebraError:
        column = self.tokens[self.i][2] + 1 if self.i < len(self.tokens) else len(self.text) + 1
        err = AlgebraError(f"{message} at column {column} in {self.text!r}")
        err.column = column  # type: ignore[attr-defined]
        return err

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: str) -> bool:
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == value:
            self.i += 1
            return True
        return False

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise self.error("empty polynomial")
        result = self.expr()
        if self.i != len(self.tokens):
            raise self.error(f"unexpected {self.tokens[self.i][1]!r}")
        return result

    def expr(self) -> Polynomial:
        result = self.term()
        while True:
            if self.take("+"):
                result = result + self.term()
            elif self.take("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.take("*"):
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        if self.take("-"):
            return -self.factor()
        if self.take("+"):
            return self.factor()
        base = self.atom()
        if self.take("^"):
            tok = self.peek()
            if tok is None or tok[0] != "num":
                raise self.error("expected an integer exponent")
            self.i += 1
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of input")
        kind, value, _ = tok
        if kind == "num":
            self.i += 1
            coefficient = Fraction(int(value))
            if self.take("/"):
                den = self.peek()
                if den is None or den[0] != "num":
                    raise self.error("expected a denominator")
                if int(den[1]) == 0:
                    raise self.error("zero denominator")
                self.i += 1
                coefficient = Fraction(int(value), int(den[1]))
            return self.ring.constant(coefficient)
        if kind == "var":
            if value not in self.ring.variables:
                raise self.error(f"unknown variable {value!r}")
            self.i += 1
            return self.ring.gen(value)
        if self.take("("):
            inner = self.expr()
            if not self.take(")"):
                raise self.error("expected ')'")
            return inner
        raise self.error(f"unexpected {value!r}")


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse e.g. '3*x^2*y - 1/2*z^3' or '(x - y)^3' over `ring`."""
    return _PolynomialParser(text, ring).parse()


def parse_polynomials(texts: Sequence[str], ring: PolynomialRing) -> List[Polynomial]:
    return [parse_polynomial(t, ring) for t in texts]
