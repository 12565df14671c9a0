"""Monomials and monomial orders.

A monomial is a tuple of non-negative exponents, one per ring variable.
Orders are expressed through sort keys: a larger key means a larger term.
Module orders compare terms (position, monomial); the Schreyer order is
induced from a previous module order and the leading terms of a Gröbner
basis, with ties broken so that a smaller position is larger.
"""

from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Any, Dict, Iterator, Sequence, Tuple

Monomial = Tuple[int, ...]


class OrderKind(str, Enum):
    """Kind of monomial order"""
    DEGREVLEX = "degrevlex"
    LEX = "lex"
    SCHREYER = "schreyer"


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def one(nvars: int) -> Monomial:
    return (0,) * nvars


def degree(m: Monomial) -> int:
    return sum(m)


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def quotient(b: Monomial, a: Monomial) -> Monomial:
    """b / a, assuming a divides b."""
    return tuple(y - x for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def scale(m: Monomial, q: int) -> Monomial:
    return tuple(x * q for x in m)


def pure_power_variable(m: Monomial) -> int | None:
    """Index of the variable when m is a pure power x_v^a with a > 0."""
    support = [i for i, x in enumerate(m) if x]
    return support[0] if len(support) == 1 else None


def monomials_of_degree(nvars: int, d: int) -> Iterator[Monomial]:
    """All monomials of total degree d, in lexicographically decreasing order."""
    if d < 0:
        return
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


@dataclass(frozen=True)
class MonomialOrder:
    """A global monomial order on k[x_1..x_n] with x_1 > x_2 > ... > x_n."""

    kind: OrderKind = OrderKind.DEGREVLEX

    def __post_init__(self) -> None:
        if OrderKind(self.kind) is OrderKind.SCHREYER:
            raise ValueError("use SchreyerOrder for induced module orders")
        object.__setattr__(self, "kind", OrderKind(self.kind))

    def key(self, m: Monomial) -> Tuple[Any, ...]:
        if self.kind is OrderKind.DEGREVLEX:
            return (sum(m),) + tuple(-x for x in reversed(m))
        return m

    def compare(self, a: Monomial, b: Monomial) -> Ordering:
        ka, kb = self.key(a), self.key(b)
        if ka == kb:
            return Ordering.EQUAL
        return Ordering.GREATER if ka > kb else Ordering.LESS

    def __str__(self) -> str:
        return self.kind.value


DEGREVLEX = MonomialOrder(OrderKind.DEGREVLEX)
LEX = MonomialOrder(OrderKind.LEX)


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder) -> Ordering:
    """Compare two monomials with the same number of variables."""
    if len(a) != len(b):
        raise ValueError("monomials have different variable counts")
    return order.compare(a, b)


@dataclass(frozen=True)
class ModuleOrder:
    """Term-over-position order on a free module built on a monomial order.

    Ties between equal monomials in different components are broken so
    that the smaller component index is the larger term.
    """

    base: MonomialOrder = DEGREVLEX
    _cache: Dict[Tuple[int, Monomial], Tuple[Any, ...]] = field(
        default_factory=dict, compare=False, hash=False, repr=False
    )

    @property
    def kind(self) -> OrderKind:
        return self.base.kind

    def key(self, pos: int, m: Monomial) -> Tuple[Any, ...]:
        k = self._cache.get((pos, m))
        if k is None:
            k = (self.base.key(m), -pos)
            self._cache[(pos, m)] = k
        return k


@dataclass(frozen=True)
class SchreyerOrder:
    """Order induced by a map e_i -> g_i with leading terms `leads`.

    m e_i > n e_j iff lt(m g_i) > lt(n g_j) in the previous order, or the
    two agree and i < j.
    """

    previous: "ModuleOrder | SchreyerOrder"
    leads: Tuple[Tuple[int, Monomial], ...]
    _cache: Dict[Tuple[int, Monomial], Tuple[Any, ...]] = field(
        default_factory=dict, compare=False, hash=False, repr=False
    )

    @property
    def kind(self) -> OrderKind:
        return OrderKind.SCHREYER

    @property
    def base(self) -> MonomialOrder:
        return self.previous.base

    def key(self, pos: int, m: Monomial) -> Tuple[Any, ...]:
        k = self._cache.get((pos, m))
        if k is None:
            lead_pos, lead_mon = self.leads[pos]
            k = (self.previous.key(lead_pos, mul(m, lead_mon)), -pos)
            self._cache[(pos, m)] = k
        return k


AnyModuleOrder = ModuleOrder | SchreyerOrder


def order_from_name(name: str) -> MonomialOrder:
    return MonomialOrder(OrderKind(name.lower()))


def sorted_desc(monomials: Sequence[Monomial], order: MonomialOrder) -> list[Monomial]:
    return sorted(monomials, key=order.key, reverse=True)
