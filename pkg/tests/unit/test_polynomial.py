"""Unit tests for polynomials, monomial orders and the polynomial parser."""
import random

import pytest

from app.core.exceptions import AlgebraError, InhomogeneousError, RingMismatchError
from app.models import monomial as mono
from app.models.field import CoefficientField
from app.models.monomial import DEGREVLEX, LEX, ModuleOrder, Ordering, order_from_name
from app.models.polynomial import PolynomialRing


@pytest.fixture
def S() -> PolynomialRing:
    return PolynomialRing(CoefficientField(101), ("x", "y", "z"))


class TestMonomialOrders:
    """Degree reverse lexicographic and lexicographic orders."""

    def test_degrevlex(self):
        """Degree first, then the smallest last exponent wins."""
        assert DEGREVLEX.key((1, 0, 1)) < DEGREVLEX.key((0, 2, 0))
        assert DEGREVLEX.key((2, 0, 0)) > DEGREVLEX.key((1, 1, 0))
        assert DEGREVLEX.key((0, 0, 3)) > DEGREVLEX.key((2, 0, 0))

    def test_lex(self):
        """Lex ignores degree."""
        assert LEX.key((1, 0, 0)) > LEX.key((0, 5, 5))

    def test_order_from_name(self):
        """Names map to the two global orders."""
        assert order_from_name("DegRevLex") == DEGREVLEX
        assert order_from_name("lex") == LEX
        with pytest.raises(ValueError):
            order_from_name("elimination")

    def test_module_order_breaks_ties_by_position(self):
        """Equal monomials: the smaller component index is larger."""
        order = ModuleOrder(DEGREVLEX)
        assert order.key(0, (1, 0)) > order.key(1, (1, 0))
        assert order.key(1, (2, 0)) > order.key(0, (1, 0))

    def test_compare_monomials(self):
        """x^2 > xy, y^2 > xz and every monomial equals itself."""
        assert mono.compare_monomials((2, 0, 0), (1, 1, 0), DEGREVLEX) is Ordering.GREATER
        assert mono.compare_monomials((1, 0, 1), (0, 2, 0), DEGREVLEX) is Ordering.LESS
        assert mono.compare_monomials((1, 2, 3), (1, 2, 3), LEX) is Ordering.EQUAL
        with pytest.raises(ValueError):
            mono.compare_monomials((1, 0), (1, 0, 0), DEGREVLEX)

    def test_degrevlex_matches_definition(self):
        """Agrees with the textbook definition on every pair up to degree 3."""

        def reference(a, b):
            if sum(a) != sum(b):
                return Ordering.GREATER if sum(a) > sum(b) else Ordering.LESS
            diff = [x - y for x, y in zip(a, b) if x != y]
            if not diff:
                return Ordering.EQUAL
            return Ordering.GREATER if diff[-1] < 0 else Ordering.LESS

        monomials = [m for d in range(4) for m in mono.monomials_of_degree(3, d)]
        for a in monomials:
            for b in monomials:
                assert mono.compare_monomials(a, b, DEGREVLEX) is reference(a, b)

    def test_orders_are_multiplicative(self):
        """a < b implies a*n < b*n, and 1 is the degrevlex minimum."""
        monomials = [m for d in range(3) for m in mono.monomials_of_degree(3, d)]
        n = (1, 0, 2)
        for order in (DEGREVLEX, LEX):
            for a in monomials:
                for b in monomials:
                    if order.key(a) < order.key(b):
                        assert order.key(mono.mul(a, n)) < order.key(mono.mul(b, n))
        assert all(DEGREVLEX.key((0, 0, 0)) <= DEGREVLEX.key(m) for m in monomials)

    def test_monomials_of_degree(self):
        """Counts are binomial coefficients."""
        assert len(list(mono.monomials_of_degree(3, 2))) == 6
        assert list(mono.monomials_of_degree(2, -1)) == []
        assert list(mono.monomials_of_degree(0, 0)) == [()]


class TestPolynomialArithmetic:
    """Sparse arithmetic and structure."""

    def test_parse_and_print(self, S: PolynomialRing):
        """Printing is in decreasing degrevlex order with symmetric coefficients."""
        f = S.parse("(x - y)^2")
        assert str(f) == "x^2 - 2*x*y + y^2"
        assert f == S.parse("x^2 - 2*x*y + y^2")

    def test_rational_coefficients(self):
        """Q keeps fractions in the output."""
        Q = PolynomialRing(CoefficientField.rationals(), ("x", "y"))
        assert str(Q.parse("1/2*x - 3*y")) == "1/2*x - 3*y"

    def test_zero_terms_are_dropped(self, S: PolynomialRing):
        """f - f is the zero polynomial."""
        f = S.parse("x*y + 3*z^2")
        assert (f - f).is_zero()
        assert str(f - f) == "0"
        assert S.parse("101*x") == 0

    def test_homogeneity(self, S: PolynomialRing):
        """Homogeneous degree, or an error naming the polynomial."""
        assert S.parse("x*y - z^2").homogeneous_degree() == 2
        assert S.zero().homogeneous_degree() is None
        with pytest.raises(InhomogeneousError):
            S.parse("x^2 + y").homogeneous_degree()

    def test_leading_term(self, S: PolynomialRing):
        """Leading monomial under degrevlex."""
        f = S.parse("z^2 + 5*x*z + 2*y^2")
        assert f.leading_monomial() == (0, 2, 0)
        assert f.leading_coefficient() == 2
        assert f.monic().leading_coefficient() == 1

    def test_frobenius_power(self):
        """In characteristic 3, (x - y)^3 = x^3 - y^3."""
        S3 = PolynomialRing(CoefficientField(3), ("x", "y"))
        f = S3.parse("x - y")
        assert f ** 3 == S3.parse("x^3 - y^3")
        assert f.frobenius(3) == f ** 3
        assert f.frobenius(9) == f ** 9

    def test_frobenius_needs_prime_field(self):
        """Q has no Frobenius."""
        Q = PolynomialRing(CoefficientField.rationals(), ("x",))
        with pytest.raises(AlgebraError):
            Q.parse("x").frobenius(2)

    def test_ring_mismatch(self, S: PolynomialRing):
        """Polynomials over different variable sets do not mix."""
        T = PolynomialRing(CoefficientField(101), ("u", "v"))
        with pytest.raises(RingMismatchError):
            S.parse("x") + T.parse("u")


class TestPolynomialParser:
    """Parser errors carry a column."""

    @pytest.mark.parametrize(
        "text, column",
        [("x +", 4), ("x + w", 5), ("x * (y", 7), ("x^y", 3), ("", 1)],
    )
    def test_error_columns(self, S: PolynomialRing, text: str, column: int):
        """Columns are 1-based positions of the offending token."""
        with pytest.raises(AlgebraError) as info:
            S.parse(text)
        assert info.value.column == column

    def test_duplicate_variables(self):
        """Variable names are unique."""
        with pytest.raises(AlgebraError, match="duplicate"):
            PolynomialRing(CoefficientField(101), ("x", "x"))


def _random_polynomial(ring: PolynomialRing, rng: random.Random):
    terms = {}
    for _ in range(rng.randint(0, 4)):
        m = tuple(rng.randint(0, 2) for _ in range(ring.nvars))
        terms[m] = ring.field.element(rng.randint(1, 100))
    return sum((ring.monomial(m, c) for m, c in terms.items()), ring.zero())


@pytest.mark.parametrize("seed", range(10))
def test_ring_laws(S: PolynomialRing, seed: int):
    """Commutativity, associativity and distributivity; degrees add over a domain."""
    rng = random.Random(seed)
    for _ in range(10):
        f, g, h = (_random_polynomial(S, rng) for _ in range(3))
        assert f + g == g + f
        assert f * g == g * f
        assert (f + g) + h == f + (g + h)
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f - g) + g == f
        if f and g:
            assert (f * g).degree() == f.degree() + g.degree()
            assert (f * g).leading_monomial() == mono.mul(f.leading_monomial(), g.leading_monomial())
