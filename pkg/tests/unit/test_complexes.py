"""Unit tests for tensor squares, the swap and the S²/Λ² splitting."""
import random

import pytest

from app.core.exceptions import CharacteristicError, DegreeBoundError, NotFiniteLengthError
from app.services.complex_service import (
    direct_sum,
    shift,
    splitting,
    sym2,
    tau,
    tensor_product,
    tensor_square,
    wedge2,
)
from app.services.homology_service import (
    euler_characteristic,
    homology_lengths,
    homology_lengths_bruteforce,
    homology_vanishes,
    oracle_degree_bound,
    psi2_euler,
)
from app.services.module_service import koszul_complex


@pytest.fixture
def residue_line(make_ring, cyclic, resolve):
    """Resolution of k over k[x]: R <- R(-1)."""
    return resolve(cyclic(make_ring("x"), "x")).complex


@pytest.fixture
def koszul_xy(make_ring):
    R = make_ring("x,y")
    return koszul_complex(R, [R.ambient.parse("x"), R.ambient.parse("y")])


class TestTensorSquare:
    def test_ranks(self, residue_line, koszul_xy):
        assert tensor_square(residue_line).ranks() == (1, 2, 1)
        assert tensor_square(koszul_xy).ranks() == (1, 4, 6, 4, 1)

    def test_twists_add(self, residue_line):
        T = tensor_square(residue_line)
        assert T.module(1).twists == (1, 1)
        assert T.module(2).twists == (2,)

    def test_tensor_of_different_complexes(self, make_ring, cyclic, resolve):
        R = make_ring("x,y")
        F = resolve(cyclic(R, "x")).complex
        G = resolve(cyclic(R, "y")).complex
        FG = tensor_product(F, G)
        assert FG.ranks() == (1, 2, 1)
        assert homology_lengths(FG) == (1, 0, 0)


class TestSwap:
    def test_involution(self, koszul_xy):
        t = tau(koszul_xy)
        assert t.squares_to_identity()
        assert t.commutes_with_differential()

    def test_sign_on_odd_square(self, residue_line):
        """e1 ⊗ e1 with |e1| = 1 goes to its own negative."""
        assert tau(residue_line).matrix(2) == [[-1]]
        assert tau(residue_line).matrix(1) == [[0, 1], [1, 0]]


class TestSplitting:
    def test_ranks_line(self, residue_line):
        split = splitting(residue_line)
        assert split.sym.ranks() == (1, 1, 0)
        assert split.wedge.ranks() == (0, 1, 1)

    def test_ranks_koszul(self, koszul_xy):
        """F_1 (x) F_1 sits in odd degrees, so its +1 part is the antisymmetric one."""
        assert sym2(koszul_xy).ranks() == (1, 2, 2, 2, 1)
        assert wedge2(koszul_xy).ranks() == (0, 2, 4, 2, 0)

    def test_ranks_add_up(self, make_ring, cyclic, resolve):
        F = resolve(cyclic(make_ring("x,y"), "x^2", "x*y", "y^2")).complex
        split = splitting(F)
        T = tensor_square(F)
        for n in T.modules:
            assert split.sym.module(n).rank + split.wedge.module(n).rank == T.module(n).rank

    def test_summands_are_complexes(self, koszul_xy):
        split = splitting(koszul_xy)
        split.sym.check_square_zero()
        split.wedge.check_square_zero()

    def test_characteristic_two(self, make_ring):
        R = make_ring("x,y", p=2)
        K = koszul_complex(R, [R.ambient.parse("x"), R.ambient.parse("y")])
        with pytest.raises(CharacteristicError):
            splitting(K)
        with pytest.raises(CharacteristicError):
            psi2_euler(K)


class TestHomology:
    def test_koszul_resolves_residue_field(self, koszul_xy):
        assert homology_lengths(koszul_xy) == (1, 0, 0)
        assert euler_characteristic(koszul_xy) == 1

    @pytest.mark.parametrize(
        "gens,expected",
        [(("x", "y"), 1), (("x^2", "y"), 2), (("x^2", "x*y", "y^2"), 3)],
    )
    def test_euler_characteristic_is_length(self, make_ring, cyclic, resolve, gens, expected):
        F = resolve(cyclic(make_ring("x,y"), *gens)).complex
        assert euler_characteristic(F) == expected

    def test_groebner_and_brute_force_agree(self, make_ring, cyclic, resolve):
        F = resolve(cyclic(make_ring("x,y"), "x^2", "y")).complex
        for C in (F, sym2(F), wedge2(F)):
            bound = oracle_degree_bound(C)
            assert homology_lengths_bruteforce(C, bound) == homology_lengths(C)

    def test_brute_force_bound_too_small(self, make_ring, cyclic, resolve):
        """k[x,y]/(x^2, y) lives in degrees 0 and 1, so a bound of 1 is too small."""
        F = resolve(cyclic(make_ring("x,y"), "x^2", "y")).complex
        assert oracle_degree_bound(F) == 2
        with pytest.raises(DegreeBoundError):
            homology_lengths_bruteforce(F, 1)

    def test_oracle_cross_check(self, koszul_xy):
        assert homology_lengths(koszul_xy, oracle=True) == (1, 0, 0)

    def test_infinite_length_homology(self, make_ring, cyclic, resolve):
        F = resolve(cyclic(make_ring("x,y"), "x")).complex
        assert not homology_vanishes(F, 0)
        with pytest.raises(NotFiniteLengthError):
            homology_lengths(F)


class TestPsi2:
    """χ(S²F) - χ(Λ²F) against 2^d χ(F)."""

    def test_residue_field_of_line(self, residue_line):
        assert psi2_euler(residue_line) == 2

    def test_koszul(self, koszul_xy):
        assert psi2_euler(koszul_xy) == 4

    def test_square_of_maximal_ideal(self, make_ring, cyclic, resolve):
        F = resolve(cyclic(make_ring("x,y"), "x^2", "x*y", "y^2")).complex
        assert psi2_euler(F) == 4 * 3

    def test_hypersurface(self, make_ring, cyclic, resolve):
        """R/(x - y) over k[x,y]/(xy) has length 2 and d = 1."""
        F = resolve(cyclic(make_ring("x,y", ["x*y"]), "x - y")).complex
        assert euler_characteristic(F) == 2
        assert psi2_euler(F) == 4

    def test_shift_negates(self, koszul_xy):
        shifted = shift(koszul_xy, 1)
        assert shifted.ranks() == (1, 2, 1)
        assert shifted.lo == 1
        assert euler_characteristic(shifted) == -1
        assert psi2_euler(shifted) == -4

    def test_cone_of_identity_class_vanishes(self, koszul_xy):
        """F ⊕ F[1] has zero class, so both invariants vanish."""
        N = direct_sum(koszul_xy, shift(koszul_xy, 1))
        assert N.ranks() == (1, 3, 3, 1)
        assert euler_characteristic(N) == 0
        assert psi2_euler(N) == 0


def _random_module_generators(rng: random.Random) -> list:
    """An m-primary ideal of k[x,y] with at most three generators, in random coordinates."""
    a, b = rng.randint(1, 3), rng.randint(1, 3)
    gens = [f"x^{a}", f"y^{b}"]
    if a > 1 and b > 1 and rng.random() < 0.6:
        gens.append(f"x^{rng.randint(1, a - 1)}*y^{rng.randint(1, b - 1)}")
    t = rng.randint(0, 2)
    # x -> x + t*y keeps the ideal m-primary and its Betti numbers
    return [g.replace("x", f"(x + {t}*y)") for g in gens]


class TestRandomSplittings:
    """S² and Λ² are summands of T² on seeded random resolutions."""

    @pytest.mark.parametrize("seed", range(20))
    def test_additivity(self, make_ring, cyclic, resolve, seed: int):
        rng = random.Random(seed)
        p = rng.choice([3, 5, 7, 101])
        F = resolve(cyclic(make_ring("x,y", p=p), *_random_module_generators(rng))).complex
        assert max(F.ranks()) <= 3
        assert len(F.ranks()) <= 3

        split = splitting(F, audit=True)
        T = tensor_square(F)
        for C in (T, split.sym, split.wedge):
            C.check_square_zero()

        def by_degree(C):
            return {C.lo + k: v for k, v in enumerate(homology_lengths(C))}

        t_lengths = by_degree(T)
        s_lengths = by_degree(split.sym)
        w_lengths = by_degree(split.wedge)
        for n in range(T.lo, T.hi + 1):
            assert split.sym.module(n).rank + split.wedge.module(n).rank == T.module(n).rank
            assert s_lengths.get(n, 0) + w_lengths.get(n, 0) == t_lengths.get(n, 0)
