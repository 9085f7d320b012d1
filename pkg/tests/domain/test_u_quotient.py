"""
Tests für den Quotientenring R = Q[u_1..u_k]/(u)^r
"""
from fractions import Fraction

import pytest

from fsopkit.domain.exceptions import InvalidInputError
from fsopkit.domain.models.charspace import ExpProfile
from fsopkit.domain.models.symfunc import Partition, SymFunc
from fsopkit.domain.services.character_space import exp_profile, pi_k
from fsopkit.domain.services.u_quotient import (
    UQuotientRing,
    genfunction_check,
    pi_k_exp_basis,
    quotient_image,
    u_power_expansion,
)

EMPTY = ExpProfile()
ONE = ExpProfile((1,))


class TestRing:

    def test_u1_is_a_generator(self):
        for profile in (EMPTY, ONE):
            assert u_power_expansion(profile, 2, 2, 1) == {Partition((1,)): 1}

    def test_p3_in_two_variables(self):
        # p_3 = 3/2 p_1 p_2 - 1/2 p_1^3 modulo e_3
        assert u_power_expansion(EMPTY, 3, 2, 3) == {Partition((2, 1)): Fraction(3, 2)}
        assert u_power_expansion(EMPTY, 2, 2, 3) == {}

    def test_image_of_constants_and_p1(self):
        assert quotient_image(SymFunc.one(3), ONE, 2, 1) == {Partition(): 1}
        assert quotient_image(SymFunc.power_sum((1,), 2), EMPTY, 2, 1) == {Partition((1,)): 1}

    def test_truncation_kills_high_monomials(self):
        ring = UQuotientRing(EMPTY, 2, 1)
        assert ring.multiply(ring.u_image(1), ring.u_image(1)).is_zero

    def test_invalid_parameters(self):
        with pytest.raises(InvalidInputError):
            UQuotientRing(EMPTY, 0, 1)

    @pytest.mark.parametrize("n", range(3, 9))
    def test_worked_example_for_unit_profile(self, n):
        # f(u_n) = n/2 f(u_2) - n/2 f(u_1^2) + n/2 f(u_1 u_2) + n(n-3)/8 f(u_2^2)
        expected = {
            Partition((2,)): Fraction(n, 2),
            Partition((1, 1)): Fraction(-n, 2),
            Partition((2, 1)): Fraction(n, 2),
            Partition((2, 2)): Fraction(n * (n - 3), 8),
        }
        assert u_power_expansion(ONE, 3, 2, n) == {shape: c for shape, c in expected.items() if c}


class TestTaylorIdentity:

    @pytest.mark.parametrize("profile,r,k", [
        (EMPTY, 2, 1),
        (ONE, 2, 1),
        (ONE, 2, 2),
        (EMPTY, 3, 2),
        (ONE, 3, 2),
        (ExpProfile((0, 1)), 2, 2),
    ])
    def test_genfunction(self, profile, r, k):
        assert genfunction_check(profile, r, k, 6)

    def test_profile_larger_than_k(self):
        with pytest.raises(InvalidInputError):
            genfunction_check(ExpProfile((0, 1)), 2, 1, 3)


class TestExpBasis:

    @pytest.mark.parametrize("nu,profile,r,k", [
        ((1,), EMPTY, 2, 1),
        ((), ONE, 1, 1),
        ((1,), ONE, 2, 1),
        ((2,), ONE, 2, 2),
        ((1,), ONE, 3, 2),
    ])
    def test_agrees_with_projection(self, nu, profile, r, k):
        n = 5
        direct = pi_k(SymFunc.power_sum(nu, n) * exp_profile(profile, n), k)
        assert pi_k_exp_basis(nu, profile, r, k, n) == direct

    def test_p2_times_exponential(self):
        # π_2(p_2 exp(y_1)) = Σ_{n ≥ 2} p_n exp(y_1)
        n = 5
        expected = sum(
            (SymFunc.power_sum((m,), n) for m in range(2, n + 1)), SymFunc.zero(n)
        ) * exp_profile(ONE, n)
        assert pi_k_exp_basis((2,), ONE, 2, 2, n) == expected

    def test_nu_outside_part_rk(self):
        with pytest.raises(InvalidInputError):
            pi_k_exp_basis((3,), EMPTY, 2, 2, 4)
