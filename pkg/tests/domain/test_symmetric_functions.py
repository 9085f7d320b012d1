"""
Tests für symmetrische Funktionen und Differentialoperatoren
"""
import warnings
from fractions import Fraction

import pytest

from fsopkit.domain.exceptions import InvalidInputError, TruncationMismatchError
from fsopkit.domain.models.symfunc import Partition, SymFunc
from fsopkit.domain.services.symmetric_functions import (
    apply_binom_D,
    apply_D,
    apply_partial,
    basis_element,
    character_table,
    exp_truncated,
    hall_pair,
    murnaghan_nakayama,
    partitions_of,
    partitions_up_to,
    power_sum_from_y,
    schur_expansion,
    truncate,
    y_element,
)


def _sum_of_h(n: int) -> SymFunc:
    result = SymFunc.one(n)
    for k in range(1, n + 1):
        result = result + basis_element("h", k, n)
    return result


class TestPartition:

    def test_parts_are_sorted(self):
        assert Partition((1, 3, 2)) == (3, 2, 1)

    @pytest.mark.parametrize("text,expected", [("2,1", (2, 1)), ("(3, 1)", (3, 1)), ("21", (2, 1)), ("∅", ())])
    def test_parse(self, text, expected):
        assert Partition.parse(text) == expected

    def test_invariants(self):
        shape = Partition((2, 1, 1))
        assert shape.size == 4
        assert shape.rank == 3
        assert shape.z == 4
        assert shape.multiplicities == {1: 2, 2: 1}
        assert Partition((3, 1)).conjugate() == (2, 1, 1)

    def test_invalid_part(self):
        with pytest.raises(InvalidInputError):
            Partition((2, 0))

    def test_enumeration(self):
        assert len(partitions_of(4)) == 5
        assert partitions_of(4)[0] == (4,)
        assert len(partitions_up_to(3)) == 7


class TestCharacterTable:

    @pytest.mark.parametrize("shape,cycle_type,value", [
        ((2, 1), (1, 1, 1), 2),
        ((2, 1), (2, 1), 0),
        ((2, 1), (3,), -1),
        ((1, 1, 1), (2, 1), -1),
        ((3, 1), (2, 2), -1),
    ])
    def test_values(self, shape, cycle_type, value):
        assert murnaghan_nakayama(Partition(shape), Partition(cycle_type)) == value

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_column_orthogonality(self, n):
        table = character_table(n)
        for mu in partitions_of(n):
            assert sum(table[shape][mu] ** 2 for shape in partitions_of(n)) == mu.z

    def test_size_mismatch(self):
        with pytest.raises(InvalidInputError):
            murnaghan_nakayama(Partition((2,)), Partition((1,)))


class TestBases:

    def test_h_and_e(self):
        half = Fraction(1, 2)
        assert basis_element("h", 2, 2) == SymFunc(2, {(1, 1): half, (2,): half})
        assert basis_element("e", 2, 2) == SymFunc(2, {(1, 1): half, (2,): -half})

    def test_schur_functions_are_orthonormal(self):
        shapes = partitions_of(4)
        for a in shapes:
            for b in shapes:
                value = hall_pair(basis_element("s", a, 4), basis_element("s", b, 4))
                assert value == (1 if a == b else 0)

    def test_power_sums_pair_to_z(self):
        for shape in partitions_of(4):
            p = SymFunc.power_sum(shape, 4)
            assert hall_pair(p, p) == shape.z

    def test_y_and_back(self):
        assert y_element(1, 3) == SymFunc(3, {(1,): 1, (2,): Fraction(1, 2), (3,): Fraction(1, 3)})
        assert power_sum_from_y(1, 6) == SymFunc.power_sum((1,), 6)
        assert power_sum_from_y(2, 6) == SymFunc.power_sum((2,), 6)

    def test_moebius_without_deprecation(self):
        """μ(2), μ(3), μ(6) kommen aus dem nicht veralteten sympy-Modul"""
        with warnings.catch_warnings():
            warnings.simplefilter("error", DeprecationWarning)
            assert power_sum_from_y(1, 6) == SymFunc.power_sum((1,), 6)

    def test_unknown_kind(self):
        with pytest.raises(InvalidInputError):
            basis_element("m", 2, 4)

    def test_degree_above_truncation(self):
        with pytest.raises(InvalidInputError):
            basis_element("s", (3, 1), 3)


class TestArithmetic:

    def test_truncation_mismatch(self):
        with pytest.raises(TruncationMismatchError):
            SymFunc.one(2) + SymFunc.one(3)

    def test_product_drops_high_degrees(self):
        p1 = SymFunc.power_sum((1,), 2)
        assert (p1 * p1 * p1).is_zero()

    def test_truncate(self):
        f = y_element(1, 4)
        assert truncate(f, 2) == y_element(1, 2)
        with pytest.raises(InvalidInputError):
            truncate(f, 5)

    def test_exp_of_y1_is_sum_of_h(self):
        assert exp_truncated(y_element(1, 5)) == _sum_of_h(5)

    def test_exp_needs_zero_constant_term(self):
        with pytest.raises(InvalidInputError):
            exp_truncated(SymFunc.one(3))


class TestOperators:

    def test_partial(self):
        square = SymFunc.power_sum((1, 1), 3)
        assert apply_partial(1, square) == SymFunc(2, {(1,): 2})

    @pytest.mark.parametrize("i", [1, 2, 3])
    @pytest.mark.parametrize("j", [1, 2, 3])
    def test_D_on_y_is_kronecker(self, i, j):
        n = 7
        result = apply_D(i, y_element(j, n))
        expected = SymFunc.one(n - i) if i == j else SymFunc.zero(n - i)
        assert result == expected

    def test_D_below_truncation(self):
        with pytest.raises(InvalidInputError):
            apply_D(3, SymFunc.one(2))

    def test_binomial_operator_on_sum_of_h(self):
        h = _sum_of_h(5)
        assert apply_binom_D((1,), h) == truncate(h, 4)
        assert apply_binom_D((1, 1), h).is_zero()
        assert apply_binom_D((1, 1), h).truncation_degree == 3


class TestSchurExpansion:

    def test_p1_cubed(self):
        expansion = schur_expansion(SymFunc.power_sum((1, 1, 1), 3), 3)
        assert expansion[Partition((3,))] == 1
        assert expansion[Partition((2, 1))] == 2
        assert expansion[Partition((1, 1, 1))] == 1

    def test_schur_element(self):
        expansion = schur_expansion(basis_element("s", (2, 2), 4), 4)
        assert {k for k, v in expansion.items() if v} == {Partition((2, 2))}

    def test_degree_above_truncation(self):
        with pytest.raises(InvalidInputError):
            schur_expansion(SymFunc.one(2), 3)
