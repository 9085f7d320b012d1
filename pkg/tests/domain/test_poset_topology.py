"""
Tests für Paarkomplexe, Möbius-Funktionen, Whitney-Polynome und upper-CM
"""
from math import factorial, prod

import pytest

from fsopkit.domain.exceptions import NoTopElementError, NotGradedError
from fsopkit.domain.models.poset import FinitePoset, IntPolynomial
from fsopkit.domain.services.exactla import homology_dims
from fsopkit.domain.services.lattices import (
    blocks_of,
    boolean_lattice,
    partition_lattice,
    set_partitions,
    subspace_lattice,
)
from fsopkit.domain.services.poset_topology import (
    descending_chains,
    grading,
    interval_pair_complex,
    is_graded,
    is_upper_cm,
    mobius,
    mobius_all,
    mobius_recursive,
    pair_chain_dims,
    poset_length,
    reduced_mobius,
    whitney_polynomial,
)


@pytest.fixture
def not_graded():
    """0 < 1 < 2 < 4 und 0 < 3 < 4"""
    return FinitePoset.from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])


class TestChains:

    def test_descending_chains_of_a_chain(self):
        chains = descending_chains(boolean_lattice(1))
        assert chains == {0: [()], 1: [(0,)]}

    def test_pair_chain_dims(self):
        assert pair_chain_dims(boolean_lattice(2), 0) == (0, 1, 2)

    def test_length(self):
        assert poset_length(boolean_lattice(3)) == 4
        assert poset_length(partition_lattice(4)) == 4


class TestGrading:

    def test_boolean_rank_is_corank(self):
        poset = boolean_lattice(3)
        grades = grading(poset)
        assert grades[7] == 0
        assert grades[0] == 3
        assert grades[5] == 1

    def test_not_graded(self, not_graded):
        assert not is_graded(not_graded)
        with pytest.raises(NotGradedError):
            whitney_polynomial(not_graded)

    def test_without_top(self):
        poset = FinitePoset.from_covers(3, [(0, 1), (0, 2)])
        assert grading(poset) is None
        with pytest.raises(NoTopElementError):
            mobius_recursive(poset, 0)


class TestMobius:

    def test_boolean_signs(self):
        poset = boolean_lattice(3)
        for x in poset.elements:
            assert mobius(poset, x) == (-1) ** (3 - bin(x).count("1"))

    @pytest.mark.parametrize("factory", [
        lambda: boolean_lattice(4),
        lambda: partition_lattice(4),
        lambda: subspace_lattice(2, 3),
        lambda: subspace_lattice(3, 2),
        pytest.param(lambda: partition_lattice(5), marks=pytest.mark.slow),
        pytest.param(lambda: partition_lattice(7), marks=pytest.mark.slow),
        pytest.param(lambda: boolean_lattice(10), marks=pytest.mark.slow),
        pytest.param(lambda: subspace_lattice(3, 3), marks=pytest.mark.slow),
    ])
    def test_homological_equals_recursive(self, factory):
        poset = factory()
        assert mobius_all(poset) == tuple(mobius_recursive(poset, x) for x in poset.elements)

    @pytest.mark.parametrize("n", [3, 4, 5, pytest.param(6, marks=pytest.mark.slow)])
    def test_reduced_mobius_on_partitions(self, n):
        poset = partition_lattice(n)
        vectors = set_partitions(n)
        for x in poset.elements:
            expected = prod(factorial(len(block) - 1) for block in blocks_of(vectors[x]))
            assert reduced_mobius(poset, x) == expected

    def test_pair_complex_is_concentrated(self):
        poset = boolean_lattice(2)
        assert homology_dims(interval_pair_complex(poset, 0)) == (0, 0, 1)
        assert homology_dims(interval_pair_complex(poset, poset.top)) == (1,)


class TestWhitney:

    @pytest.mark.parametrize("n", [2, 3, 4, 5, pytest.param(6, marks=pytest.mark.slow), pytest.param(7, marks=pytest.mark.slow)])
    def test_partition_lattice(self, n):
        assert whitney_polynomial(partition_lattice(n)) == IntPolynomial.linear_product(range(1, n))

    def test_partition_lattice_text(self):
        assert str(whitney_polynomial(partition_lattice(4))) == "1 -6t +11t^2 -6t^3"

    @pytest.mark.parametrize("n", [n if n < 8 else pytest.param(n, marks=pytest.mark.slow) for n in range(1, 11)])
    def test_boolean(self, n):
        assert whitney_polynomial(boolean_lattice(n)) == IntPolynomial((1, -1)) ** n

    @pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
    def test_subspace(self, q, n):
        expected = IntPolynomial.linear_product(q ** i for i in range(n))
        assert whitney_polynomial(subspace_lattice(q, n)) == expected


class TestUpperCM:

    @pytest.mark.parametrize("factory", [
        lambda: boolean_lattice(3),
        lambda: partition_lattice(4),
        lambda: subspace_lattice(2, 2),
    ])
    def test_families_are_upper_cm(self, factory):
        assert is_upper_cm(factory())

    @pytest.mark.slow
    def test_larger_families(self):
        assert is_upper_cm(partition_lattice(5))
        assert is_upper_cm(boolean_lattice(5))
        assert is_upper_cm(subspace_lattice(2, 3))

    def test_not_graded_is_not_upper_cm(self, not_graded):
        assert not is_upper_cm(not_graded)

    def test_two_atoms_without_bottom(self):
        """Zwei Atome unter einem top: Intervall-Homologie in Grad 1"""
        poset = FinitePoset.from_covers(3, [(0, 2), (1, 2)])
        assert is_upper_cm(poset)
