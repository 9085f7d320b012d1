"""
Tests für Verbands-Familien und Produkte
"""
import pytest
import sympy

from fsopkit.domain.exceptions import BoundExceededError, InvalidInputError, PosetStructureError
from fsopkit.domain.models.poset import FinitePoset, IntPolynomial
from fsopkit.domain.policies.enumeration_bounds import EnumerationBounds
from fsopkit.domain.services.lattices import (
    blocks_of,
    boolean_lattice,
    canonical_vector,
    parse_partition_label,
    partition_label,
    partition_lattice,
    product_coordinates,
    product_index,
    product_poset,
    refines,
    set_partitions,
    subspace_lattice,
)


class TestBoolean:

    def test_size_top_and_labels(self):
        poset = boolean_lattice(3)
        assert poset.size == 8
        assert poset.top == 7
        assert poset.label(5) == "{1,3}"
        assert poset.label(0) == "{}"

    def test_order_is_inclusion(self):
        poset = boolean_lattice(3)
        assert poset.leq(1, 3)
        assert not poset.leq(1, 2)
        assert poset.upper_covers(0) == (1, 2, 4)

    def test_bound(self):
        with pytest.raises(BoundExceededError):
            boolean_lattice(3, EnumerationBounds(boolean_max_n=2))


class TestSubspace:

    @pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2), (4, 2)])
    def test_sizes_are_gaussian_sums(self, q, n):
        expected = sum(
            sympy.prod([(q ** (n - i) - 1) for i in range(k)]) // sympy.prod([(q ** (i + 1) - 1) for i in range(k)])
            for k in range(n + 1)
        )
        assert subspace_lattice(q, n).size == expected

    def test_top_is_whole_space(self):
        poset = subspace_lattice(2, 2)
        assert poset.label(0) == "0"
        assert len(poset.below(poset.top)) == poset.size - 1

    def test_unsupported_field(self):
        with pytest.raises(InvalidInputError):
            subspace_lattice(6, 2)


class TestPartitions:

    @pytest.mark.parametrize("n,bell", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
    def test_bell_numbers(self, n, bell):
        assert len(set_partitions(n)) == bell

    def test_order_of_vectors(self):
        assert set_partitions(3) == ((0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2))

    def test_labels(self):
        assert partition_label((0, 1, 1, 0)) == "14|23"
        assert parse_partition_label("14|23", 4) == (0, 1, 1, 0)
        assert blocks_of((0, 1, 0)) == ((0, 2), (1,))
        assert canonical_vector([[2], [0, 1]], 3) == (0, 0, 1)

    def test_bad_label(self):
        with pytest.raises(InvalidInputError):
            parse_partition_label("12|2", 3)

    def test_refines(self):
        assert refines((0, 1, 2), (0, 0, 1))
        assert not refines((0, 0, 1), (0, 1, 2))

    def test_lattice_has_discrete_top(self):
        poset = partition_lattice(3)
        assert poset.label(0) == "123"
        assert poset.label(poset.top) == "1|2|3"
        assert poset.leq(poset.index_of("12|3"), poset.top)
        assert not poset.leq(poset.index_of("12|3"), poset.index_of("13|2"))

    def test_covers_merge_two_blocks(self):
        poset = partition_lattice(4)
        top = poset.top
        assert len(poset.lower_covers(top)) == 6


class TestProducts:

    def test_mixed_radix(self):
        assert product_index([2, 3], [1, 2]) == 5
        assert product_coordinates([2, 3], 5) == (1, 2)

    def test_product_of_chains(self):
        chain = boolean_lattice(1)
        square = product_poset([chain, chain])
        assert square.size == 4
        assert square.top == 3
        assert square.label(1) == "({}, {1})"
        assert square.leq(0, 3) and not square.leq(1, 2)

    def test_empty_product(self):
        with pytest.raises(InvalidInputError):
            product_poset([])


class TestFinitePoset:

    def test_from_covers_detects_top(self):
        poset = FinitePoset.from_covers(3, [(0, 1), (1, 2)])
        assert poset.top == 2
        assert poset.leq(0, 2)

    def test_cycle_is_rejected(self):
        with pytest.raises(PosetStructureError):
            FinitePoset.from_covers(2, [(0, 1), (1, 0)])

    def test_non_transitive_relation_is_rejected(self):
        with pytest.raises(PosetStructureError):
            FinitePoset(3, frozenset({(0, 1), (1, 2)}))

    def test_linear_product(self):
        assert str(IntPolynomial.linear_product([1, 2, 3])) == "1 -6t +11t^2 -6t^3"
        assert IntPolynomial.linear_product([1, 1]) == IntPolynomial((1, -2, 1))
