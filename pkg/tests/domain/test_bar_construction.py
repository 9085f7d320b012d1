"""
Tests für Bar-/Koszul-Komplexe, Ideal-Darstellungen und P-Mengen
"""
from itertools import product

import pytest

from fsopkit.domain.exceptions import (
    FunctorialityError,
    InvalidInputError,
    NonInjectiveTransitionError,
    NotUpperCMError,
    PosetStructureError,
)
from fsopkit.domain.models.linalg import RatMatrix
from fsopkit.domain.models.poset import FinitePoset
from fsopkit.domain.models.rep import PosetIdeal
from fsopkit.domain.services.bar_construction import (
    bar_complex,
    external_product,
    ideal_rep,
    koszul_complex,
    multi_bar_complex,
    principal_ideal,
    pset_decompose,
    random_functorial_rep,
    rep_from_cover_maps,
    restrict_rep,
    validate_functoriality,
)
from fsopkit.domain.services.exactla import homology_dims, is_exact
from fsopkit.domain.services.language_ideals import factor_word
from fsopkit.domain.services.lattices import boolean_lattice, partition_lattice, set_partitions, subspace_lattice


def _identity_cover_maps(poset, overrides=None):
    maps = {cover: RatMatrix.identity(1) for cover in poset.covers()}
    maps.update(overrides or {})
    return maps


class TestIdeals:

    def test_principal_ideal(self):
        poset = boolean_lattice(2)
        assert principal_ideal(poset, 1).sorted_members() == (1, 3)
        assert principal_ideal(poset, 0).labels() == ("{}", "{1}", "{2}", "{1,2}")

    def test_ideal_must_be_upward_closed(self):
        with pytest.raises(PosetStructureError):
            PosetIdeal(boolean_lattice(2), frozenset({0}))

    def test_ideal_rep_dims(self):
        rep = ideal_rep(principal_ideal(boolean_lattice(2), 2))
        assert rep.dim_at == (0, 0, 1, 1)
        assert rep.map_for(2, 3) == RatMatrix.identity(1)


class TestBarComplex:

    def test_principal_ideal_at_top(self):
        for poset in (boolean_lattice(3), partition_lattice(4)):
            complex_ = bar_complex(ideal_rep(principal_ideal(poset, poset.top)))
            homology = homology_dims(complex_)
            assert homology[0] == 1
            assert sum(homology) == 1

    @pytest.mark.parametrize("factory", [lambda: boolean_lattice(3), lambda: partition_lattice(4)])
    def test_principal_ideals_below_top_are_acyclic(self, factory):
        poset = factory()
        for x in poset.elements:
            if x == poset.top:
                continue
            assert is_exact(bar_complex(ideal_rep(principal_ideal(poset, x))))

    @pytest.mark.slow
    @pytest.mark.parametrize("factory", [
        lambda: partition_lattice(5),
        lambda: boolean_lattice(5),
        lambda: subspace_lattice(2, 3),
    ])
    def test_minimal_elements_on_larger_families(self, factory):
        poset = factory()
        for x in poset.elements:
            if not poset.below(x) and x != poset.top:
                assert is_exact(bar_complex(ideal_rep(principal_ideal(poset, x))))

    def test_constant_rep_dims_follow_chains(self):
        poset = boolean_lattice(2)
        complex_ = bar_complex(ideal_rep(principal_ideal(poset, 0)))
        # (), (0),(1),(2), (1,0),(2,0)
        assert complex_.dims == (1, 3, 2)


class TestKoszul:

    @pytest.mark.parametrize("factory", [lambda: boolean_lattice(2), lambda: partition_lattice(3)])
    def test_same_homology_as_bar(self, factory, rng):
        poset = factory()
        for _ in range(3):
            rep = random_functorial_rep(poset, rng)
            koszul = koszul_complex(rep)
            bar = bar_complex(rep)
            assert len(koszul.dims) == len(bar.dims)
            assert homology_dims(koszul) == homology_dims(bar)

    @pytest.mark.slow
    @pytest.mark.parametrize("factory", [lambda: boolean_lattice(4), lambda: partition_lattice(4)])
    def test_same_homology_on_random_reps(self, factory, rng):
        """25 zufällige funktorielle Darstellungen"""
        poset = factory()
        for _ in range(25):
            rep = random_functorial_rep(poset, rng)
            assert homology_dims(koszul_complex(rep)) == homology_dims(bar_complex(rep))

    def test_koszul_is_smaller(self):
        poset = boolean_lattice(3)
        rep = ideal_rep(principal_ideal(poset, 0))
        koszul = koszul_complex(rep)
        bar = bar_complex(rep)
        assert all(k <= b for k, b in zip(koszul.dims, bar.dims))

    def test_requires_upper_cm(self):
        poset = FinitePoset.from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)])
        with pytest.raises(NotUpperCMError):
            koszul_complex(ideal_rep(principal_ideal(poset, 4)))


class TestRepConstruction:

    def test_cover_maps_are_composed(self):
        poset = boolean_lattice(2)
        rep = rep_from_cover_maps(poset, (1, 1, 1, 1), _identity_cover_maps(poset))
        assert rep.map_for(0, 3) == RatMatrix.identity(1)

    def test_non_commuting_square(self):
        poset = boolean_lattice(2)
        maps = _identity_cover_maps(poset, {(2, 3): RatMatrix.from_rows([[2]])})
        with pytest.raises(FunctorialityError):
            rep_from_cover_maps(poset, (1, 1, 1, 1), maps)

    def test_missing_cover(self):
        poset = boolean_lattice(2)
        maps = _identity_cover_maps(poset)
        del maps[(0, 1)]
        with pytest.raises(InvalidInputError):
            rep_from_cover_maps(poset, (1, 1, 1, 1), maps)

    def test_random_reps_are_functorial(self, rng):
        for poset in (boolean_lattice(3), partition_lattice(3)):
            validate_functoriality(random_functorial_rep(poset, rng))

    def test_restrict_to_ideal(self):
        poset = boolean_lattice(2)
        rep = ideal_rep(principal_ideal(poset, 0))
        sub = restrict_rep(rep, [1, 3])
        assert sub.poset.size == 2
        assert sub.poset.top == 1
        assert sub.dim_at == (1, 1)


class TestProducts:

    def test_external_product_dims(self):
        chain = boolean_lattice(1)
        left = ideal_rep(principal_ideal(chain, 0))
        right = ideal_rep(principal_ideal(chain, 1))
        product = external_product(left, right)
        assert product.dim_at == (0, 1, 0, 1)

    def test_multi_bar_of_top_ideals(self):
        chain = boolean_lattice(1)
        top_rep = ideal_rep(principal_ideal(chain, 1))
        product = external_product(top_rep, top_rep)
        homology = homology_dims(multi_bar_complex([chain, chain], product))
        assert homology[0] == 1
        assert sum(homology) == 1

    def test_multi_bar_of_full_ideals_is_exact(self):
        chain = boolean_lattice(1)
        full = ideal_rep(principal_ideal(chain, 0))
        product = external_product(full, full)
        assert is_exact(multi_bar_complex([chain, chain], product))

    def test_size_mismatch(self):
        chain = boolean_lattice(1)
        with pytest.raises(InvalidInputError):
            multi_bar_complex([chain, chain], ideal_rep(principal_ideal(chain, 0)))


class TestPSets:

    def test_decomposition_into_ideals(self):
        poset = boolean_lattice(1)
        ideals = pset_decompose(poset, {1: ["a", "b"], 0: ["a"]}, {(0, 1): {"a": "a"}})
        assert [ideal.sorted_members() for ideal in ideals] == [(0, 1), (1,)]

    def test_word_functor_on_partitions(self):
        """F(p) = Wörter der Länge 3 über {a, b}, die über p faktorisieren; Übergänge sind Inklusionen"""
        poset = partition_lattice(3)
        vectors = set_partitions(3)
        words = ["".join(w) for w in product("ab", repeat=3)]
        f = {x: [w for w in words if factor_word(w, vectors[x]).factors] for x in poset.elements}
        transitions = {(a, b): {w: w for w in f[a]} for a, b in poset.covers()}

        ideals = pset_decompose(poset, f, transitions)

        assert len(ideals) == 8
        for word, ideal in zip(sorted(words), ideals):
            expected = tuple(x for x in poset.elements if factor_word(word, vectors[x]).factors)
            assert ideal.sorted_members() == expected
        # aaa faktorisiert über jede Partition
        assert ideals[0].sorted_members() == tuple(poset.elements)

    def test_non_injective_transition(self):
        poset = boolean_lattice(1)
        with pytest.raises(NonInjectiveTransitionError):
            pset_decompose(poset, {1: ["a", "b"], 0: ["a", "b"]}, {(0, 1): {"a": "a", "b": "a"}})
