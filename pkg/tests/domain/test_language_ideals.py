"""
Tests für Sprachideale, Exaktheit geordneter Sprachen und Initialideale
"""
from itertools import product

import pytest

from fsopkit.domain.exceptions import BoundExceededError, InvalidInputError
from fsopkit.domain.models.automata import Dfa
from fsopkit.domain.models.fsop import SurjWord
from fsopkit.domain.services.automata import find_star_violation, minimize, parse_regex, reachability_order
from fsopkit.domain.services.fsop_modules import free_presentation
from fsopkit.domain.services.language_ideals import (
    assoc_graded_check,
    check_order_axiom,
    factor_word,
    filtration_jumps,
    ideal_I,
    ideal_J,
    init_ideal,
    os_word_order,
    product_embedding,
    verify_languages_theorem,
)

ORDERED_LANGUAGE = "ab*a(a*b*)*"


def _words(*texts):
    return tuple(SurjWord.parse(t) for t in texts)


def _small_ordered_automata(alphabet, max_states=3, star_bound=6):
    """Alle minimalen geordneten DFAs mit höchstens max_states Zuständen und (*) bis star_bound"""
    found = {}
    for states in range(1, max_states + 1):
        rows = list(product(range(states), repeat=len(alphabet)))
        for delta in product(rows, repeat=states):
            for flags in product((False, True), repeat=states):
                accepts = frozenset(s for s, flag in enumerate(flags) if flag)
                minimal = minimize(Dfa(tuple(alphabet), delta, 0, accepts))
                if minimal in found:
                    continue
                found[minimal] = reachability_order(minimal)
    return [
        ordered for ordered in found.values()
        if ordered is not None and find_star_violation(ordered, star_bound) is None
    ]


@pytest.fixture(scope="module")
def ordered_family():
    return _small_ordered_automata("a") + _small_ordered_automata("ab")


def _random_words(rng, ordered):
    """r ∈ [Länge, 3] zufällige Wörter, ℓ_t = d und ℓ_r = d + 1"""
    d = len(ordered.dfa.alphabet)
    r = rng.randint(ordered.length, 3)
    lengths = [d] * (r - 1) + [d + 1]
    return ["".join(rng.choice(ordered.dfa.alphabet) for _ in range(n)) for n in lengths]


@pytest.fixture
def ordered_language():
    return reachability_order(parse_regex(ORDERED_LANGUAGE))


class TestFactorization:

    def test_constant_blocks(self):
        assert factor_word("abba", (0, 1, 1, 0)).quotient == "ab"
        assert factor_word("abba", (0, 1, 2, 0)).quotient == "abb"

    def test_mixed_block(self):
        factorization = factor_word("abba", (0, 0, 1, 1))
        assert not factorization.factors
        assert factorization.quotient is None

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            factor_word("ab", (0, 1, 2))


class TestIdeals:

    def test_ideal_of_abba(self, ordered_language):
        ideal = ideal_I("abba", ordered_language)
        assert ideal.labels() == ("1|23|4", "1|2|3|4")

    def test_product_embedding(self):
        assert product_embedding([2, 2]) == (3, 4, 13, 14)

    def test_product_ideal(self, ordered_language):
        ideal = ideal_J(["ab", "ba"], ordered_language)
        assert ideal.poset.size == 4
        assert ideal.labels() == ("(1|2, 1|2)",)

    def test_total_length_bound(self, ordered_language):
        with pytest.raises(BoundExceededError):
            ideal_J(["ababab", "ababa"], ordered_language)

    def test_no_words(self, ordered_language):
        with pytest.raises(InvalidInputError):
            ideal_J([], ordered_language)


class TestOrderedLanguages:

    def test_hypotheses_met_and_exact(self):
        ordered = reachability_order(parse_regex("a*", "a"))
        result = verify_languages_theorem(ordered, ["aa"])
        assert result.automaton_length == 1
        assert result.hypotheses_met
        assert result.ideal_size == 2
        assert result.exact

    def test_short_last_word(self):
        ordered = reachability_order(parse_regex("a*", "a"))
        result = verify_languages_theorem(ordered, ["a"])
        assert not result.hypotheses["l_r >= d + 1"]
        assert not result.exact

    def test_star_witness_is_reported(self):
        ordered = reachability_order(parse_regex("a", "a"))
        result = verify_languages_theorem(ordered, ["a"])
        assert result.star_witness == ("a", "aa")
        assert not result.hypotheses["star property"]

    def test_letter_outside_alphabet(self, ordered_language):
        with pytest.raises(InvalidInputError):
            verify_languages_theorem(ordered_language, ["ac"])

    @pytest.mark.slow
    def test_three_words(self, ordered_language):
        result = verify_languages_theorem(ordered_language, ["ab", "ab", "aba"])
        assert result.automaton_length == 3
        assert result.hypotheses_met
        assert result.ideal_size == 2
        assert result.exact

    @pytest.mark.slow
    def test_sampled_family_is_exact(self, ordered_family, rng):
        """Zufallsauswahl aus allen geordneten DFAs mit ≤ 3 Zuständen über {a} und {a, b}"""
        assert ordered_family
        for _ in range(30):
            ordered = rng.choice(ordered_family)
            words = _random_words(rng, ordered)
            result = verify_languages_theorem(ordered, words, star_bound=6)
            assert result.hypotheses_met, (ordered.dfa, words)
            assert result.exact, (ordered.dfa, words, result.homology)

    @pytest.mark.slow
    def test_short_last_word_can_break_exactness(self, ordered_family):
        # ℓ_r = d verletzt die Hypothesen, mindestens ein Fall hat Homologie
        nonexact = []
        for ordered in ordered_family[:20]:
            d = len(ordered.dfa.alphabet)
            words = [ordered.dfa.alphabet[0] * d] * ordered.length
            result = verify_languages_theorem(ordered, words, star_bound=4)
            assert not result.hypotheses["l_r >= d + 1"]
            if not result.exact:
                nonexact.append(words)
        assert nonexact


class TestWordOrder:

    def test_lexicographic(self):
        u, v = _words("12", "21")
        assert os_word_order(u, v) == -1
        assert os_word_order(v, u) == 1
        assert os_word_order(u, u) == 0

    @pytest.mark.parametrize("left,right", [("1", "12"), ("11", "12")])
    def test_incomparable_words(self, left, right):
        with pytest.raises(InvalidInputError):
            os_word_order(SurjWord.parse(left), SurjWord.parse(right))

    def test_compatible_with_ordered_surjections(self):
        assert check_order_axiom(3, 5)


class TestInitialIdeals:

    def test_symmetric_quotient(self, sym2):
        initial = init_ideal(sym2, 3)
        assert initial[0] == () and initial[1] == ()
        assert initial[2] == _words("21")
        assert initial[3] == _words("211", "212", "221")

    def test_filtration_jumps(self, sym2):
        assert filtration_jumps(sym2, 2) == _words("21")
        assert filtration_jumps(sym2, 3) == _words("211", "212", "221")

    def test_associated_graded(self, sym2, p2_rel3):
        assert assoc_graded_check(sym2, 3)
        assert assoc_graded_check(p2_rel3, 3)
        assert init_ideal(p2_rel3, 3)[3] == _words("121")

    def test_only_ordered_precomposition(self, p2_rel3):
        # 211 wäre Leitwort von (112 - 121)∘(213), 213 ist aber nicht geordnet
        initial = init_ideal(p2_rel3, 4)
        assert initial[3] == _words("121")
        assert initial[4] == _words("1121", "1122", "1211", "1212", "1221")
        assert filtration_jumps(p2_rel3, 4) == initial[4]
        assert assoc_graded_check(p2_rel3, 4)

    def test_free_module_has_no_initial_words(self, p2):
        assert all(words == () for words in init_ideal(p2, 3).values())

    def test_several_generators(self):
        with pytest.raises(InvalidInputError):
            init_ideal(free_presentation(1, 2), 2)
