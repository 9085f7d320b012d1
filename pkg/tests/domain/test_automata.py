"""
Tests für reguläre Ausdrücke, minimale DFAs und geordnete Automaten
"""
import json

import pytest

from fsopkit.domain.exceptions import InvalidInputError, RegexSyntaxError
from fsopkit.domain.models.automata import Dfa, DfaPayload
from fsopkit.domain.services.automata import (
    connected_part,
    dfa_accepts,
    dfa_length,
    find_star_violation,
    minimize,
    parse_dfa,
    parse_regex,
    reachability_order,
    star_property_check,
    truncate_dfa,
    words_up_to,
)

ORDERED_LANGUAGE = "ab*a(a*b*)*"


class TestRegex:

    @pytest.mark.parametrize("word,accepted", [
        ("aa", True),
        ("abba", True),
        ("abbab", True),
        ("ab", False),
        ("ba", False),
        ("", False),
    ])
    def test_membership(self, word, accepted):
        assert dfa_accepts(parse_regex(ORDERED_LANGUAGE), word) is accepted

    def test_minimal_state_counts(self):
        assert parse_regex("a*").state_count == 2
        assert parse_regex(ORDERED_LANGUAGE).state_count == 4
        assert parse_regex("(a|b)*").state_count == 1

    def test_union_and_epsilon(self):
        dfa = parse_regex("a|", "a")
        assert dfa.accepts_word("") and dfa.accepts_word("a")
        assert not dfa.accepts_word("aa")

    @pytest.mark.parametrize("expr,position", [("(a", 0), ("*a", 0), ("ac", 1), ("a)", 1)])
    def test_syntax_errors(self, expr, position):
        with pytest.raises(RegexSyntaxError) as info:
            parse_regex(expr)
        assert info.value.position == position

    def test_operator_in_alphabet(self):
        with pytest.raises(InvalidInputError):
            parse_regex("a", "a|")


class TestDfaFormat:

    def test_payload_with_alphabet_size(self):
        payload = {"states": 2, "alphabet": 2, "delta": [[1, 0], [1, 1]], "accepts": [1]}
        dfa = parse_dfa(json.dumps(payload))
        assert dfa.alphabet == ("a", "b")
        assert dfa.accepts_word("ba")
        assert DfaPayload.from_dfa(dfa).to_dfa() == dfa

    def test_row_count_mismatch(self):
        with pytest.raises(InvalidInputError):
            parse_dfa({"states": 2, "alphabet": 1, "delta": [[0]]})

    def test_partial_transition_function(self):
        with pytest.raises(InvalidInputError):
            Dfa(("a", "b"), ((0,),))

    def test_invalid_json(self):
        with pytest.raises(InvalidInputError):
            parse_dfa("[")


class TestMinimize:

    def test_equivalent_states_merge(self):
        dfa = Dfa(("a",), ((1,), (2,), (2,)), 0, frozenset({0, 1, 2}))
        assert minimize(dfa).state_count == 1

    def test_unreachable_states_are_dropped(self):
        dfa = Dfa(("a",), ((0,), (0,)), 0, frozenset({1}))
        assert connected_part(dfa).state_count == 1

    def test_language_is_preserved(self):
        dfa = Dfa(("a", "b"), ((1, 2), (3, 2), (3, 2), (3, 3)), 0, frozenset({2}))
        small = minimize(dfa)
        for word in words_up_to(("a", "b"), 4):
            assert small.accepts_word(word) == dfa.accepts_word(word)


class TestOrderedDfa:

    def test_ordered_language(self):
        ordered = reachability_order(parse_regex(ORDERED_LANGUAGE))
        assert ordered is not None
        assert ordered.length == 3
        assert dfa_length(ordered) == 3

    def test_cycle_is_not_ordered(self):
        dfa = parse_regex("(ab)*")
        assert reachability_order(dfa) is None
        with pytest.raises(InvalidInputError):
            dfa_length(dfa)

    def test_truncate(self):
        ordered = reachability_order(parse_regex(ORDERED_LANGUAGE))
        after_a = ordered.dfa.step(ordered.dfa.start, "a")
        truncated = truncate_dfa(ordered, after_a)
        assert truncated.length == 2
        assert truncated.dfa.accepts_word("bba")
        assert not truncated.dfa.accepts_word("b")

    def test_truncate_outside(self):
        ordered = reachability_order(parse_regex("a*"))
        with pytest.raises(InvalidInputError):
            truncate_dfa(ordered, 5)


class TestStarProperty:

    def test_holds_for_ordered_language(self):
        assert star_property_check(parse_regex(ORDERED_LANGUAGE), 6)
        assert star_property_check(parse_regex("a*"), 6)

    def test_single_letter_language(self):
        assert find_star_violation(parse_regex("a"), 3) == ("a", "aa")
        assert not star_property_check(parse_regex("a"), 3)
