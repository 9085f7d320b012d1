"""
Tests für den VerificationCommandHandler
"""
import pytest

from fsopkit.application.commands.verification_commands import (
    ApplyDCommand,
    BarCommand,
    CharCommand,
    ClassFnCommand,
    DfaCommand,
    FsopEvalCommand,
    HilbertCommand,
    InitIdealCommand,
    KdCommand,
    KoszulCommand,
    LanguageIdealCommand,
    LanguagesVerifyCommand,
    LNuCommand,
    MembershipCommand,
    MobiusCommand,
    MultFitCommand,
    PiKCommand,
    SchurCommand,
    SymPairCommand,
    TypeCommand,
    UpperCmCommand,
    WhitneyCommand,
)
from fsopkit.application.handlers.verification_handlers import (
    VerificationCommandHandler,
    exit_code_for,
    parse_element,
)
from fsopkit.domain.exceptions import BoundExceededError, InvalidInputError
from fsopkit.domain.models.report import Verdict, VerificationReport
from fsopkit.domain.models.symfunc import SymFunc
from fsopkit.domain.services.symmetric_functions import basis_element, y_element

ORDERED_LANGUAGE = "ab*a(a*b*)*"


@pytest.fixture
def handler():
    return VerificationCommandHandler()


def _report(verdict: Verdict) -> VerificationReport:
    return VerificationReport(statement_id="upper-cm", verdict=verdict, witness={"x": 1})


class TestHelpers:

    @pytest.mark.parametrize("verdicts,code", [
        ([], 0),
        ([Verdict.PASS], 0),
        ([Verdict.PASS, Verdict.HYPOTHESES_UNMET], 3),
        ([Verdict.HYPOTHESES_UNMET, Verdict.FAIL, Verdict.PASS], 2),
    ])
    def test_exit_code_aggregation(self, verdicts, code):
        assert exit_code_for(_report(v) for v in verdicts) == code

    def test_parse_element(self):
        assert parse_element("s:2,1", 4) == basis_element("s", (2, 1), 4)
        assert parse_element("3", 4) == SymFunc.power_sum((3,), 4)
        assert parse_element("y:2", 4) == y_element(2, 4)

    def test_parse_element_invalid_y(self):
        with pytest.raises(InvalidInputError):
            parse_element("y:x", 4)


class TestPosets:

    def test_whitney_partition(self, handler):
        report = handler.handle_whitney(WhitneyCommand("partition", 4))
        assert report.verdict is Verdict.PASS
        assert report.witness == {"polynomial": "1 -6t +11t^2 -6t^3"}

    def test_whitney_subspace(self, handler):
        report = handler.handle_whitney(WhitneyCommand("subspace", 2, q=2))
        assert report.verdict is Verdict.PASS
        assert report.parameters == {"family": "subspace", "n": 2, "q": 2}

    def test_subspace_needs_q(self, handler):
        with pytest.raises(InvalidInputError):
            handler.handle_whitney(WhitneyCommand("subspace", 2))

    def test_unknown_family(self, handler):
        with pytest.raises(InvalidInputError):
            handler.handle_mobius(MobiusCommand("dihedral", 3))

    def test_bounds_apply(self, handler):
        with pytest.raises(BoundExceededError):
            handler.handle_whitney(WhitneyCommand("partition", 9))

    def test_mobius_partition(self, handler):
        report = handler.handle_mobius(MobiusCommand("partition", 4))
        assert report.verdict is Verdict.PASS
        assert report.witness["elements"] == 15

    def test_upper_cm(self, handler):
        assert handler.handle_upper_cm(UpperCmCommand("boolean", 3)).verdict is Verdict.PASS

    def test_bar_all_elements(self, handler):
        report = handler.handle_bar(BarCommand("partition", 3))
        assert report.verdict is Verdict.PASS
        assert report.witness == {"checked": 4}

    def test_bar_single_element(self, handler):
        report = handler.handle_bar(BarCommand("partition", 3, element="12|3"))
        assert report.verdict is Verdict.PASS
        assert report.parameters["element"] == "12|3"

    def test_bar_top_is_excluded(self, handler):
        with pytest.raises(InvalidInputError):
            handler.handle_bar(BarCommand("partition", 3, element="1|2|3"))

    def test_koszul_random(self, handler):
        report = handler.handle_koszul(KoszulCommand(family="boolean", n=2, samples=2, seed=7))
        assert report.verdict is Verdict.PASS
        assert report.witness == {"checked": 2}

    def test_koszul_rep_file(self, handler, data_dir):
        path = str(data_dir / "reps" / "boolean2_constant.json")
        assert handler.handle_koszul(KoszulCommand(rep_path=path)).verdict is Verdict.PASS

    def test_koszul_needs_a_source(self, handler):
        with pytest.raises(InvalidInputError):
            handler.handle_koszul(KoszulCommand())


class TestFsopModules:

    def test_grothendieck(self, handler, module_path):
        report = handler.handle_fsop_eval(FsopEvalCommand(module_path("sym2"), n=1, d=2))
        assert report.verdict is Verdict.PASS
        assert report.witness["euler_characteristic"] == report.witness["mobius_sum"]

    def test_hilbert(self, handler, module_path):
        report = handler.handle_hilbert(HilbertCommand(module_path("p2"), 6))
        assert report.verdict is Verdict.PASS
        assert report.witness["dims"] == "0,0,2,6,14,30,62"

    def test_kd_exact(self, handler, module_path):
        report = handler.handle_kd(KdCommand(module_path("p1"), d=2, n=1))
        assert report.verdict is Verdict.PASS
        assert report.parameters["complex"] == "koszul"

    def test_kd_generator_degree_too_high(self, handler, module_path):
        report = handler.handle_kd(KdCommand(module_path("p2"), d=2, n=0, bar=True))
        assert report.verdict is Verdict.HYPOTHESES_UNMET

    def test_type_bound(self, handler, module_path):
        report = handler.handle_type(TypeCommand(module_path("p1"), (2,), 3))
        assert report.verdict is Verdict.PASS
        assert report.parameters["slack"] == 1

    def test_type_counterexample(self, handler, module_path):
        report = handler.handle_type(TypeCommand(module_path("p1"), (1,), 1, slack=0))
        assert report.verdict is Verdict.FAIL
        assert report.witness == {"l": [1], "n": 0}

    def test_character_identity(self, handler, module_path):
        report = handler.handle_char(CharCommand(module_path("p1"), d=2, max_n=3))
        assert report.verdict is Verdict.PASS
        assert sorted(report.witness["shapes"]) == ["(1,1)", "(2)"]

    def test_missing_module_file(self, handler, tmp_path):
        with pytest.raises(InvalidInputError):
            handler.handle_hilbert(HilbertCommand(str(tmp_path / "none.json"), 3))


class TestSymmetricFunctions:

    def test_pairing(self, handler):
        report = handler.handle_sym_pair(SymPairCommand("p:2,1", "p:2,1", truncation=4))
        assert report.witness == {"pairing": "2"}

    def test_schur(self, handler):
        report = handler.handle_schur(SchurCommand("p:1,1,1", max_deg=3, truncation=3))
        assert report.witness["schur"] == {"3": "1", "2,1": "2", "1,1,1": "1"}

    def test_kernel(self, handler):
        report = handler.handle_apply_d(ApplyDCommand(1, kernel_max=3, truncation=7))
        assert report.verdict is Verdict.PASS
        assert report.witness == {"checked": 9}

    def test_apply_d_needs_element(self, handler):
        with pytest.raises(InvalidInputError):
            handler.handle_apply_d(ApplyDCommand(1))

    def test_truncation_bound(self, handler):
        with pytest.raises(BoundExceededError):
            handler.handle_sym_pair(SymPairCommand("p:1", "p:1", truncation=17))


class TestCharacterSpace:

    def test_pi_k(self, handler):
        report = handler.handle_pi_k(PiKCommand("p:1", k=1, profile="1", truncation=5, r=2))
        assert report.verdict is Verdict.PASS
        assert report.witness["checks"]["exp_basis_agrees"]

    def test_membership_of_free_module(self, handler, module_path):
        report = handler.handle_membership(MembershipCommand((2,), module_path=module_path("p1"), truncation=5))
        assert report.verdict is Verdict.PASS
        assert report.witness["type_equations"] and report.witness["solution_space"]

    def test_membership_needs_a_source(self, handler):
        with pytest.raises(InvalidInputError):
            handler.handle_membership(MembershipCommand((2,)))

    def test_l_nu(self, handler):
        report = handler.handle_l_nu(LNuCommand("2", "1", r=2, k=2, truncation=5))
        assert report.verdict is Verdict.PASS

    def test_class_function(self, handler):
        report = handler.handle_class_fn(ClassFnCommand("1", "1", max_n=4))
        assert report.verdict is Verdict.PASS
        assert report.witness["values"]["1"] == "1"

    def test_growing_rows(self, handler, module_path):
        report = handler.handle_mult_fit(MultFitCommand(module_path("p1"), truncation=7))
        assert report.verdict is Verdict.PASS
        assert report.witness["series"] == ["0", "1", "1", "1", "1", "1", "1", "1"]


class TestLanguages:

    def test_dfa_structure(self, handler):
        report = handler.handle_dfa(DfaCommand(regex=ORDERED_LANGUAGE, truncate_at=1))
        assert report.verdict is Verdict.PASS
        assert report.witness["length"] == 3
        assert report.witness["automaton"]["states"] == 4

    def test_unordered_dfa(self, handler):
        report = handler.handle_dfa(DfaCommand(regex="(ab)*"))
        assert report.verdict is Verdict.HYPOTHESES_UNMET
        assert report.witness["ordered"] is False

    def test_exactly_one_source(self, handler, tmp_path):
        with pytest.raises(InvalidInputError):
            handler.handle_dfa(DfaCommand(regex="a", dfa_path=str(tmp_path / "dfa.json")))
        with pytest.raises(InvalidInputError):
            handler.handle_dfa(DfaCommand())

    def test_language_ideal(self, handler):
        report = handler.handle_language_ideal(LanguageIdealCommand("abba", regex=ORDERED_LANGUAGE))
        assert report.verdict is Verdict.PASS
        assert report.witness == {"ideal": ["1|23|4", "1|2|3|4"], "quotient_words": ["abba", "aba"]}

    def test_language_ideal_not_closed(self, handler):
        report = handler.handle_language_ideal(LanguageIdealCommand("aa", regex="a", alphabet="a"))
        assert report.verdict is Verdict.FAIL
        assert "not_upward_closed" in report.witness

    def test_languages_exact(self, handler):
        report = handler.handle_languages_verify(LanguagesVerifyCommand(("aa",), regex="a*", alphabet="a"))
        assert report.verdict is Verdict.PASS
        assert report.witness["homology"] == [0] * len(report.witness["homology"])

    def test_languages_hypotheses_unmet(self, handler):
        report = handler.handle_languages_verify(LanguagesVerifyCommand(("a",), regex="a*", alphabet="a"))
        assert report.verdict is Verdict.HYPOTHESES_UNMET
        assert report.witness["hypotheses"]["l_r >= d + 1"] is False

    def test_languages_unordered(self, handler):
        report = handler.handle_languages_verify(LanguagesVerifyCommand(("ab", "ab"), regex="(ab)*"))
        assert report.verdict is Verdict.HYPOTHESES_UNMET
        assert report.witness == {"ordered": False}

    def test_init_ideal(self, handler, module_path):
        order_report, module_report = handler.handle_init_ideal(
            InitIdealCommand(module_path("sym2"), 3, order_max_d=2, order_max_n=4)
        )
        assert order_report.verdict is Verdict.PASS
        assert module_report.verdict is Verdict.PASS
        assert module_report.witness["init"]["2"] == ["21"]
        assert module_report.witness["init"]["3"] == ["211", "212", "221"]
