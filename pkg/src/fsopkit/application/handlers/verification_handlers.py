"""
Command Handlers für fsopkit
Handlers lesen Eingaben, rufen die Domain-Services und bauen VerificationReports
"""
import random
from math import factorial, prod
from typing import Dict, Iterable, List, Optional

import structlog

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
    PosetFamilyCommand,
    SchurCommand,
    SymPairCommand,
    TypeCommand,
    UpperCmCommand,
    WhitneyCommand,
)
from fsopkit.domain.exceptions import InvalidInputError, PosetStructureError
from fsopkit.domain.models.automata import Dfa, DfaPayload, OrderedDfa
from fsopkit.domain.models.charspace import ClassFnSpec, ExpProfile
from fsopkit.domain.models.linalg import format_rat
from fsopkit.domain.models.poset import FinitePoset, IntPolynomial
from fsopkit.domain.models.report import EXIT_CODES, Verdict, VerificationReport
from fsopkit.domain.models.rep import PosetIdeal
from fsopkit.domain.models.symfunc import Partition, SymFunc
from fsopkit.domain.policies.enumeration_bounds import BoundsPolicy
from fsopkit.domain.services import automata, language_ideals
from fsopkit.domain.services.bar_construction import (
    bar_complex,
    ideal_rep,
    koszul_complex,
    principal_ideal,
    random_functorial_rep,
)
from fsopkit.domain.services.character_space import (
    E_monomial,
    L_nu,
    class_fn_eval,
    eps_k,
    exp_profile,
    find_type_equation_violation,
    h_series_closed_form,
    h_series_of_L,
    in_F_leq_k,
    in_V_Ar,
    multiplicity_series,
    part_rk,
    pi_k,
    rational_fit,
    solution_space_check,
    translation_check,
)
from fsopkit.domain.services.exactla import euler_characteristic, homology_dims
from fsopkit.domain.services.fsop_modules import (
    bd_complex_at,
    character_of_bd,
    evaluate_degree,
    find_type_counterexample,
    frobenius_character,
    grothendieck_sum,
    hilbert_dims,
    kd_complex_at,
    verify_rational_tail,
    whitney_denominator,
)
from fsopkit.domain.services.lattices import (
    blocks_of,
    boolean_lattice,
    partition_lattice,
    set_partitions,
    subspace_lattice,
)
from fsopkit.domain.services.poset_topology import (
    is_upper_cm,
    mobius,
    mobius_recursive,
    reduced_mobius,
    whitney_polynomial,
)
from fsopkit.domain.services.symmetric_functions import (
    apply_binom_D,
    apply_D,
    basis_element,
    hall_pair,
    partitions_up_to,
    power_sum_from_y,
    schur_expansion,
    y_element,
)
from fsopkit.domain.services.u_quotient import pi_k_exp_basis
from fsopkit.infrastructure.config.settings import RunConfig
from fsopkit.infrastructure.serialization.json_io import (
    load_dfa,
    load_presentation,
    load_rep,
    load_symfunc,
    partition_key,
)

logger = structlog.get_logger(__name__)

FAMILIES = ("partition", "boolean", "subspace")


def exit_code_for(reports: Iterable[VerificationReport]) -> int:
    """fail vor hypotheses-unmet vor pass"""
    verdicts = {report.verdict for report in reports}
    if Verdict.FAIL in verdicts:
        return EXIT_CODES[Verdict.FAIL]
    if Verdict.HYPOTHESES_UNMET in verdicts:
        return EXIT_CODES[Verdict.HYPOTHESES_UNMET]
    return EXIT_CODES[Verdict.PASS]


def parse_element(text: str, n: int) -> SymFunc:
    """"kind:index" wie "s:2,1", "p:3" oder "y:2" (ohne Präfix: p)"""
    kind, _, index = text.strip().rpartition(":")
    kind = kind or "p"
    if kind == "y":
        try:
            return basis_element("y", int(index), n)
        except ValueError as exc:
            raise InvalidInputError(f"y verlangt eine natürliche Zahl: '{text}'") from exc
    return basis_element(kind, Partition.parse(index), n)


def _coefficients(f: SymFunc) -> Dict[str, str]:
    return {partition_key(k): format_rat(v) for k, v in f.items()}


class VerificationCommandHandler:
    """Handler für alle Verifikations-Commands"""

    def __init__(self, config: RunConfig = None):
        """
        Args:
            config: RunConfig (Abschneidegrad, Fenster, Grenzen)
        """
        self.config = config or RunConfig()
        self.bounds = self.config.bounds
        self.policy = BoundsPolicy(self.bounds)

    # -------------------------------------------------
    # Hilfen
    # -------------------------------------------------

    def _report(
        self,
        statement_id: str,
        parameters: Dict,
        verdict: Verdict,
        witness: Optional[Dict] = None,
    ) -> VerificationReport:
        report = VerificationReport(
            statement_id=statement_id,
            parameters=parameters,
            verdict=verdict,
            witness=witness or {},
        )
        logger.info("verification_finished", statement=statement_id, verdict=verdict.value)
        return report

    @staticmethod
    def _verdict(ok: bool) -> Verdict:
        return Verdict.PASS if ok else Verdict.FAIL

    def _truncation(self, requested: Optional[int]) -> int:
        n = requested if requested is not None else self.config.truncation_degree
        self.policy.require("N", n, self.bounds.symfunc_max_degree)
        return n

    def _family(self, command: PosetFamilyCommand) -> FinitePoset:
        if command.family == "partition":
            return partition_lattice(command.n, self.bounds)
        if command.family == "boolean":
            return boolean_lattice(command.n, self.bounds)
        if command.family == "subspace":
            if command.q is None:
                raise InvalidInputError("Familie subspace verlangt q")
            return subspace_lattice(command.q, command.n, self.bounds)
        raise InvalidInputError(f"Unbekannte Familie '{command.family}' (erlaubt: {', '.join(FAMILIES)})")

    @staticmethod
    def _family_parameters(command: PosetFamilyCommand) -> Dict:
        parameters = {"family": command.family, "n": command.n}
        if command.family == "subspace":
            parameters["q"] = command.q
        return parameters

    def _automaton(self, regex: Optional[str], dfa_path: Optional[str], alphabet: str) -> Dfa:
        if (regex is None) == (dfa_path is None):
            raise InvalidInputError("Genau eine Quelle angeben: Regex oder DFA-Datei")
        if regex is not None:
            return automata.parse_regex(regex, alphabet)
        return automata.minimize(load_dfa(dfa_path))

    # -------------------------------------------------
    # Posets
    # -------------------------------------------------

    def handle_whitney(self, command: WhitneyCommand) -> VerificationReport:
        """W_P(t) gegen die Produktform der Familie"""
        poset = self._family(command)
        computed = whitney_polynomial(poset)
        if command.family == "partition":
            expected = IntPolynomial.linear_product(range(1, command.n))
        elif command.family == "boolean":
            expected = IntPolynomial.linear_product([1] * command.n)
        else:
            expected = IntPolynomial.linear_product(command.q ** i for i in range(command.n))
        witness = {"polynomial": str(computed)}
        if computed != expected:
            witness["expected"] = str(expected)
        return self._report(
            "whitney-closed-form",
            self._family_parameters(command),
            self._verdict(computed == expected),
            witness,
        )

    def handle_mobius(self, command: MobiusCommand) -> VerificationReport:
        """Homologische gegen rekursive Möbius-Funktion, auf P(n) zusätzlich μ̃ = ∏ (|b| - 1)!"""
        poset = self._family(command)
        mismatches: List[str] = []
        for x in poset.elements:
            if mobius(poset, x) != mobius_recursive(poset, x):
                mismatches.append(poset.label(x))
        if command.family == "partition":
            vectors = set_partitions(command.n)
            for x in poset.elements:
                expected = prod(factorial(len(block) - 1) for block in blocks_of(vectors[x]))
                if reduced_mobius(poset, x) != expected:
                    mismatches.append(f"μ̃({poset.label(x)})")
        bottom = max(poset.elements, key=lambda x: len(poset.above(x)))
        witness = {"elements": poset.size, "mobius_bottom": mobius(poset, bottom)}
        if mismatches:
            witness["mismatches"] = mismatches
        return self._report(
            "mobius-homological", self._family_parameters(command), self._verdict(not mismatches), witness
        )

    def handle_upper_cm(self, command: UpperCmCommand) -> VerificationReport:
        poset = self._family(command)
        ok = is_upper_cm(poset)
        witness = {"elements": poset.size}
        if not ok:
            witness["upper_cm"] = False
        return self._report("upper-cm", self._family_parameters(command), self._verdict(ok), witness)

    # -------------------------------------------------
    # Darstellungen
    # -------------------------------------------------

    def handle_bar(self, command: BarCommand) -> VerificationReport:
        """B_P(kP_{≥x}) exakt für x ≠ 1̂"""
        poset = self._family(command)
        if command.element is not None:
            element = poset.index_of(command.element)
            if element == poset.top:
                raise InvalidInputError("x = 1̂ ist ausgeschlossen")
            elements = [element]
        else:
            elements = [x for x in poset.elements if x != poset.top]
        parameters = self._family_parameters(command)
        if command.element is not None:
            parameters["element"] = command.element
        for x in elements:
            homology = homology_dims(bar_complex(ideal_rep(principal_ideal(poset, x))))
            if any(homology):
                return self._report(
                    "principal-ideal-exact",
                    parameters,
                    Verdict.FAIL,
                    {"element": poset.label(x), "homology": list(homology)},
                )
        return self._report("principal-ideal-exact", parameters, Verdict.PASS, {"checked": len(elements)})

    def handle_koszul(self, command: KoszulCommand) -> VerificationReport:
        """H(K_P(M)) = H(B_P(M)) für eine Datei-Darstellung oder zufällige Subquotienten"""
        if command.rep_path is not None:
            reps = [load_rep(command.rep_path)]
            parameters: Dict = {"rep": command.rep_path}
        else:
            if command.family is None or command.n is None:
                raise InvalidInputError("Familie und n oder eine Darstellungsdatei angeben")
            family = PosetFamilyCommand(command.family, command.n, command.q)
            poset = self._family(family)
            rng = random.Random(command.seed)
            reps = [random_functorial_rep(poset, rng) for _ in range(command.samples)]
            parameters = {**self._family_parameters(family), "samples": command.samples, "seed": command.seed}
        for index, rep in enumerate(reps):
            koszul = homology_dims(koszul_complex(rep))
            bar = homology_dims(bar_complex(rep))
            width = max(len(koszul), len(bar))
            padded_k = list(koszul) + [0] * (width - len(koszul))
            padded_b = list(bar) + [0] * (width - len(bar))
            if padded_k != padded_b:
                return self._report(
                    "koszul-bar-comparison",
                    parameters,
                    Verdict.FAIL,
                    {"sample": index, "koszul": padded_k, "bar": padded_b},
                )
        return self._report("koszul-bar-comparison", parameters, Verdict.PASS, {"checked": len(reps)})

    # -------------------------------------------------
    # FS^op-Moduln
    # -------------------------------------------------

    def handle_fsop_eval(self, command: FsopEvalCommand) -> VerificationReport:
        """dim M_n und χ(B_d(M)_n) = Σ μ(p) dim M_{n + #Blöcke(p)}"""
        module = load_presentation(command.module_path)
        evaluation = evaluate_degree(module, command.n, self.bounds)
        euler = euler_characteristic(bd_complex_at(module, command.d, command.n, self.bounds))
        expected = grothendieck_sum(module, command.d, command.n, self.bounds)
        witness = {
            "free_dim": evaluation.free_dim,
            "quotient_dim": evaluation.quotient_dim,
            "euler_characteristic": euler,
            "mobius_sum": expected,
        }
        parameters = {"module": command.module_path, "n": command.n, "d": command.d}
        return self._report("grothendieck-identity", parameters, self._verdict(euler == expected), witness)

    def handle_hilbert(self, command: HilbertCommand) -> VerificationReport:
        """dim M_0..M_max und Fenster-Test gegen ∏_{j ≤ g} (1 - jt)"""
        module = load_presentation(command.module_path)
        dims = hilbert_dims(module, command.max_n, self.bounds)
        g = module.max_generator_degree
        denominator = whitney_denominator(g)
        ok = verify_rational_tail(dims, denominator, g + 1)
        witness = {"dims": ",".join(str(d) for d in dims), "denominator": str(denominator)}
        parameters = {"module": command.module_path, "max": command.max_n}
        return self._report("hilbert-rationality", parameters, self._verdict(ok), witness)

    def handle_kd(self, command: KdCommand) -> VerificationReport:
        """K_d(M)_n (bzw. B_d) exakt, falls M in Grad < d erzeugt ist"""
        module = load_presentation(command.module_path)
        if command.bar:
            complex_ = bd_complex_at(module, command.d, command.n, self.bounds)
        else:
            complex_ = kd_complex_at(module, command.d, command.n, self.bounds)
        homology = homology_dims(complex_)
        witness = {"dims": list(complex_.dims), "homology": list(homology)}
        parameters = {
            "module": command.module_path,
            "d": command.d,
            "n": command.n,
            "complex": "bar" if command.bar else "koszul",
        }
        if module.max_generator_degree >= command.d:
            return self._report("fsop-exactness", parameters, Verdict.HYPOTHESES_UNMET, witness)
        return self._report("fsop-exactness", parameters, self._verdict(not any(homology)), witness)

    def handle_type(self, command: TypeCommand) -> VerificationReport:
        module = load_presentation(command.module_path)
        slack = command.slack if command.slack is not None else self.config.slack
        counterexample = find_type_counterexample(
            module, command.j, range(command.max_n + 1), slack, self.bounds
        )
        parameters = {
            "module": command.module_path,
            "j": list(command.j),
            "max_n": command.max_n,
            "slack": slack,
        }
        if counterexample is None:
            return self._report("type-bound", parameters, Verdict.PASS, {"window": [0, command.max_n]})
        ls, n = counterexample
        return self._report("type-bound", parameters, Verdict.FAIL, {"l": list(ls), "n": n})

    def handle_char(self, command: CharCommand) -> VerificationReport:
        """ch(B_d M)[λ] = (D über λ) ch(M) für alle λ ⊢ d"""
        module = load_presentation(command.module_path)
        by_shape = character_of_bd(module, command.d, command.max_n, self.bounds)
        character = frobenius_character(module, command.max_n + command.d, self.bounds)
        mismatches = [
            str(shape)
            for shape, value in by_shape.items()
            if value != apply_binom_D(shape, character)
        ]
        witness: Dict = {"shapes": [str(shape) for shape in by_shape]}
        if mismatches:
            witness["mismatches"] = mismatches
        parameters = {"module": command.module_path, "d": command.d, "max": command.max_n}
        return self._report("character-identity", parameters, self._verdict(not mismatches), witness)

    # -------------------------------------------------
    # Symmetrische Funktionen
    # -------------------------------------------------

    def handle_sym_pair(self, command: SymPairCommand) -> VerificationReport:
        n = self._truncation(command.truncation)
        value = hall_pair(parse_element(command.left, n), parse_element(command.right, n))
        parameters = {"left": command.left, "right": command.right, "N": n}
        return self._report("symfun-evaluation", parameters, Verdict.PASS, {"pairing": format_rat(value)})

    def handle_schur(self, command: SchurCommand) -> VerificationReport:
        n = self._truncation(command.truncation)
        if command.symfunc_path is not None:
            f = load_symfunc(command.symfunc_path)
            source = command.symfunc_path
        else:
            f = parse_element(command.element, n)
            source = command.element
        expansion = schur_expansion(f, command.max_deg)
        witness = {
            "schur": {partition_key(k): format_rat(v) for k, v in expansion.items() if v},
        }
        parameters = {"element": source, "max_deg": command.max_deg, "N": f.truncation_degree}
        return self._report("symfun-evaluation", parameters, Verdict.PASS, witness)

    def handle_apply_d(self, command: ApplyDCommand) -> VerificationReport:
        """D_n(f) oder, mit kernel_max, D_n(y_m) = δ und p_n = Σ μ(d)/d y_{nd}"""
        n = self._truncation(command.truncation)
        if command.kernel_max is None:
            if command.element is None:
                raise InvalidInputError("Element oder Kernprüfung angeben")
            result = apply_D(command.index, parse_element(command.element, n))
            parameters = {"index": command.index, "element": command.element, "N": n}
            return self._report(
                "symfun-evaluation", parameters, Verdict.PASS, {"result": _coefficients(result)}
            )

        failures: List[str] = []
        top = min(command.kernel_max, n)
        for i in range(1, top + 1):
            for j in range(1, top + 1):
                value = apply_D(i, y_element(j, n))
                expected = SymFunc.one(n - i) if i == j else SymFunc.zero(n - i)
                if value != expected:
                    failures.append(f"D_{i}(y_{j})")
            if power_sum_from_y(i, n) != SymFunc.power_sum((i,), n):
                failures.append(f"p_{i}")
        parameters = {"kernel_max": command.kernel_max, "N": n}
        witness: Dict = {"checked": top ** 2}
        if failures:
            witness["failures"] = failures
        return self._report("symfun-kernel", parameters, self._verdict(not failures), witness)

    # -------------------------------------------------
    # Charakterraum
    # -------------------------------------------------

    def handle_pi_k(self, command: PiKCommand) -> VerificationReport:
        """π_k(f · exp(Σ a_i y_i)) mit Projektions- und V_{A,r}-Eigenschaften"""
        n = self._truncation(command.truncation)
        profile = ExpProfile.parse(command.profile)
        f = parse_element(command.element, n) * exp_profile(profile, n)
        projected = pi_k(f, command.k)
        checks = {
            "eps_k_preserved": eps_k(projected, command.k) == eps_k(f, command.k),
            "idempotent": pi_k(projected, command.k) == projected,
            "in_F_leq_k": in_F_leq_k(projected, command.k),
        }
        if command.r is not None:
            checks["in_V_Ar"] = in_V_Ar(projected, profile, command.r)
            kind, _, index = command.element.rpartition(":")
            nu = Partition.parse(index)
            if kind in ("", "p") and nu in part_rk(command.r, command.k) and profile.size <= command.k:
                checks["exp_basis_agrees"] = (
                    pi_k_exp_basis(nu, profile, command.r, command.k, n) == projected
                )
        witness = {"checks": checks, "result": _coefficients(projected)}
        parameters = {
            "element": command.element,
            "profile": str(profile),
            "k": command.k,
            "N": n,
        }
        if command.r is not None:
            parameters["r"] = command.r
        return self._report("pi-k-projection", parameters, self._verdict(all(checks.values())), witness)

    def handle_membership(self, command: MembershipCommand) -> VerificationReport:
        """Typ-Gleichungen und Lösungsraum müssen übereinstimmen"""
        n = self._truncation(command.truncation)
        if command.module_path is not None:
            f = frobenius_character(load_presentation(command.module_path), n, self.bounds)
            source = command.module_path
        elif command.symfunc_path is not None:
            f = load_symfunc(command.symfunc_path)
            source = command.symfunc_path
        elif command.element is not None:
            f = parse_element(command.element, n) * exp_profile(ExpProfile.parse(command.profile), n)
            source = f"{command.element} exp({command.profile})"
        else:
            raise InvalidInputError("Modul, Datei oder Element angeben")
        slack = command.slack if command.slack is not None else self.config.slack
        violation = find_type_equation_violation(f, command.j, slack)
        in_solution_space = solution_space_check(f, command.j)
        witness: Dict = {
            "type_equations": violation is None,
            "solution_space": in_solution_space,
        }
        if violation is not None:
            witness["violation"] = [str(shape) for shape in violation]
        parameters = {"source": source, "j": list(command.j), "N": f.truncation_degree, "slack": slack}
        agrees = (violation is None) == in_solution_space
        return self._report("type-bound", parameters, self._verdict(agrees), witness)

    def handle_l_nu(self, command: LNuCommand) -> VerificationReport:
        """⟨E_λ, L_ν⟩ = δ_{λν} auf Part(r,k) und ⟨h_m, L_ν⟩ gegen die geschlossene Form"""
        n = self._truncation(command.truncation)
        nu = Partition.parse(command.nu)
        profile = ExpProfile.parse(command.profile)
        element = L_nu(nu, profile, command.r, command.k, n)
        wrong_pairings: List[str] = []
        for shape in part_rk(command.r, command.k):
            if shape.size > n:
                continue
            value = hall_pair(E_monomial(profile, shape, n), element)
            if value != (1 if shape == nu else 0):
                wrong_pairings.append(f"{shape}: {format_rat(value)}")
        series = h_series_of_L(nu, profile, command.r, command.k, n)
        closed = h_series_closed_form(nu, profile, n)
        witness: Dict = {"h_series": [format_rat(v) for v in series]}
        if wrong_pairings:
            witness["wrong_pairings"] = wrong_pairings
        if series != closed:
            witness["h_closed_form"] = [format_rat(v) for v in closed]
        parameters = {"nu": str(nu), "profile": str(profile), "r": command.r, "k": command.k, "N": n}
        ok = not wrong_pairings and series == closed
        return self._report("l-nu-duality", parameters, self._verdict(ok), witness)

    def handle_class_fn(self, command: ClassFnCommand) -> VerificationReport:
        max_n = self._truncation(command.max_n)
        spec = ClassFnSpec(Partition.parse(command.nu), ExpProfile.parse(command.profile))
        ok = translation_check(spec, max_n)
        sample_size = min(max_n, 3)
        values = {
            partition_key(mu): format_rat(class_fn_eval(spec, mu)) for mu in partitions_up_to(sample_size)
        }
        parameters = {"nu": str(spec.nu), "profile": str(spec.profile), "max_n": max_n}
        return self._report(
            "class-function-translation", parameters, self._verdict(ok), {"values": values}
        )

    def handle_mult_fit(self, command: MultFitCommand) -> VerificationReport:
        """⟨s_{(n,λ)}, ch M⟩ als rationale Reihe mit Einheitswurzel-Nenner"""
        n = self._truncation(command.truncation)
        module = load_presentation(command.module_path)
        shape = Partition.parse(command.shape)
        character = frobenius_character(module, n, self.bounds)
        series = multiplicity_series(character, shape, n - shape.size)
        fit = rational_fit(series, command.denom_degree, command.root_orders)
        witness: Dict = {"series": [format_rat(v) for v in series]}
        if fit is not None:
            numerator, denominator = fit
            witness["numerator"] = [format_rat(v) for v in numerator]
            witness["denominator"] = str(denominator)
        parameters = {
            "module": command.module_path,
            "shape": str(shape),
            "N": n,
            "denom_degree": command.denom_degree,
            "root_orders": command.root_orders,
        }
        return self._report("growing-rows", parameters, self._verdict(fit is not None), witness)

    # -------------------------------------------------
    # Sprachen
    # -------------------------------------------------

    def handle_dfa(self, command: DfaCommand) -> VerificationReport:
        """Minimaler DFA, Ordnung, Länge und Eigenschaft (*)"""
        dfa = self._automaton(command.regex, command.dfa_path, command.alphabet)
        ordered = automata.reachability_order(dfa)
        violation = automata.find_star_violation(dfa, self.config.star_check_length)
        witness: Dict = {
            "automaton": DfaPayload.from_dfa(dfa).model_dump(),
            "ordered": ordered is not None,
            "star_property": violation is None,
        }
        if ordered is not None:
            witness["length"] = ordered.length
            if command.truncate_at is not None:
                witness["truncated_length"] = automata.truncate_dfa(ordered, command.truncate_at).length
        if violation is not None:
            witness["star_violation"] = list(violation)
        parameters = {
            "source": command.regex if command.regex is not None else command.dfa_path,
            "alphabet": "".join(dfa.alphabet),
            "star_bound": self.config.star_check_length,
        }
        verdict = Verdict.PASS if ordered is not None and violation is None else Verdict.HYPOTHESES_UNMET
        return self._report("dfa-structure", parameters, verdict, witness)

    def handle_language_ideal(self, command: LanguageIdealCommand) -> VerificationReport:
        dfa = self._automaton(command.regex, command.dfa_path, command.alphabet)
        members = language_ideals.ideal_members(command.word, dfa, self.bounds)
        poset = partition_lattice(len(command.word), self.bounds)
        labels = [poset.label(x) for x in sorted(members)]
        quotients = sorted(
            {
                language_ideals.factor_word(command.word, set_partitions(len(command.word))[x]).quotient
                for x in members
            },
            key=lambda w: (-len(w), w),
        )
        parameters = {
            "word": command.word,
            "source": command.regex if command.regex is not None else command.dfa_path,
        }
        witness = {"ideal": labels, "quotient_words": quotients}
        try:
            PosetIdeal(poset, members)
        except PosetStructureError as exc:
            witness["not_upward_closed"] = str(exc)
            return self._report("language-ideal", parameters, Verdict.FAIL, witness)
        return self._report("language-ideal", parameters, Verdict.PASS, witness)

    def handle_languages_verify(self, command: LanguagesVerifyCommand) -> VerificationReport:
        """Hypothesen prüfen, Homologie immer berechnen"""
        dfa = self._automaton(command.regex, command.dfa_path, command.alphabet)
        ordered: Optional[OrderedDfa] = automata.reachability_order(dfa)
        parameters = {
            "words": list(command.words),
            "source": command.regex if command.regex is not None else command.dfa_path,
        }
        if ordered is None:
            return self._report(
                "languages-exactness", parameters, Verdict.HYPOTHESES_UNMET, {"ordered": False}
            )
        result = language_ideals.verify_languages_theorem(
            ordered, command.words, self.bounds, self.config.star_check_length
        )
        witness: Dict = {
            "automaton_length": result.automaton_length,
            "hypotheses": result.hypotheses,
            "ideal_size": result.ideal_size,
            "homology": list(result.homology),
        }
        if result.star_witness is not None:
            witness["star_violation"] = list(result.star_witness)
        if not result.hypotheses_met:
            return self._report("languages-exactness", parameters, Verdict.HYPOTHESES_UNMET, witness)
        return self._report("languages-exactness", parameters, self._verdict(result.exact), witness)

    def handle_init_ideal(self, command: InitIdealCommand) -> List[VerificationReport]:
        """Wortordnungs-Axiom und gr(J) = init(J)"""
        violation = language_ideals.find_order_violation(command.order_max_d, command.order_max_n)
        order_parameters = {"max_d": command.order_max_d, "max_n": command.order_max_n}
        if violation is None:
            order_report = self._report("word-order-axiom", order_parameters, Verdict.PASS, {"order": "lex"})
        else:
            order_report = self._report(
                "word-order-axiom",
                order_parameters,
                Verdict.FAIL,
                {"u": str(violation[0]), "v": str(violation[1]), "g": str(violation[2])},
            )
        sub = load_presentation(command.module_path)
        initial = language_ideals.init_ideal(sub, command.max_n, self.bounds)
        ok = language_ideals.assoc_graded_check(sub, command.max_n, self.bounds)
        witness = {"init": {str(n): [str(w) for w in words] for n, words in initial.items()}}
        module_report = self._report(
            "initial-module",
            {"module": command.module_path, "max_n": command.max_n},
            self._verdict(ok),
            witness,
        )
        return [order_report, module_report]
