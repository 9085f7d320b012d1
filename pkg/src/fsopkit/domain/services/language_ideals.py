"""
Sprachideale für fsopkit
Faktorisierung von Wörtern über Partitionen, Ideale I(w,L) und J(w,L),
Exaktheitsprüfung für geordnete Sprachen, Wortordnung und Initialideale
"""
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import structlog

from fsopkit.domain.exceptions import InvalidInputError
from fsopkit.domain.models.automata import Dfa, OrderedDfa, WordFactorization
from fsopkit.domain.models.fsop import FsopPresentation, SurjWord
from fsopkit.domain.models.linalg import RatMatrix, Vector
from fsopkit.domain.models.rep import PosetIdeal
from fsopkit.domain.policies.enumeration_bounds import BoundsPolicy, EnumerationBounds
from fsopkit.domain.services.automata import dfa_length, find_star_violation
from fsopkit.domain.services.bar_construction import ideal_rep, multi_bar_complex
from fsopkit.domain.services.exactla import homology_dims, rank, rref
from fsopkit.domain.services.fsop_modules import (
    enumerate_ordered_surjections,
    enumerate_surjections,
)
from fsopkit.domain.services.lattices import (
    AssignmentVector,
    blocks_of,
    partition_lattice,
    product_coordinates,
    product_poset,
    set_partitions,
)

logger = structlog.get_logger(__name__)

Automaton = Union[Dfa, OrderedDfa]


def _dfa(a: Automaton) -> Dfa:
    return a.dfa if isinstance(a, OrderedDfa) else a


# =====================================================
# Faktorisierung
# =====================================================

def factor_word(w: str, vector: AssignmentVector) -> WordFactorization:
    """
    w faktorisiert über p, falls alle Positionen eines Blocks denselben Buchstaben tragen
    Das Quotientenwort liest die Blöcke nach kleinstem Element.
    """
    if len(vector) != len(w):
        raise InvalidInputError(f"Partition von {len(vector)} Positionen für Wort der Länge {len(w)}")
    letters = []
    for block in blocks_of(vector):
        first = w[block[0]]
        if any(w[i] != first for i in block):
            return WordFactorization(w, tuple(vector), None)
        letters.append(first)
    return WordFactorization(w, tuple(vector), "".join(letters))


def _concatenated_vector(vectors: Sequence[AssignmentVector]) -> AssignmentVector:
    """Vereinigung der verschobenen Blöcke auf [ℓ_1 + … + ℓ_r]"""
    combined: List[int] = []
    offset = 0
    for vector in vectors:
        combined.extend(offset + block for block in vector)
        offset += max(vector) + 1 if vector else 0
    return tuple(combined)


def ideal_members(w: str, a: Automaton, bounds: EnumerationBounds = None) -> FrozenSet[int]:
    """Indizes in P(|w|) aller p mit w_p ∈ L (ohne Abschlussprüfung)"""
    partition_lattice(len(w), bounds)
    dfa = _dfa(a)
    members = set()
    for index, vector in enumerate(set_partitions(len(w))):
        factorization = factor_word(w, vector)
        if factorization.factors and dfa.accepts_word(factorization.quotient):
            members.add(index)
    return frozenset(members)


def ideal_I(w: str, a: Automaton, bounds: EnumerationBounds = None) -> PosetIdeal:
    """
    I(w, L) ⊂ P(|w|)
    PosetIdeal prüft den Abschluss nach oben; ohne Eigenschaft (*) kann das scheitern.
    """
    poset = partition_lattice(len(w), bounds)
    ideal = PosetIdeal(poset, ideal_members(w, a, bounds))
    logger.debug("language_ideal_built", word=w, size=len(ideal))
    return ideal


def product_embedding(lengths: Sequence[int]) -> Tuple[int, ...]:
    """Index in P(ℓ_1) × … × P(ℓ_r) -> Index in P(ℓ_1 + … + ℓ_r)"""
    factors = [set_partitions(length) for length in lengths]
    total = sum(lengths)
    index = {vector: i for i, vector in enumerate(set_partitions(total))}
    return tuple(index[_concatenated_vector(choice)] for choice in product(*factors))


def ideal_J(words: Sequence[str], a: Automaton, bounds: EnumerationBounds = None) -> PosetIdeal:
    """J(w, L) = I(w, L) ∩ ∏ P(ℓ_t) über dem Produkt der Partitionsverbände"""
    if not words:
        raise InvalidInputError("Mindestens ein Wort erforderlich")
    bounds = bounds or EnumerationBounds()
    lengths = [len(word) for word in words]
    BoundsPolicy(bounds).require("Σℓ", sum(lengths), bounds.language_max_total_length)
    posets = [partition_lattice(length, bounds) for length in lengths]
    poset = product_poset(posets)
    dfa = _dfa(a)
    concatenation = "".join(words)
    factors = [set_partitions(length) for length in lengths]
    sizes = [p.size for p in posets]
    members = set()
    for index in range(poset.size):
        coordinates = product_coordinates(sizes, index)
        vector = _concatenated_vector([f[c] for f, c in zip(factors, coordinates)])
        factorization = factor_word(concatenation, vector)
        if factorization.factors and dfa.accepts_word(factorization.quotient):
            members.add(index)
    ideal = PosetIdeal(poset, frozenset(members))
    logger.debug("product_language_ideal_built", words=list(words), size=len(ideal), poset_size=poset.size)
    return ideal


# =====================================================
# Exaktheit für geordnete Sprachen
# =====================================================

@dataclass(frozen=True)
class LanguagesTheoremResult:
    """Hypothesen, Ideal und Homologie von B_{(P(ℓ_1),…,P(ℓ_r))}(kJ)"""
    words: Tuple[str, ...]
    automaton_length: int
    alphabet_size: int
    hypotheses: Dict[str, bool]
    ideal_size: int
    homology: Tuple[int, ...]
    star_witness: Optional[Tuple[str, str]] = None
    ideal_labels: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def hypotheses_met(self) -> bool:
        return all(self.hypotheses.values())

    @property
    def exact(self) -> bool:
        return not any(self.homology)


def verify_languages_theorem(
    a: OrderedDfa,
    words: Sequence[str],
    bounds: EnumerationBounds = None,
    star_bound: int = 8,
) -> LanguagesTheoremResult:
    """
    Baut kJ(w, L), den iterierten Bar-Komplex und dessen Homologie

    Hypothesen: r ≥ Länge von A, ℓ_t ≥ d für t < r, ℓ_r ≥ d + 1 und (*) bis star_bound.
    Die Homologie wird immer berechnet, auch wenn Hypothesen verletzt sind.
    """
    words = tuple(words)
    if not words:
        raise InvalidInputError("Mindestens ein Wort erforderlich")
    d = a.dfa.alphabet_size
    r = len(words)
    length = dfa_length(a)
    for word in words:
        for letter in word:
            a.dfa.letter_index(letter)
    star_witness = find_star_violation(a, star_bound)
    hypotheses = {
        "r >= length": r >= length,
        "l_t >= d (t < r)": all(len(word) >= d for word in words[:-1]),
        "l_r >= d + 1": len(words[-1]) >= d + 1,
        "star property": star_witness is None,
    }
    ideal = ideal_J(words, a, bounds)
    posets = [partition_lattice(len(word), bounds) for word in words]
    homology = homology_dims(multi_bar_complex(posets, ideal_rep(ideal)))
    result = LanguagesTheoremResult(
        words=words,
        automaton_length=length,
        alphabet_size=d,
        hypotheses=hypotheses,
        ideal_size=len(ideal),
        homology=homology,
        star_witness=star_witness,
        ideal_labels=ideal.labels(),
    )
    logger.debug(
        "languages_theorem_checked",
        words=list(words),
        hypotheses_met=result.hypotheses_met,
        homology=homology,
    )
    return result


# =====================================================
# Wortordnung auf OS^op
# =====================================================

def os_word_order(u: SurjWord, v: SurjWord) -> int:
    """Lexikographischer Vergleich mit 1 < 2 < … < d: -1, 0 oder 1"""
    if u.length != v.length:
        raise InvalidInputError(f"Wörter verschiedener Länge: {u}, {v}")
    if u.degree != v.degree:
        raise InvalidInputError(f"Wörter über verschiedenen Alphabeten: {u}, {v}")
    if u.letters == v.letters:
        return 0
    return -1 if u.letters < v.letters else 1


def find_order_violation(
    max_d: int = 3, max_n: int = 5
) -> Optional[Tuple[SurjWord, SurjWord, SurjWord]]:
    """
    Sucht u < v und eine geordnete Surjektion g mit nicht u∘g < v∘g

    Returns:
        (u, v, g) oder None
    """
    for d in range(1, max_d + 1):
        for n in range(d, max_n + 1):
            words = sorted(enumerate_surjections(n, d))
            for m in range(n, max_n + 1):
                for g in enumerate_ordered_surjections(m, n):
                    for u, v in combinations(words, 2):
                        if os_word_order(u.precompose(g), v.precompose(g)) != -1:
                            return u, v, g
    return None


def check_order_axiom(max_d: int = 3, max_n: int = 5) -> bool:
    """Strikte Verträglichkeit mit Präkomposition durch OS-Morphismen, erschöpfend"""
    violation = find_order_violation(max_d, max_n)
    if violation is not None:
        logger.debug("word_order_violated", u=str(violation[0]), v=str(violation[1]), g=str(violation[2]))
    return violation is None


# =====================================================
# Initialideale
# =====================================================

def _require_single_generator(sub: FsopPresentation) -> int:
    if len(sub.generator_degrees) != 1:
        raise InvalidInputError("Untermodul muss in einem freien Modul P(d) liegen")
    return sub.generator_degrees[0]


def _submodule_rows(sub: FsopPresentation, n: int, bounds: EnumerationBounds) -> Tuple[RatMatrix, int]:
    """
    Erzeugende von J_n als Zeilen über der lexikographisch sortierten Basis von P(d)_n
    J ist der OS^op-Untermodul: nur Präkomposition mit geordneten Surjektionen.
    """
    BoundsPolicy(bounds).require_evaluation(sub.generator_degrees, n)
    basis = enumerate_surjections(n, sub.generator_degrees[0])
    index = {word: i for i, word in enumerate(basis)}
    rows: List[Vector] = []
    for relation in sub.relations:
        for g in enumerate_ordered_surjections(n, relation.degree):
            row: Vector = {}
            for term in relation.terms:
                position = index[term.surj_word.precompose(g)]
                row[position] = row.get(position, 0) + term.coefficient
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    return RatMatrix.from_columns(len(basis), rows).transpose(), len(basis)


def init_ideal(
    sub: FsopPresentation, max_n: int, bounds: EnumerationBounds = None
) -> Dict[int, Tuple[SurjWord, ...]]:
    """
    init(J)_n für n = 0..max_n
    J wird von den Relationen von sub in P(d) erzeugt. Elimination mit absteigend
    sortierten Spalten liefert als Pivots genau die Leitwörter.
    """
    d = _require_single_generator(sub)
    result: Dict[int, Tuple[SurjWord, ...]] = {}
    for n in range(max_n + 1):
        rows, dim = _submodule_rows(sub, n, bounds)
        basis = enumerate_surjections(n, d)
        form = rref(rows, column_order=list(range(dim - 1, -1, -1)))
        result[n] = tuple(sorted(basis[c] for c in form.pivots))
        logger.debug("initial_words_computed", degree=n, count=len(result[n]))
    return result


def filtration_jumps(
    sub: FsopPresentation, n: int, bounds: EnumerationBounds = None
) -> Tuple[SurjWord, ...]:
    """
    Wörter w mit dim(J_n ∩ V_{≤w}) > dim(J_n ∩ V_{<w})
    dim(J ∩ V_{≤w}) = dim J - Rang der Projektion auf die Koordinaten > w
    """
    d = _require_single_generator(sub)
    rows, dim = _submodule_rows(sub, n, bounds)
    basis = enumerate_surjections(n, d)
    total = rank(rows)
    jumps: List[SurjWord] = []
    previous = 0
    for position in range(dim):
        above = list(range(position + 1, dim))
        inside = total - (rank(rows.select_columns(above)) if above else 0)
        if inside > previous:
            jumps.append(basis[position])
        previous = inside
    return tuple(jumps)


def assoc_graded_check(sub: FsopPresentation, max_n: int, bounds: EnumerationBounds = None) -> bool:
    """
    gr(J) = init(J) in jedem Grad bis max_n, und init(J) ist ein OS^op-Untermodul
    (abgeschlossen unter Präkomposition mit geordneten Surjektionen [n+1] -> [n])
    """
    initial = init_ideal(sub, max_n, bounds)
    for n in range(max_n + 1):
        if filtration_jumps(sub, n, bounds) != initial[n]:
            logger.debug("filtration_mismatch", degree=n)
            return False
        if n == max_n:
            continue
        following = set(initial[n + 1])
        for word in initial[n]:
            for g in enumerate_ordered_surjections(n + 1, n):
                if word.precompose(g) not in following:
                    logger.debug("initial_module_not_closed", degree=n, word=str(word), g=str(g))
                    return False
    return True
