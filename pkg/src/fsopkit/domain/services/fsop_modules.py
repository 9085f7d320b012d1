"""
FS^op Moduln für fsopkit
Auswertung endlicher Präsentationen, B_d/K_d und Iterierte, Typ-Prüfung,
Hilbert-Reihen und Frobenius-Charaktere
"""
import json
import random
import threading
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import structlog
from pydantic import ValidationError

from fsopkit.domain.exceptions import InvalidInputError, RelationStabilityError
from fsopkit.domain.models.fsop import (
    BasisEntry,
    DegreeEvaluation,
    FsopPresentation,
    Relation,
    RelationTerm,
    SurjWord,
)
from fsopkit.domain.models.linalg import RatMatrix, RationalChainComplex, Vector
from fsopkit.domain.models.poset import FinitePoset, IntPolynomial
from fsopkit.domain.models.rep import PosetRep
from fsopkit.domain.models.symfunc import Partition, SymFunc
from fsopkit.domain.policies.enumeration_bounds import BoundsPolicy, EnumerationBounds
from fsopkit.domain.services.bar_construction import bar_complex, koszul_complex, multi_bar_complex
from fsopkit.domain.services.exactla import is_exact, quotient_coordinates
from fsopkit.domain.services.lattices import (
    blocks_of,
    canonical_vector,
    partition_lattice,
    product_coordinates,
    product_poset,
    set_partitions,
)
from fsopkit.domain.services.poset_topology import descending_chains, mobius
from fsopkit.domain.services.symmetric_functions import partitions_of

logger = structlog.get_logger(__name__)

AssignmentVector = Tuple[int, ...]


# =====================================================
# Surjektionen
# =====================================================

@lru_cache(maxsize=None)
def enumerate_surjections(n: int, d: int) -> Tuple[SurjWord, ...]:
    """Alle Surjektionen [n] -> [d] als Wörter, lexikographisch"""
    if n < 0 or d < 0:
        raise InvalidInputError(f"Negative Argumente ({n}, {d})")
    if d == 0:
        return (SurjWord(()),) if n == 0 else ()
    if d > n:
        return ()
    target = set(range(1, d + 1))
    return tuple(
        SurjWord(letters)
        for letters in product(range(1, d + 1), repeat=n)
        if set(letters) == target
    )


@lru_cache(maxsize=None)
def enumerate_ordered_surjections(n: int, d: int) -> Tuple[SurjWord, ...]:
    """Surjektionen mit min f⁻¹(1) < … < min f⁻¹(d) (Morphismen in OS)"""
    return tuple(w for w in enumerate_surjections(n, d) if w.is_ordered())


def cycle_permutation(shape: Partition) -> SurjWord:
    """Repräsentant σ_λ: aufeinanderfolgende Zyklen (1 2 … λ_1)(λ_1+1 …)…"""
    letters: List[int] = []
    start = 1
    for part in shape:
        letters.extend(range(start + 1, start + part))
        letters.append(start)
        start += part
    return SurjWord(tuple(letters))


# =====================================================
# Präsentationen
# =====================================================

def free_presentation(*generator_degrees: int) -> FsopPresentation:
    """P(g_1) ⊕ … ⊕ P(g_r)"""
    return FsopPresentation(generator_degrees=tuple(generator_degrees))


def parse_presentation(payload: Union[str, Mapping]) -> FsopPresentation:
    """Liest das JSON-Format {"generators": […], "relations": […]}"""
    try:
        data = json.loads(payload) if isinstance(payload, str) else dict(payload)
        return FsopPresentation.model_validate(data)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"Kein gültiges JSON: {exc.msg}") from exc
    except ValidationError as exc:
        raise InvalidInputError(f"Ungültige Präsentation: {exc.errors()[0]['msg']}") from exc


def simple_relation(degree: int, *terms: Tuple[int, str, Union[int, str]]) -> Relation:
    """Relation aus (gen, word, coef)-Tripeln"""
    return Relation(
        degree=degree,
        terms=tuple(RelationTerm(gen=gen, word=word, coef=str(coef)) for gen, word, coef in terms),
    )


# =====================================================
# Auswertungs-Cache
# =====================================================

class EvaluationCache:
    """
    Cache für DegreeEvaluation pro (Präsentation, Grad)
    Schreiben ist idempotent; parallele Auswertungen verschiedener Grade sind erlaubt.
    """

    _instance: Optional["EvaluationCache"] = None
    _instance_lock = threading.Lock()

    @classmethod
    def instance(cls) -> "EvaluationCache":
        if cls._instance is None:
            with cls._instance_lock:
                if cls._instance is None:
                    cls._instance = cls()
        return cls._instance

    def __init__(self):
        self._entries: Dict[Tuple[FsopPresentation, int], DegreeEvaluation] = {}
        self._cache_lock = threading.Lock()

    def get(self, m: FsopPresentation, n: int) -> Optional[DegreeEvaluation]:
        with self._cache_lock:
            return self._entries.get((m, n))

    def put(self, m: FsopPresentation, n: int, evaluation: DegreeEvaluation) -> DegreeEvaluation:
        with self._cache_lock:
            return self._entries.setdefault((m, n), evaluation)

    def clear(self) -> None:
        with self._cache_lock:
            self._entries.clear()

    def __len__(self) -> int:
        with self._cache_lock:
            return len(self._entries)


# =====================================================
# Auswertung M_n
# =====================================================

def _free_basis(m: FsopPresentation, n: int) -> Tuple[BasisEntry, ...]:
    return tuple(
        (gen, word)
        for gen, g in enumerate(m.generator_degrees)
        for word in enumerate_surjections(n, g)
    )


def _relation_vectors(m: FsopPresentation, n: int, index: Mapping[BasisEntry, int]) -> List[Vector]:
    vectors: List[Vector] = []
    for relation in m.relations:
        terms = [(t.gen, t.surj_word, t.coefficient) for t in relation.terms]
        for f in enumerate_surjections(n, relation.degree):
            vector: Vector = {}
            for gen, word, coef in terms:
                position = index[(gen, word.precompose(f))]
                vector[position] = vector.get(position, 0) + coef
            vector = {k: v for k, v in vector.items() if v}
            if vector:
                vectors.append(vector)
    return vectors


def _evaluate(m: FsopPresentation, n: int) -> DegreeEvaluation:
    cache = EvaluationCache.instance()
    cached = cache.get(m, n)
    if cached is not None:
        return cached
    basis = _free_basis(m, n)
    index = {entry: i for i, entry in enumerate(basis)}
    quotient = quotient_coordinates(_relation_vectors(m, n, index), len(basis))
    relation_space = RatMatrix.from_columns(len(basis), quotient.echelon.rows)
    evaluation = DegreeEvaluation(n, basis, relation_space, quotient)
    logger.debug(
        "degree_evaluated", degree=n, free_dim=evaluation.free_dim, quotient_dim=evaluation.quotient_dim
    )
    return cache.put(m, n, evaluation)


def evaluate_degree(
    m: FsopPresentation,
    n: int,
    bounds: EnumerationBounds = None,
    rng: Optional[random.Random] = None,
) -> DegreeEvaluation:
    """
    M_n = F_n / R_n, R_n erzeugt von allen rel ∘ f mit f: [n] -> [deg rel] surjektiv
    Die Stabilität von R_n wird auf gezogenen Surjektionen geprüft (Permutationen von [n]
    und, falls n + 1 innerhalb der Grenze liegt, Surjektionen [n + 1] -> [n]).
    """
    policy = BoundsPolicy(bounds)
    policy.require_evaluation(m.generator_degrees, n)
    evaluation = _evaluate(m, n)
    extra = 1 if n < policy.evaluation_bound(m.generator_degrees) else 0
    sampler = rng if rng is not None else random.Random(n)
    if not check_relation_stability(m, n, sampler, extra=extra, bounds=bounds):
        raise RelationStabilityError(n)
    return evaluation


def hilbert_dims(m: FsopPresentation, max_n: int, bounds: EnumerationBounds = None) -> Tuple[int, ...]:
    """dim M_n für n = 0..max_n"""
    BoundsPolicy(bounds).require_evaluation(m.generator_degrees, max_n)
    return tuple(_evaluate(m, n).quotient_dim for n in range(max_n + 1))


def _induced(m: FsopPresentation, f: SurjWord) -> RatMatrix:
    source = _evaluate(m, f.degree)
    target = _evaluate(m, f.length)
    columns: List[Vector] = []
    for j in range(source.quotient_dim):
        lifted = source.quotient.lift(j)
        image: Vector = {}
        for position, coef in lifted.items():
            gen, word = source.basis[position]
            new_position = target.index_of((gen, word.precompose(f)))
            image[new_position] = image.get(new_position, 0) + coef
        columns.append(target.quotient.coordinates(image))
    return RatMatrix.from_columns(target.quotient_dim, columns)


def induced_map(m: FsopPresentation, f: SurjWord, bounds: EnumerationBounds = None) -> RatMatrix:
    """
    M(f): M_k -> M_n für eine Surjektion f: [n] -> [k]
    Matrix in Quotientenkoordinaten (dim M_n Zeilen, dim M_k Spalten).
    """
    if not f.is_surjective():
        raise InvalidInputError(f"{f} ist keine Surjektion")
    BoundsPolicy(bounds).require_evaluation(m.generator_degrees, f.length)
    return _induced(m, f)


def _sample_surjections(length: int, d: int, rng: random.Random, samples: int) -> List[SurjWord]:
    """Kleine Fälle aus der Aufzählung, sonst zufällige Wörter mit allen Buchstaben"""
    if d ** length <= 4096:
        maps = list(enumerate_surjections(length, d))
        return maps if len(maps) <= samples else rng.sample(maps, samples)
    chosen = []
    for _ in range(samples):
        letters = list(range(1, d + 1)) + [rng.randint(1, d) for _ in range(length - d)]
        rng.shuffle(letters)
        chosen.append(SurjWord(tuple(letters)))
    return chosen


def check_relation_stability(
    m: FsopPresentation,
    n: int,
    rng: random.Random,
    samples: int = 4,
    extra: int = 1,
    bounds: EnumerationBounds = None,
) -> bool:
    """
    Zufallsauswahl: R_n ∘ f ⊆ R_{n+e} für Surjektionen f: [n+e] -> [n], e ≤ extra,
    Permutationen von [n] eingeschlossen (e = 0)
    """
    BoundsPolicy(bounds).require_evaluation(m.generator_degrees, n + extra)
    source = _evaluate(m, n)
    for e in range(extra + 1):
        target = _evaluate(m, n + e)
        for f in _sample_surjections(n + e, n, rng, samples):
            for relation in source.relation_space.columns():
                image: Vector = {}
                for position, coef in relation.items():
                    gen, word = source.basis[position]
                    new_position = target.index_of((gen, word.precompose(f)))
                    image[new_position] = image.get(new_position, 0) + coef
                if not target.quotient.contains(image):
                    logger.debug("relation_not_stable", degree=n, map=str(f))
                    return False
    return True


# =====================================================
# Hilbert-Reihen
# =====================================================

def whitney_denominator(d: int) -> IntPolynomial:
    """∏_{j=0}^{d} (1 - j t)"""
    return IntPolynomial.linear_product(range(d + 1))


def verify_rational_tail(dims: Sequence[int], denom: IntPolynomial, from_degree: int) -> bool:
    """
    Koeffizienten von denom(t)·Σ dims[n] tⁿ verschwinden in [from_degree, len(dims) - 1]
    Nur ein Fenster-Test, kein Beweis der Rationalität.
    """
    if len(dims) < from_degree + denom.degree + 1:
        raise InvalidInputError(
            f"Fenster zu kurz: {len(dims)} Werte, benötigt {from_degree + denom.degree + 1}"
        )
    for k in range(from_degree, len(dims)):
        value = sum(
            denom.coefficient(j) * dims[k - j] for j in range(denom.degree + 1) if k - j >= 0
        )
        if value:
            logger.debug("rational_tail_failed", degree=k, coefficient=value)
            return False
    return True


# =====================================================
# B_d, K_d und Iterierte
# =====================================================

def _canonical_surjection(
    n: int, fine: Sequence[AssignmentVector], coarse: Sequence[AssignmentVector]
) -> SurjWord:
    """[n] ⊔ q_1 ⊔ … -> [n] ⊔ p_1 ⊔ …, Blöcke nach kleinstem Element nummeriert"""
    letters = list(range(1, n + 1))
    offset = n
    for fine_vector, coarse_vector in zip(fine, coarse):
        for block in blocks_of(fine_vector):
            letters.append(offset + coarse_vector[block[0]] + 1)
        offset += max(coarse_vector) + 1 if coarse_vector else 0
    return SurjWord(tuple(letters))


def partition_family_rep(
    m: FsopPresentation, ds: Sequence[int], n: int, bounds: EnumerationBounds = None
) -> Tuple[List[FinitePoset], PosetRep]:
    """
    (p_1, …, p_r) ↦ M_{[n] ⊔ p_1 ⊔ … ⊔ p_r} über P(d_1) × … × P(d_r)
    Abbildungen durch Vorschalten der kanonischen Surjektionen.
    """
    if not ds or any(d < 1 for d in ds):
        raise InvalidInputError(f"Alle d_t müssen ≥ 1 sein: {tuple(ds)}")
    BoundsPolicy(bounds).require_evaluation(m.generator_degrees, n + sum(ds))
    posets = [partition_lattice(d, bounds) for d in ds]
    poset = posets[0] if len(posets) == 1 else product_poset(posets)
    sizes = [p.size for p in posets]
    vectors = [set_partitions(d) for d in ds]

    def assignment(x: int) -> List[AssignmentVector]:
        return [vectors[t][c] for t, c in enumerate(product_coordinates(sizes, x))]

    def degree_of(x: int) -> int:
        return n + sum(max(v) + 1 for v in assignment(x))

    dims = tuple(_evaluate(m, degree_of(x)).quotient_dim for x in poset.elements)
    maps = {
        (p, q): _induced(m, _canonical_surjection(n, assignment(q), assignment(p)))
        for p, q in poset.relations
        if dims[p] and dims[q]
    }
    return posets, PosetRep(poset, dims, maps)


def bd_complex_at(m: FsopPresentation, d: int, n: int, bounds: EnumerationBounds = None) -> RationalChainComplex:
    """B_d(M)_n als Bar-Komplex über P(d)"""
    _, rep = partition_family_rep(m, (d,), n, bounds)
    complex_ = bar_complex(rep)
    logger.debug("bd_complex_built", d=d, n=n, dims=complex_.dims)
    return complex_


def kd_complex_at(m: FsopPresentation, d: int, n: int, bounds: EnumerationBounds = None) -> RationalChainComplex:
    """K_d(M)_n als Koszul-Komplex über P(d)"""
    _, rep = partition_family_rep(m, (d,), n, bounds)
    complex_ = koszul_complex(rep)
    logger.debug("kd_complex_built", d=d, n=n, dims=complex_.dims)
    return complex_


def iterated_bd_at(
    m: FsopPresentation, ds: Sequence[int], n: int, bounds: EnumerationBounds = None
) -> RationalChainComplex:
    """Totalkomplex B_{d_r} ∘ … ∘ B_{d_1}(M) in Grad n"""
    if len(ds) == 1:
        return bd_complex_at(m, ds[0], n, bounds)
    posets, rep = partition_family_rep(m, ds, n, bounds)
    return multi_bar_complex(posets, rep)


def grothendieck_sum(m: FsopPresentation, d: int, n: int, bounds: EnumerationBounds = None) -> int:
    """Σ_{p ∈ P(d)} μ(p) · dim M_{n + #Blöcke(p)}"""
    BoundsPolicy(bounds).require_evaluation(m.generator_degrees, n + d)
    poset = partition_lattice(d, bounds)
    vectors = set_partitions(d)
    return sum(
        mobius(poset, x) * _evaluate(m, n + max(vectors[x]) + 1).quotient_dim
        for x in poset.elements
    )


# =====================================================
# Typ < J
# =====================================================

def find_type_counterexample(
    m: FsopPresentation,
    j: Sequence[int],
    n_range: range,
    slack: int,
    bounds: EnumerationBounds = None,
) -> Optional[Tuple[Tuple[int, ...], int]]:
    """Erstes (ℓ, n) im Fenster, für das der iterierte Komplex nicht exakt ist"""
    j = tuple(Partition(j))
    if not j:
        raise InvalidInputError("J darf nicht leer sein")
    if slack < 0:
        raise InvalidInputError(f"slack={slack} ist negativ")
    for ls in product(*[range(part, part + slack + 1) for part in j]):
        for n in n_range:
            if not is_exact(iterated_bd_at(m, ls, n, bounds)):
                logger.debug("type_counterexample", ls=ls, n=n)
                return tuple(ls), n
    return None


def check_type_less(
    m: FsopPresentation,
    j: Sequence[int],
    n_range: range,
    slack: int,
    bounds: EnumerationBounds = None,
) -> bool:
    """Exaktheit für alle ℓ_t ∈ [j_t, j_t + slack] und n ∈ n_range (beschränkter Zeuge)"""
    return find_type_counterexample(m, j, n_range, slack, bounds) is None


# =====================================================
# Charaktere
# =====================================================

@lru_cache(maxsize=256)
def _trace_table(m: FsopPresentation, n: int) -> Dict[Partition, Fraction]:
    table: Dict[Partition, Fraction] = {}
    for shape in partitions_of(n):
        matrix = _induced(m, cycle_permutation(shape))
        table[shape] = sum((matrix[i, i] for i in range(matrix.rows)), Fraction(0))
    return table


def sn_character(m: FsopPresentation, n: int, bounds: EnumerationBounds = None) -> Dict[Partition, Fraction]:
    """Spur von σ_λ auf M_n für jeden Zyklentyp λ ⊢ n"""
    BoundsPolicy(bounds).require_evaluation(m.generator_degrees, n)
    return dict(_trace_table(m, n))


def frobenius_character(m: FsopPresentation, max_n: int, bounds: EnumerationBounds = None) -> SymFunc:
    """ch(M) = Σ_{n ≤ max_n} Σ_{λ ⊢ n} χ(σ_λ) p_λ / z_λ"""
    BoundsPolicy(bounds).require_evaluation(m.generator_degrees, max_n)
    coeffs: Dict[Partition, Fraction] = {}
    for n in range(max_n + 1):
        for shape, trace in _trace_table(m, n).items():
            coeffs[shape] = trace / shape.z
    return SymFunc(max_n, coeffs)


def _act_on_partition(sigma: Sequence[int], vector: AssignmentVector) -> AssignmentVector:
    blocks = blocks_of(vector)
    return canonical_vector([[sigma[x] for x in block] for block in blocks], len(vector))


def _block_cycle_type(sigma: Sequence[int], vector: AssignmentVector) -> Partition:
    """Zyklentyp der von σ auf den Blöcken induzierten Permutation"""
    blocks = blocks_of(vector)
    image = [vector[sigma[block[0]]] for block in blocks]
    seen = [False] * len(blocks)
    lengths = []
    for start in range(len(blocks)):
        if seen[start]:
            continue
        length, current = 0, start
        while not seen[current]:
            seen[current] = True
            current = image[current]
            length += 1
        lengths.append(length)
    return Partition(lengths)


def character_of_bd(
    m: FsopPresentation, d: int, max_n: int, bounds: EnumerationBounds = None
) -> Dict[Partition, SymFunc]:
    """
    Koeffizient von p_λ (λ ⊢ d) in ch_{S_n × S_d}(B_d(M)), als Element von Λ̂ in n
    Nur von σ_λ fixierte Ketten tragen bei; deren Spur ist χ_M auf [n] ⊔ p_s.
    """
    if d < 1:
        raise InvalidInputError(f"d={d} muss ≥ 1 sein")
    BoundsPolicy(bounds).require_evaluation(m.generator_degrees, max_n + d)
    poset = partition_lattice(d, bounds)
    vectors = set_partitions(d)
    chains = descending_chains(poset)

    result: Dict[Partition, SymFunc] = {}
    for shape in partitions_of(d):
        sigma = [x - 1 for x in cycle_permutation(shape).letters]
        fixed = {x for x in poset.elements if _act_on_partition(sigma, vectors[x]) == vectors[x]}
        coeffs: Dict[Partition, Fraction] = {}
        for s, chain_list in chains.items():
            for chain in chain_list:
                if any(x not in fixed for x in chain):
                    continue
                end = vectors[chain[-1] if chain else poset.top]
                block_type = _block_cycle_type(sigma, end)
                for n in range(max_n + 1):
                    table = _trace_table(m, n + block_type.size)
                    for nu in partitions_of(n):
                        trace = table[nu.union(block_type)]
                        if trace:
                            coeffs[nu] = coeffs.get(nu, 0) + (-1) ** s * trace / (nu.z * shape.z)
        result[shape] = SymFunc(max_n, coeffs)
    logger.debug("bd_character_computed", d=d, max_n=max_n)
    return result
