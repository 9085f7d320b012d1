"""
Bar- und Koszul-Konstruktion für fsopkit
B_P(M), K_P(M), iterierte Bar-Komplexe über Produkten und Ideal-Darstellungen
"""
import random
from itertools import product
from typing import Callable, Dict, Hashable, List, Mapping, Sequence, Set, Tuple

import structlog

from fsopkit.domain.exceptions import (
    FunctorialityError,
    InvalidInputError,
    NonInjectiveTransitionError,
    NoTopElementError,
    NotUpperCMError,
)
from fsopkit.domain.models.linalg import RatMatrix, RationalChainComplex, Vector
from fsopkit.domain.models.poset import FinitePoset
from fsopkit.domain.models.rep import PosetIdeal, PosetRep
from fsopkit.domain.services.exactla import kernel_basis, quotient_coordinates, rref
from fsopkit.domain.services.lattices import product_coordinates, product_index, product_poset
from fsopkit.domain.services.poset_topology import descending_chains, grading, is_upper_cm

logger = structlog.get_logger(__name__)

Chain = Tuple[int, ...]
ChainTuple = Tuple[Chain, ...]


# =====================================================
# Ideale & Ideal-Darstellungen
# =====================================================

def principal_ideal(p: FinitePoset, x: int) -> PosetIdeal:
    """P_{≥x}"""
    return PosetIdeal(p, frozenset({x}) | p.above(x))


def ideal_rep(ideal: PosetIdeal) -> PosetRep:
    """kI: Q auf den Elementen des Ideals, 0 sonst, Identitäten dazwischen"""
    poset = ideal.poset
    dims = tuple(1 if x in ideal else 0 for x in poset.elements)
    maps = {
        (a, b): RatMatrix.identity(1)
        for a, b in poset.relations
        if a in ideal and b in ideal
    }
    return PosetRep(poset, dims, maps)


# =====================================================
# Funktorialität
# =====================================================

def validate_functoriality(m: PosetRep) -> None:
    """Prüft M(q,r)·M(p,q) = M(p,r) für alle p < r und Überdeckungen p ⋖ q ≤ r"""
    poset = m.poset
    for p, r in sorted(poset.relations):
        for q in poset.upper_covers(p):
            if not poset.leq(q, r):
                continue
            composite = m.map_for(q, r) @ m.map_for(p, q)
            if composite != m.map_for(p, r):
                raise FunctorialityError((p, q, r))


def rep_from_cover_maps(
    poset: FinitePoset,
    dims: Sequence[int],
    cover_maps: Mapping[Tuple[int, int], RatMatrix],
) -> PosetRep:
    """
    Erweitert Abbildungen auf Überdeckungen zu allen vergleichbaren Paaren
    Komposition entlang der ersten Überdeckung; Wegunabhängigkeit wird geprüft.
    """
    for p, q in poset.covers():
        if (p, q) not in cover_maps:
            raise InvalidInputError(f"Abbildung für Überdeckung ({p}, {q}) fehlt")
    maps: Dict[Tuple[int, int], RatMatrix] = {}

    def build(p: int, r: int) -> RatMatrix:
        if p == r:
            return RatMatrix.identity(dims[p])
        if (p, r) in maps:
            return maps[(p, r)]
        q = next(c for c in poset.upper_covers(p) if poset.leq(c, r))
        result = build(q, r) @ cover_maps[(p, q)]
        maps[(p, r)] = result
        return result

    for p, r in sorted(poset.relations, key=lambda pair: (-len(poset.above(pair[0])), pair)):
        build(p, r)
    rep = PosetRep(poset, tuple(dims), maps)
    validate_functoriality(rep)
    return rep


# =====================================================
# Bar-Komplex (auch iteriert)
# =====================================================

class _ChainBasis:
    """Basis ⊕_c M_{end(c)} eines Kettengrades mit Offsets"""

    def __init__(self, chains: Sequence[ChainTuple], dim_of: Callable[[ChainTuple], int]):
        self.offsets: Dict[ChainTuple, int] = {}
        self.dims: Dict[ChainTuple, int] = {}
        total = 0
        for chain in chains:
            dim = dim_of(chain)
            if dim == 0:
                continue
            self.offsets[chain] = total
            self.dims[chain] = dim
            total += dim
        self.total = total


def _chain_tuples_by_degree(posets: Sequence[FinitePoset]) -> Dict[int, List[ChainTuple]]:
    per_factor = [descending_chains(p) for p in posets]
    max_degree = sum(max(chains) for chains in per_factor)
    result: Dict[int, List[ChainTuple]] = {}
    for lengths in product(*[sorted(chains) for chains in per_factor]):
        degree = sum(lengths)
        for combo in product(*[per_factor[t][length] for t, length in enumerate(lengths)]):
            result.setdefault(degree, []).append(tuple(combo))
    for degree in range(max_degree + 1):
        result.setdefault(degree, [])
    return {degree: sorted(chains) for degree, chains in result.items()}


def _assemble_total_complex(
    posets: Sequence[FinitePoset],
    m: PosetRep,
    to_element: Callable[[Sequence[int]], int],
) -> RationalChainComplex:
    """
    Totalkomplex der iterierten Bar-Konstruktion
    d = Σ_t (-1)^{Σ_{u<t} |c_u|} d^{(t)}, d^{(t)} = Σ_{i=1}^{|c_t|} (-1)^i ∂_i auf Faktor t.
    """
    tops = [p.top for p in posets]
    if any(top is None for top in tops):
        raise NoTopElementError("Jeder Faktor braucht ein grösstes Element")

    def end_element(chains: ChainTuple) -> int:
        return to_element([c[-1] if c else top for c, top in zip(chains, tops)])

    by_degree = _chain_tuples_by_degree(posets)
    top_degree = max(by_degree)
    bases = [
        _ChainBasis(by_degree[s], lambda chains: m.dim_at[end_element(chains)])
        for s in range(top_degree + 1)
    ]

    boundaries: List[RatMatrix] = []
    for s in range(1, top_degree + 1):
        source, target = bases[s], bases[s - 1]
        entries: Dict[Tuple[int, int], int] = {}
        for chains, offset in source.offsets.items():
            end = end_element(chains)
            dim = source.dims[chains]
            prefix = 0
            for t, chain in enumerate(chains):
                outer = (-1) ** prefix
                length = len(chain)
                for i in range(1, length + 1):
                    sign = outer * (-1) ** i
                    face_chain = chain[: i - 1] + chain[i:]
                    face = chains[:t] + (face_chain,) + chains[t + 1:]
                    if face not in target.offsets:
                        continue
                    row_offset = target.offsets[face]
                    if i < length:
                        for j in range(dim):
                            key = (row_offset + j, offset + j)
                            entries[key] = entries.get(key, 0) + sign
                    else:
                        face_end = end_element(face)
                        matrix = m.map_for(end, face_end)
                        for r, c, value in matrix.entries():
                            key = (row_offset + r, offset + c)
                            entries[key] = entries.get(key, 0) + sign * value
                prefix += length
        boundaries.append(RatMatrix.from_entries(target.total, source.total, entries))

    dims = tuple(basis.total for basis in bases)
    return RationalChainComplex(dims, tuple(boundaries))


def bar_complex(m: PosetRep) -> RationalChainComplex:
    """
    B_P(M)_s = ⊕_{1̂ > p_1 > … > p_s} M_{p_s}
    Ketten lexikographisch nach Elementindizes.
    """
    if m.poset.top is None:
        raise NoTopElementError("Bar-Komplex verlangt ein grösstes Element")
    complex_ = _assemble_total_complex([m.poset], m, lambda coords: coords[0])
    logger.debug("bar_complex_built", poset_size=m.poset.size, dims=complex_.dims)
    return complex_


def multi_bar_complex(posets: Sequence[FinitePoset], m: PosetRep) -> RationalChainComplex:
    """
    Totalkomplex von B_{(P_1,…,P_r)}(M) für M über P_1 × … × P_r
    Elemente des Produkts in gemischter Basis (erster Faktor höchstwertig).
    """
    if not posets:
        raise InvalidInputError("Mindestens ein Faktor erforderlich")
    sizes = [p.size for p in posets]
    expected = 1
    for size in sizes:
        expected *= size
    if m.poset.size != expected:
        raise InvalidInputError(f"Darstellung hat {m.poset.size} Elemente, Produkt {expected}")
    complex_ = _assemble_total_complex(posets, m, lambda coords: product_index(sizes, coords))
    logger.debug("multi_bar_complex_built", factors=len(posets), dims=complex_.dims)
    return complex_


# =====================================================
# Koszul-Komplex
# =====================================================

def koszul_complex(m: PosetRep) -> RationalChainComplex:
    """
    K_P(M) als Unterkomplex von B_P(M)
    Grad s: Kern der mittleren Flächen Σ_{i=1}^{s-1} (-1)^i ∂_i auf saturierten Ketten,
    Differential (-1)^s ∂_s in Kernkoordinaten (Werte an den freien Positionen).
    """
    poset = m.poset
    if poset.top is None:
        raise NoTopElementError("Koszul-Komplex verlangt ein grösstes Element")
    if not is_upper_cm(poset):
        raise NotUpperCMError("Koszul-Komplex verlangt ein upper-CM Poset")
    grades = grading(poset)
    chains = descending_chains(poset)
    top_degree = max(chains)

    def end_of(chain: Chain) -> int:
        return chain[-1] if chain else poset.top

    saturated = {
        s: [c for c in chains[s] if all(grades[x] == i + 1 for i, x in enumerate(c))]
        for s in range(top_degree + 1)
    }
    sat_bases = [
        _ChainBasis([(c,) for c in saturated[s]], lambda ct: m.dim_at[end_of(ct[0])])
        for s in range(top_degree + 1)
    ]
    all_bases = [
        _ChainBasis([(c,) for c in chains[s]], lambda ct: m.dim_at[end_of(ct[0])])
        for s in range(top_degree + 1)
    ]

    # Kern der mittleren Flächen pro Grad
    kernels: List[RatMatrix] = []
    free_positions: List[Tuple[int, ...]] = []
    for s in range(top_degree + 1):
        source = sat_bases[s]
        if s < 2:
            kernel = RatMatrix.identity(source.total)
        else:
            target = all_bases[s - 1]
            entries: Dict[Tuple[int, int], int] = {}
            for (chain,), offset in source.offsets.items():
                for i in range(1, s):
                    face = (chain[: i - 1] + chain[i:],)
                    row_offset = target.offsets[face]
                    for j in range(source.dims[(chain,)]):
                        key = (row_offset + j, offset + j)
                        entries[key] = entries.get(key, 0) + (-1) ** i
            d0 = RatMatrix.from_entries(target.total, source.total, entries)
            kernel = kernel_basis(d0)
        kernels.append(kernel)
        free_positions.append(_unit_positions(kernel))

    boundaries: List[RatMatrix] = []
    for s in range(1, top_degree + 1):
        source, target = sat_bases[s], sat_bases[s - 1]
        last_face: Dict[Tuple[int, int], int] = {}
        for (chain,), offset in source.offsets.items():
            face = (chain[:-1],)
            if face not in target.offsets:
                continue
            matrix = m.map_for(chain[-1], end_of(chain[:-1]))
            row_offset = target.offsets[face]
            for r, c, value in matrix.entries():
                key = (row_offset + r, offset + c)
                last_face[key] = last_face.get(key, 0) + (-1) ** s * value
        d1 = RatMatrix.from_entries(target.total, source.total, last_face)
        image = d1 @ kernels[s]
        coordinates = image.select_rows(free_positions[s - 1])
        if kernels[s - 1] @ coordinates != image:
            raise InvalidInputError(f"Bild von ∂_{s} liegt nicht im Kern (Grad {s - 1})")
        boundaries.append(coordinates)

    dims = tuple(k.cols for k in kernels)
    logger.debug("koszul_complex_built", poset_size=poset.size, dims=dims)
    return RationalChainComplex(dims, tuple(boundaries))


def _unit_positions(kernel: RatMatrix) -> Tuple[int, ...]:
    """Freie Positionen einer kernel_basis-Matrix (Spalte j hat die j-te Einheit)"""
    return tuple(max(column) for column in kernel.columns())


# =====================================================
# Konstruktionen von Darstellungen
# =====================================================

def _kron(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    entries = {}
    for i, j, x in a.entries():
        for k, l, y in b.entries():
            entries[(i * b.rows + k, j * b.cols + l)] = x * y
    return RatMatrix.from_entries(a.rows * b.rows, a.cols * b.cols, entries)


def external_product(m: PosetRep, n: PosetRep) -> PosetRep:
    """M ⊠ N über P × Q"""
    poset = product_poset([m.poset, n.poset])
    sizes = [m.poset.size, n.poset.size]
    dims = tuple(
        m.dim_at[a] * n.dim_at[b]
        for a, b in (product_coordinates(sizes, x) for x in poset.elements)
    )
    maps = {}
    for x, y in poset.relations:
        a, b = product_coordinates(sizes, x)
        c, d = product_coordinates(sizes, y)
        maps[(x, y)] = _kron(m.map_for(a, c), n.map_for(b, d))
    return PosetRep(poset, dims, maps)


def restrict_rep(m: PosetRep, members: Sequence[int]) -> PosetRep:
    """Einschränkung auf das induzierte Teilposet (Reihenfolge aufsteigend)"""
    ordered = sorted(set(members))
    position = {x: i for i, x in enumerate(ordered)}
    poset = m.poset
    relations = frozenset(
        (position[a], position[b]) for a, b in poset.relations if a in position and b in position
    )
    top = position.get(poset.top) if poset.top is not None else None
    labels = tuple(poset.label(x) for x in ordered) if poset.labels else ()
    sub = FinitePoset(len(ordered), relations, top, labels, validate=False)
    maps = {(position[a], position[b]): m.map_for(a, b) for a, b in poset.relations if a in position and b in position}
    return PosetRep(sub, tuple(m.dim_at[x] for x in ordered), maps)


def random_functorial_rep(
    p: FinitePoset,
    rng: random.Random,
    ambient_dim: int = 3,
    entry_range: int = 3,
    quotient_probability: float = 0.3,
) -> PosetRep:
    """
    Zufällige funktorielle Darstellung als Subquotient
    M_p = span{v_x : x ≤ p} / span{v_x : x ≤ p, x ∈ D}
    """
    vectors: List[Vector] = []
    for _ in p.elements:
        vector = {i: rng.randint(-entry_range, entry_range) for i in range(ambient_dim)}
        vectors.append({i: v for i, v in vector.items() if v})
    killed: Set[int] = {x for x in p.elements if rng.random() < quotient_probability}

    quotients = []
    spans = []
    for x in p.elements:
        below = sorted({x} | p.below(x))
        quotient = quotient_coordinates([vectors[y] for y in below if y in killed], ambient_dim)
        reduced = [quotient.reduce(vectors[y]) for y in below]
        image = rref(RatMatrix(len(reduced), ambient_dim, {i: v for i, v in enumerate(reduced) if v}))
        quotients.append(quotient)
        spans.append(image)

    dims = tuple(span.rank for span in spans)

    def coordinates_in(y: int, vector: Vector) -> Vector:
        reduced = quotients[y].reduce(vector)
        return {i: reduced[pivot] for i, pivot in enumerate(spans[y].pivots) if pivot in reduced}

    maps = {}
    for a, b in p.relations:
        columns = [coordinates_in(b, row) for row in spans[a].rows]
        maps[(a, b)] = RatMatrix.from_columns(dims[b], columns)
    return PosetRep(p, dims, maps)


# =====================================================
# P-Mengen
# =====================================================

def pset_decompose(
    p: FinitePoset,
    f: Mapping[int, Sequence[Hashable]],
    transitions: Mapping[Tuple[int, int], Mapping[Hashable, Hashable]],
) -> List[PosetIdeal]:
    """
    Zerlegung einer P-Menge mit injektiven Übergängen in Ideal-Funktoren
    Ein Ideal I⟨x⟩ pro Element x von F(1̂), sortiert nach x.
    """
    if p.top is None:
        raise NoTopElementError("P-Menge verlangt ein grösstes Element")
    for (a, b), mapping in transitions.items():
        images = [mapping[x] for x in f.get(a, ())]
        if len(set(images)) != len(images):
            raise NonInjectiveTransitionError(f"Übergang ({a}, {b}) ist nicht injektiv")
        if not set(images) <= set(f.get(b, ())):
            raise InvalidInputError(f"Übergang ({a}, {b}) landet nicht in F({b})")

    to_top: Dict[int, Dict[Hashable, Hashable]] = {p.top: {x: x for x in f.get(p.top, ())}}
    for x in sorted(p.elements, key=lambda e: (len(p.above(e)), e)):
        if x == p.top:
            continue
        cover = p.upper_covers(x)[0]
        step = transitions.get((x, cover), {})
        to_top[x] = {e: to_top[cover][step[e]] for e in f.get(x, ())}
    for a, b in p.covers():
        step = transitions.get((a, b), {})
        for e in f.get(a, ()):
            if to_top[b][step[e]] != to_top[a][e]:
                raise FunctorialityError((a, b, p.top), "Übergänge kommutieren nicht")

    ideals = []
    for element in sorted(f.get(p.top, ()), key=repr):
        members = frozenset(x for x in p.elements if element in to_top[x].values())
        ideals.append(PosetIdeal(p, members))
    for x in p.elements:
        if len(f.get(x, ())) != sum(1 for ideal in ideals if x in ideal):
            raise InvalidInputError(f"Zerlegung rekonstruiert F({x}) nicht")
    return ideals
