"""
Verbands-Familien für fsopkit
Boolesche Verbände, Unterraumverbände über F_q, Partitionsverbände und Produkte
"""
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import structlog

from fsopkit.domain.exceptions import InvalidInputError
from fsopkit.domain.models.poset import FinitePoset
from fsopkit.domain.policies.enumeration_bounds import BoundsPolicy, EnumerationBounds

logger = structlog.get_logger(__name__)

AssignmentVector = Tuple[int, ...]
Blocks = Tuple[Tuple[int, ...], ...]


# =====================================================
# Boolescher Verband
# =====================================================

def boolean_lattice(n: int, bounds: EnumerationBounds = None) -> FinitePoset:
    """
    Teilmengen von {1..n} nach Inklusion
    Element i ist die Teilmenge mit Bitmaske i, top = volle Menge.
    """
    BoundsPolicy(bounds).require("n", n, (bounds or EnumerationBounds()).boolean_max_n)
    size = 1 << n
    full = size - 1
    relations = set()
    for mask in range(size):
        rest = full & ~mask
        sub = rest
        while sub:
            relations.add((mask, mask | sub))
            sub = (sub - 1) & rest
    labels = tuple(_subset_label(mask, n) for mask in range(size))
    logger.debug("boolean_lattice_built", n=n, size=size)
    return FinitePoset(size, frozenset(relations), full, labels, validate=False)


def _subset_label(mask: int, n: int) -> str:
    members = [str(i + 1) for i in range(n) if mask >> i & 1]
    return "{" + ",".join(members) + "}"


# =====================================================
# Endliche Körper F_q (q ∈ {2, 3, 4, 5})
# =====================================================

# F_4 = {0, 1, α, α+1} kodiert als 0, 1, 2, 3; Addition ist XOR
_GF4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)


class FiniteField:
    """Arithmetik in F_q für kleine q"""

    def __init__(self, q: int):
        if q not in (2, 3, 4, 5):
            raise InvalidInputError(f"q={q} ist keine unterstützte Primzahlpotenz")
        self.q = q

    def add(self, a: int, b: int) -> int:
        if self.q == 4:
            return a ^ b
        return (a + b) % self.q

    def mul(self, a: int, b: int) -> int:
        if self.q == 4:
            return _GF4_MUL[a][b]
        return (a * b) % self.q

    def span(self, rows: Sequence[Tuple[int, ...]], n: int) -> FrozenSet[Tuple[int, ...]]:
        """Alle Linearkombinationen der Zeilen"""
        vectors = {tuple([0] * n)}
        for row in rows:
            vectors = {
                tuple(self.add(v[i], self.mul(c, row[i])) for i in range(n))
                for v in vectors
                for c in range(self.q)
            }
        return frozenset(vectors)


def _echelon_matrices(q: int, n: int, k: int) -> List[Tuple[Tuple[int, ...], ...]]:
    """Alle reduzierten Zeilenstufenmatrizen vom Rang k über F_q"""
    result = []
    for pivots in combinations(range(n), k):
        free_slots = [
            (row, col)
            for row, pivot in enumerate(pivots)
            for col in range(pivot + 1, n)
            if col not in pivots
        ]
        for values in product(range(q), repeat=len(free_slots)):
            matrix = [[0] * n for _ in range(k)]
            for row, pivot in enumerate(pivots):
                matrix[row][pivot] = 1
            for (row, col), value in zip(free_slots, values):
                matrix[row][col] = value
            result.append(tuple(tuple(r) for r in matrix))
    return sorted(result)


def subspace_lattice(q: int, n: int, bounds: EnumerationBounds = None) -> FinitePoset:
    """
    Unterräume von F_q^n nach Inklusion
    Reihenfolge: nach Dimension, dann lexikographisch nach Stufenmatrix.
    """
    bounds = bounds or EnumerationBounds()
    policy = BoundsPolicy(bounds)
    policy.require_field(q)
    policy.require("n", n, bounds.subspace_max_n)
    field = FiniteField(q)

    matrices = [m for k in range(n + 1) for m in _echelon_matrices(q, n, k)]
    spans = [field.span(m, n) for m in matrices]
    relations = set()
    for a, small in enumerate(matrices):
        for b, large in enumerate(matrices):
            if len(small) < len(large) and all(row in spans[b] for row in small):
                relations.add((a, b))
    labels = tuple(
        "<" + ",".join("".join(str(x) for x in row) for row in m) + ">" if m else "0"
        for m in matrices
    )
    logger.debug("subspace_lattice_built", q=q, n=n, size=len(matrices))
    return FinitePoset(len(matrices), frozenset(relations), len(matrices) - 1, labels, validate=False)


# =====================================================
# Partitionsverband
# =====================================================

@lru_cache(maxsize=None)
def set_partitions(n: int) -> Tuple[AssignmentVector, ...]:
    """
    Alle Mengenpartitionen von {0..n-1} als Block-Zuordnungsvektoren
    Blöcke nach kleinstem Element nummeriert, lexikographisch sortiert
    (der indiskrete zuerst, der diskrete zuletzt).
    """
    result: List[AssignmentVector] = []

    def extend(prefix: List[int], highest: int):
        if len(prefix) == n:
            result.append(tuple(prefix))
            return
        for block in range(highest + 2):
            prefix.append(block)
            extend(prefix, max(highest, block))
            prefix.pop()

    if n == 0:
        return ((),)
    extend([0], 0)
    return tuple(result)


@lru_cache(maxsize=None)
def partition_index(n: int) -> Dict[AssignmentVector, int]:
    return {vector: i for i, vector in enumerate(set_partitions(n))}


def blocks_of(vector: AssignmentVector) -> Blocks:
    """Blöcke (0-basiert) nach kleinstem Element sortiert"""
    blocks: List[List[int]] = []
    for position, block in enumerate(vector):
        if block == len(blocks):
            blocks.append([])
        blocks[block].append(position)
    return tuple(tuple(b) for b in blocks)


def canonical_vector(blocks: Sequence[Sequence[int]], n: int) -> AssignmentVector:
    """Zuordnungsvektor zu beliebig sortierten Blöcken"""
    ordered = sorted((sorted(b) for b in blocks if b), key=lambda b: b[0])
    vector = [0] * n
    for index, block in enumerate(ordered):
        for position in block:
            vector[position] = index
    return tuple(vector)


def partition_label(vector: AssignmentVector) -> str:
    """Darstellung wie 1|23|4 (1-basiert)"""
    return "|".join("".join(str(p + 1) for p in block) for block in blocks_of(vector))


def parse_partition_label(label: str, n: int) -> AssignmentVector:
    blocks = [[int(ch) - 1 for ch in part] for part in label.split("|")]
    positions = sorted(p for b in blocks for p in b)
    if positions != list(range(n)):
        raise InvalidInputError(f"'{label}' ist keine Partition von {n} Elementen")
    return canonical_vector(blocks, n)


def refines(finer: AssignmentVector, coarser: AssignmentVector) -> bool:
    """True, wenn jeder Block von finer in einem Block von coarser liegt"""
    image: Dict[int, int] = {}
    for a, b in zip(finer, coarser):
        if image.setdefault(a, b) != b:
            return False
    return True


@lru_cache(maxsize=None)
def _partition_lattice_cached(n: int) -> FinitePoset:
    vectors = set_partitions(n)
    index = partition_index(n)
    relations = set()
    for q_index, q in enumerate(vectors):
        k = max(q) + 1 if q else 0
        # Vergröberungen von q entsprechen Partitionen der Blöcke von q
        for merge in set_partitions(k):
            p = canonical_vector(
                [[pos for pos in range(n) if merge[q[pos]] == block] for block in range(max(merge) + 1)],
                n,
            ) if k else ()
            p_index = index[p]
            if p_index != q_index:
                relations.add((p_index, q_index))
    labels = tuple(partition_label(v) for v in vectors)
    top = len(vectors) - 1
    logger.debug("partition_lattice_built", n=n, size=len(vectors))
    return FinitePoset(len(vectors), frozenset(relations), top, labels, validate=False)


def partition_lattice(n: int, bounds: EnumerationBounds = None) -> FinitePoset:
    """
    Partitionsverband P(n)
    p ≤ q genau dann, wenn q feiner ist als p; top = diskrete Partition.
    """
    BoundsPolicy(bounds).require("n", n, (bounds or EnumerationBounds()).partition_max_n)
    return _partition_lattice_cached(n)


# =====================================================
# Produkte
# =====================================================

def product_index(sizes: Sequence[int], coordinates: Sequence[int]) -> int:
    """Gemischte Basis, erster Faktor höchstwertig"""
    index = 0
    for size, c in zip(sizes, coordinates):
        index = index * size + c
    return index


def product_coordinates(sizes: Sequence[int], index: int) -> Tuple[int, ...]:
    coordinates = []
    for size in reversed(sizes):
        index, c = divmod(index, size)
        coordinates.append(c)
    return tuple(reversed(coordinates))


def product_poset(posets: Sequence[FinitePoset]) -> FinitePoset:
    """Komponentenweise Ordnung auf dem Produkt"""
    if not posets:
        raise InvalidInputError("Produkt ohne Faktoren")
    if any(p.size == 0 for p in posets):
        raise InvalidInputError("Leerer Faktor im Produkt")
    sizes = [p.size for p in posets]
    total = 1
    for s in sizes:
        total *= s

    relations = set()
    for a in range(total):
        coords = product_coordinates(sizes, a)
        ups = [sorted({c} | set(p.above(c))) for p, c in zip(posets, coords)]
        for target in product(*ups):
            b = product_index(sizes, target)
            if b != a:
                relations.add((a, b))

    top: Optional[int] = None
    if all(p.top is not None for p in posets):
        top = product_index(sizes, [p.top for p in posets])
    labels = tuple(
        "(" + ", ".join(p.label(c) for p, c in zip(posets, product_coordinates(sizes, i))) + ")"
        for i in range(total)
    )
    return FinitePoset(total, frozenset(relations), top, labels, validate=False)
