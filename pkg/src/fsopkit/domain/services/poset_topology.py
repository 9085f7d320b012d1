"""
Poset-Topologie für fsopkit
Relative Kettenkomplexe (N[x,1̂], Z), Möbius-Zahlen, Whitney-Polynome und upper-CM
"""
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import networkx as nx
import structlog

from fsopkit.domain.exceptions import (
    IncomparableElementError,
    NoTopElementError,
    NotGradedError,
)
from fsopkit.domain.models.linalg import RatMatrix, RationalChainComplex
from fsopkit.domain.models.poset import FinitePoset, GradingData, IntPolynomial
from fsopkit.domain.services.exactla import homology_dims

logger = structlog.get_logger(__name__)

Chain = Tuple[int, ...]


def _require_top(p: FinitePoset) -> int:
    if p.top is None:
        raise NoTopElementError("Poset hat kein grösstes Element")
    return p.top


def _require_below_top(p: FinitePoset, x: int) -> int:
    top = _require_top(p)
    if not p.leq(x, top):
        raise IncomparableElementError(f"Element {x} ist nicht ≤ top")
    return top


def _top_down_order(p: FinitePoset) -> List[int]:
    """Elemente so sortiert, dass grössere vor kleineren kommen"""
    return sorted(p.elements, key=lambda x: (len(p.above(x)), x))


# =====================================================
# Graduierung & Länge
# =====================================================

@lru_cache(maxsize=64)
def grading(p: FinitePoset) -> Optional[GradingData]:
    """Rang von oben über Überdeckungen; None wenn nicht graduiert oder kein top"""
    if p.top is None:
        return None
    rank_of: Dict[int, int] = {}
    for x in _top_down_order(p):
        if x == p.top:
            rank_of[x] = 0
            continue
        candidates = {rank_of[y] + 1 for y in p.upper_covers(x)}
        if len(candidates) != 1:
            return None
        rank_of[x] = candidates.pop()
    return GradingData(tuple(rank_of[x] for x in p.elements))


def is_graded(p: FinitePoset) -> bool:
    return grading(p) is not None


def poset_length(p: FinitePoset) -> int:
    """Anzahl Elemente einer längsten Kette"""
    if p.size == 0:
        return 0
    return nx.dag_longest_path_length(p.graph) + 1


# =====================================================
# Ketten
# =====================================================

def descending_chains(p: FinitePoset, max_len: Optional[int] = None) -> Dict[int, List[Chain]]:
    """
    Ketten 1̂ > p_1 > … > p_s, gruppiert nach s
    Innerhalb eines Grades lexikographisch nach Elementindizes.
    """
    top = _require_top(p)
    chains: Dict[int, List[Chain]] = {0: [()]}

    def extend(chain: List[int], last: int):
        s = len(chain)
        if max_len is not None and s >= max_len:
            return
        for nxt in sorted(p.below(last)):
            chain.append(nxt)
            chains.setdefault(s + 1, []).append(tuple(chain))
            extend(chain, nxt)
            chain.pop()

    extend([], top)
    return chains


def _interior_chains(p: FinitePoset, x: int, top: int) -> Dict[int, List[Chain]]:
    """Ketten top > q_1 > … > q_{s-1} > x, nach s gruppiert (innere Elemente)"""
    interior = set(p.below(top)) & set(p.above(x))
    chains: Dict[int, List[Chain]] = {1: [()]}

    def extend(chain: List[int], last: int):
        for nxt in sorted(interior & p.below(last)):
            chain.append(nxt)
            chains.setdefault(len(chain) + 1, []).append(tuple(chain))
            extend(chain, nxt)
            chain.pop()

    extend([], top)
    return chains


@lru_cache(maxsize=64)
def _chain_counts_from_top(p: FinitePoset) -> Tuple[Tuple[int, ...], ...]:
    """counts[y][k] = Anzahl Ketten top = c_0 > … > c_k = y"""
    top = _require_top(p)
    order = _top_down_order(p)
    counts: Dict[int, List[int]] = {}
    for y in order:
        if y == top:
            counts[y] = [1]
            continue
        row: List[int] = [0]
        for z in p.above(y):
            for k, value in enumerate(counts[z]):
                if len(row) <= k + 1:
                    row.extend([0] * (k + 2 - len(row)))
                row[k + 1] += value
        counts[y] = row
    return tuple(tuple(counts[x]) for x in p.elements)


def pair_chain_dims(p: FinitePoset, x: int) -> Tuple[int, ...]:
    """Dimensionen des Paarkomplexes (N[x,1̂], Z) durch Kettenzählung"""
    _require_below_top(p, x)
    return _chain_counts_from_top(p)[x]


# =====================================================
# Paarkomplex & Möbius
# =====================================================

def interval_pair_complex(p: FinitePoset, x: int) -> RationalChainComplex:
    """
    Simplizialer Kettenkomplex des Paares (N[x,1̂], Z_[x,1̂])
    Grad s: Ketten x = q_s < … < q_0 = 1̂ mit beiden Endpunkten,
    Differential Σ_{i=1}^{s-1} (-1)^i (q_i weglassen).
    """
    top = _require_below_top(p, x)
    if x == top:
        return RationalChainComplex.concentrated(1, 0)

    by_degree = _interior_chains(p, x, top)
    top_degree = max(by_degree)
    dims = [0] + [len(by_degree.get(s, [])) for s in range(1, top_degree + 1)]
    index = {s: {chain: i for i, chain in enumerate(by_degree.get(s, []))} for s in range(1, top_degree + 1)}

    boundaries = [RatMatrix.zeros(0, dims[1])]
    for s in range(2, top_degree + 1):
        entries: Dict[Tuple[int, int], int] = {}
        for col, chain in enumerate(by_degree[s]):
            for i in range(1, s):
                face = chain[: i - 1] + chain[i:]
                row = index[s - 1][face]
                entries[(row, col)] = entries.get((row, col), 0) + (-1) ** i
        boundaries.append(RatMatrix.from_entries(dims[s - 1], dims[s], entries))
    return RationalChainComplex(tuple(dims), tuple(boundaries))


def mobius(p: FinitePoset, x: int) -> int:
    """μ(x) als Euler-Charakteristik des Paarkomplexes"""
    dims = pair_chain_dims(p, x)
    return sum((-1) ** s * d for s, d in enumerate(dims))


def mobius_all(p: FinitePoset) -> Tuple[int, ...]:
    return tuple(mobius(p, x) for x in p.elements)


@lru_cache(maxsize=64)
def _recursive_table(p: FinitePoset) -> Tuple[int, ...]:
    top = _require_top(p)
    values: Dict[int, int] = {}
    for y in _top_down_order(p):
        values[y] = 1 if y == top else -sum(values[z] for z in p.above(y))
    return tuple(values[x] for x in p.elements)


def mobius_recursive(p: FinitePoset, x: int) -> int:
    """Klassische Rekursion μ(x,1̂) = -Σ_{x<y≤1̂} μ(y,1̂)"""
    _require_below_top(p, x)
    return _recursive_table(p)[x]


def whitney_polynomial(p: FinitePoset) -> IntPolynomial:
    """W_P(t) = Σ μ(p) t^{r(p)}"""
    _require_top(p)
    grades = grading(p)
    if grades is None:
        raise NotGradedError("Whitney-Polynom verlangt ein graduiertes Poset")
    coefficients = [0] * (grades.max_rank + 1)
    for x in p.elements:
        coefficients[grades[x]] += mobius(p, x)
    result = IntPolynomial(tuple(coefficients))
    logger.debug("whitney_computed", size=p.size, polynomial=str(result))
    return result


@lru_cache(maxsize=64)
def is_upper_cm(p: FinitePoset) -> bool:
    """Graduiert mit top und jede Paarhomologie in Grad r(x) konzentriert"""
    if p.top is None:
        return False
    grades = grading(p)
    if grades is None:
        return False
    for x in p.elements:
        homology = homology_dims(interval_pair_complex(p, x))
        r = grades[x]
        if any(dim and s != r for s, dim in enumerate(homology)):
            logger.debug("upper_cm_failed", element=x, homology=homology)
            return False
    return True


def reduced_mobius(p: FinitePoset, x: int) -> int:
    """μ̃(x) = (-1)^{r(x)} μ(x)"""
    grades = grading(p)
    if grades is None:
        raise NotGradedError("μ̃ verlangt ein graduiertes Poset")
    return (-1) ** grades[x] * mobius(p, x)
