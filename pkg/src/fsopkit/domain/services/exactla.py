"""
Exakte lineare Algebra für fsopkit
Rang, Zeilenstufenform, Kern und Homologie über Q ohne Gleitkomma
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import structlog

from fsopkit.domain.exceptions import ChainComplexError, ShapeMismatchError
from fsopkit.domain.models.linalg import RatMatrix, RationalChainComplex, Vector

logger = structlog.get_logger(__name__)

IntRow = Dict[int, int]


# =====================================================
# Ergebnis-Typen
# =====================================================

@dataclass(frozen=True)
class RowEchelonForm:
    """Reduzierte Zeilenstufenform: eine Zeile pro Pivot, Pivot-Eintrag 1"""
    cols: int
    pivots: Tuple[int, ...]
    rows: Tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def free_columns(self) -> Tuple[int, ...]:
        pivot_set = set(self.pivots)
        return tuple(c for c in range(self.cols) if c not in pivot_set)


@dataclass(frozen=True)
class QuotientBasis:
    """
    Normalform für V/R mit R gegeben durch erzeugende Vektoren
    Basis des Quotienten sind die Standardvektoren an den Nicht-Pivot-Spalten.
    """
    ambient_dim: int
    echelon: RowEchelonForm

    @property
    def free_columns(self) -> Tuple[int, ...]:
        return self.echelon.free_columns

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.echelon.rank

    def reduce(self, vector: Mapping[int, Fraction]) -> Vector:
        """Normalform: alle Pivot-Koordinaten eliminiert"""
        result = {c: Fraction(v) for c, v in vector.items() if v}
        for pivot, row in zip(self.echelon.pivots, self.echelon.rows):
            factor = result.get(pivot)
            if factor:
                for c, value in row.items():
                    updated = result.get(c, 0) - factor * value
                    if updated:
                        result[c] = updated
                    else:
                        result.pop(c, None)
        return result

    def coordinates(self, vector: Mapping[int, Fraction]) -> Vector:
        """Koordinaten im Quotienten (Index = Position unter den freien Spalten)"""
        reduced = self.reduce(vector)
        return {i: reduced[c] for i, c in enumerate(self.free_columns) if c in reduced}

    def lift(self, index: int) -> Vector:
        return {self.free_columns[index]: Fraction(1)}

    def contains(self, vector: Mapping[int, Fraction]) -> bool:
        """Liegt der Vektor im Relationenraum?"""
        return not self.reduce(vector)


# =====================================================
# Elimination
# =====================================================

def _integer_row(row: Mapping[int, Fraction]) -> IntRow:
    """Skaliert eine rationale Zeile auf teilerfremde ganze Zahlen"""
    if not row:
        return {}
    denominator = lcm(*(Fraction(v).denominator for v in row.values()))
    ints = {c: int(Fraction(v) * denominator) for c, v in row.items()}
    content = 0
    for value in ints.values():
        content = gcd(content, value)
    return {c: v // content for c, v in ints.items()}


def _combine(pivot_row: IntRow, row: IntRow, column: int) -> IntRow:
    """row := p*row - a*pivot_row, danach durch den Inhalt geteilt"""
    p = pivot_row[column]
    a = row[column]
    result: IntRow = {c: p * v for c, v in row.items()}
    for c, v in pivot_row.items():
        updated = result.get(c, 0) - a * v
        if updated:
            result[c] = updated
        else:
            result.pop(c, None)
    content = 0
    for value in result.values():
        content = gcd(content, value)
    if content > 1:
        result = {c: v // content for c, v in result.items()}
    return result


def _fraction_free_echelon(m: RatMatrix) -> Dict[int, IntRow]:
    """
    Bruchfreie Elimination (ganzzahlige Zeilen, Inhalt gekürzt)
    Zeilen werden in aufsteigender Reihenfolge verarbeitet; der Pivot einer
    neuen Zeile ist ihre kleinste Spalte ungleich 0 nach Reduktion.
    """
    pivots: Dict[int, IntRow] = {}
    for r in range(m.rows):
        row = _integer_row(m.row(r))
        while row:
            column = min(row)
            pivot_row = pivots.get(column)
            if pivot_row is None:
                pivots[column] = row
                break
            row = _combine(pivot_row, row, column)
    return pivots


def rank(m: RatMatrix) -> int:
    """Rang über Q"""
    return len(_fraction_free_echelon(m))


def rref(m: RatMatrix, column_order: Optional[Sequence[int]] = None) -> RowEchelonForm:
    """
    Reduzierte Zeilenstufenform

    Args:
        m: Matrix
        column_order: optionale Spaltenreihenfolge für die Pivot-Wahl
            (Pivots werden auf die Originalspalten zurückgerechnet)
    """
    if column_order is not None:
        if sorted(column_order) != list(range(m.cols)):
            raise ShapeMismatchError("column_order ist keine Permutation der Spalten")
        permuted = m.select_columns(column_order)
        inner = rref(permuted)
        back = list(column_order)
        rows = tuple(
            {back[c]: v for c, v in sorted(row.items(), key=lambda item: back[item[0]])}
            for row in inner.rows
        )
        return RowEchelonForm(m.cols, tuple(back[c] for c in inner.pivots), rows)

    echelon = _fraction_free_echelon(m)
    pivot_columns = sorted(echelon)
    rows: Dict[int, Vector] = {}
    for column in pivot_columns:
        int_row = echelon[column]
        lead = int_row[column]
        rows[column] = {c: Fraction(v, lead) for c, v in int_row.items()}

    # Rückwärts-Elimination
    for column in reversed(pivot_columns):
        pivot_row = rows[column]
        for other in pivot_columns:
            if other == column:
                continue
            target = rows[other]
            factor = target.get(column)
            if not factor:
                continue
            for c, value in pivot_row.items():
                updated = target.get(c, 0) - factor * value
                if updated:
                    target[c] = updated
                else:
                    target.pop(c, None)

    ordered_rows = tuple(dict(sorted(rows[c].items())) for c in pivot_columns)
    return RowEchelonForm(m.cols, tuple(pivot_columns), ordered_rows)


def kernel_basis(m: RatMatrix) -> RatMatrix:
    """
    Basis des Kerns als Spalten
    Freie Spalten aufsteigend, Eintrag 1 an der freien Position.
    """
    form = rref(m)
    columns: List[Vector] = []
    for free in form.free_columns:
        vector: Vector = {free: Fraction(1)}
        for pivot, row in zip(form.pivots, form.rows):
            value = row.get(free)
            if value:
                vector[pivot] = -value
        columns.append(vector)
    return RatMatrix.from_columns(m.cols, columns)


def quotient_coordinates(relations: Sequence[Mapping[int, Fraction]], ambient_dim: int) -> QuotientBasis:
    """Normalform-Helfer für den Quotienten Q^ambient_dim / span(relations)"""
    matrix = RatMatrix(len(relations), ambient_dim, {i: dict(v) for i, v in enumerate(relations) if v})
    return QuotientBasis(ambient_dim, rref(matrix))


def solve_in_span(columns: Sequence[Mapping[int, Fraction]], vector: Mapping[int, Fraction], dim: int) -> Optional[List[Fraction]]:
    """
    Löst Σ x_i columns[i] = vector

    Returns:
        Koeffizienten (freie Variablen 0) oder None, falls vector nicht im Spann liegt
    """
    n = len(columns)
    augmented = RatMatrix.from_columns(dim, list(columns) + [vector])
    form = rref(augmented)
    if n in form.pivots:
        return None
    solution = [Fraction(0)] * n
    for pivot, row in zip(form.pivots, form.rows):
        solution[pivot] = row.get(n, Fraction(0))
    return solution


# =====================================================
# Kettenkomplexe
# =====================================================

def check_boundaries(c: RationalChainComplex) -> None:
    """Prüft ∂_{s-1}∘∂_s = 0 für alle s"""
    for s in range(2, c.top_degree + 1):
        composite = c.boundary(s - 1) @ c.boundary(s)
        if not composite.is_zero():
            raise ChainComplexError(s, composite.nnz)


def homology_dims(c: RationalChainComplex) -> Tuple[int, ...]:
    """Dimensionen dim H_s für s = 0..top"""
    check_boundaries(c)
    ranks = [0] + [rank(c.boundary(s)) for s in range(1, c.top_degree + 1)] + [0]
    dims = tuple(c.dims[s] - ranks[s] - ranks[s + 1] for s in range(len(c.dims)))
    logger.debug("homology_computed", dims=c.dims, homology=dims)
    return dims


def is_exact(c: RationalChainComplex, degrees: Optional[range] = None) -> bool:
    """True, wenn alle Homologiegruppen im Bereich verschwinden"""
    homology = homology_dims(c)
    if degrees is None:
        degrees = range(len(homology))
    return all(homology[s] == 0 for s in degrees if 0 <= s < len(homology))


def euler_characteristic(c: RationalChainComplex) -> int:
    return sum((-1) ** s * dim for s, dim in enumerate(c.dims))
