"""
Lineare Algebra Modelle für fsopkit
Dünnbesetzte exakte rationale Matrizen und Kettenkomplexe über Q
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from fsopkit.domain.exceptions import InvalidInputError, ShapeMismatchError

Rat = Fraction
Scalar = Union[int, Fraction]
Vector = Dict[int, Fraction]


def as_rat(value: Union[int, str, Fraction]) -> Fraction:
    """Wandelt int, "num/den" oder Fraction in eine gekürzte Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInputError(f"Kein rationaler Wert: {value!r}")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"Kein rationaler Wert: {value!r}") from exc
    raise InvalidInputError(f"Kein rationaler Wert: {value!r}")


def format_rat(value: Fraction) -> str:
    """Kanonische Textform "num/den" bzw. "num" """
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# =====================================================
# RatMatrix
# =====================================================

@dataclass(frozen=True, eq=False)
class RatMatrix:
    """
    Dünnbesetzte Matrix über Q
    Zeilenweise gespeichert (row -> col -> Wert), fehlende Einträge sind 0.
    Iteration immer zeilenweise mit aufsteigenden Indizes.
    """
    rows: int
    cols: int
    data: Mapping[int, Mapping[int, Fraction]] = field(default_factory=dict)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatchError(f"Negative Dimension {self.rows}x{self.cols}")
        clean: Dict[int, Dict[int, Fraction]] = {}
        for r in sorted(self.data):
            if not 0 <= r < self.rows:
                raise ShapeMismatchError(f"Zeile {r} ausserhalb von {self.rows}")
            row = {}
            for c in sorted(self.data[r]):
                if not 0 <= c < self.cols:
                    raise ShapeMismatchError(f"Spalte {c} ausserhalb von {self.cols}")
                value = self.data[r][c]
                if value:
                    row[c] = value if isinstance(value, Fraction) else Fraction(value)
            if row:
                clean[r] = row
        object.__setattr__(self, "data", clean)

    # -------------------------------------------------
    # Konstruktoren
    # -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, {i: {i: Fraction(1)} for i in range(n)})

    @classmethod
    def from_entries(
        cls, rows: int, cols: int, entries: Mapping[Tuple[int, int], Scalar]
    ) -> "RatMatrix":
        data: Dict[int, Dict[int, Fraction]] = {}
        for (r, c), value in entries.items():
            if value:
                data.setdefault(r, {})[c] = Fraction(value)
        return cls(rows, cols, data)

    @classmethod
    def from_rows(cls, dense: Sequence[Sequence[Scalar]], cols: int = None) -> "RatMatrix":
        """Erstellt Matrix aus dichten Zeilen"""
        n_rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if dense else 0
        data = {}
        for r, row in enumerate(dense):
            if len(row) != cols:
                raise ShapeMismatchError(f"Zeile {r} hat {len(row)} statt {cols} Spalten")
            entries = {c: Fraction(v) for c, v in enumerate(row) if v}
            if entries:
                data[r] = entries
        return cls(n_rows, cols, data)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Mapping[int, Scalar]]) -> "RatMatrix":
        """Erstellt Matrix aus dünnbesetzten Spaltenvektoren"""
        data: Dict[int, Dict[int, Fraction]] = {}
        for c, column in enumerate(columns):
            for r, value in column.items():
                if value:
                    data.setdefault(r, {})[c] = Fraction(value)
        return cls(rows, len(columns), data)

    @classmethod
    def block_diagonal(cls, blocks: Sequence["RatMatrix"]) -> "RatMatrix":
        data: Dict[int, Dict[int, Fraction]] = {}
        row_offset = col_offset = 0
        for block in blocks:
            for r, row in block.data.items():
                data[row_offset + r] = {col_offset + c: v for c, v in row.items()}
            row_offset += block.rows
            col_offset += block.cols
        return cls(row_offset, col_offset, data)

    # -------------------------------------------------
    # Zugriff
    # -------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self.data.values())

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        r, c = key
        return self.data.get(r, {}).get(c, Fraction(0))

    def row(self, r: int) -> Mapping[int, Fraction]:
        return self.data.get(r, {})

    def entries(self) -> Iterator[Tuple[int, int, Fraction]]:
        """Alle Einträge ungleich 0, zeilenweise aufsteigend"""
        for r, row in self.data.items():
            for c, value in row.items():
                yield r, c, value

    def columns(self) -> List[Vector]:
        cols: List[Vector] = [dict() for _ in range(self.cols)]
        for r, c, value in self.entries():
            cols[c][r] = value
        return cols

    def column(self, c: int) -> Vector:
        return {r: row[c] for r, row in self.data.items() if c in row}

    def to_dense(self) -> List[List[Fraction]]:
        return [[self[r, c] for c in range(self.cols)] for r in range(self.rows)]

    def is_zero(self) -> bool:
        return not self.data

    # -------------------------------------------------
    # Arithmetik
    # -------------------------------------------------

    def transpose(self) -> "RatMatrix":
        data: Dict[int, Dict[int, Fraction]] = {}
        for r, c, value in self.entries():
            data.setdefault(c, {})[r] = value
        return RatMatrix(self.cols, self.rows, data)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ShapeMismatchError(f"{self.shape} @ {other.shape}")
        data: Dict[int, Dict[int, Fraction]] = {}
        for r, row in self.data.items():
            acc: Dict[int, Fraction] = {}
            for j, a in row.items():
                for k, b in other.data.get(j, {}).items():
                    acc[k] = acc.get(k, 0) + a * b
            acc = {k: v for k, v in acc.items() if v}
            if acc:
                data[r] = acc
        return RatMatrix(self.rows, other.cols, data)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ShapeMismatchError(f"{self.shape} + {other.shape}")
        data = {r: dict(row) for r, row in self.data.items()}
        for r, c, value in other.entries():
            data.setdefault(r, {})[c] = data.get(r, {}).get(c, 0) + value
        return RatMatrix(self.rows, self.cols, data)

    def __neg__(self) -> "RatMatrix":
        return self.scale(-1)

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def scale(self, factor: Scalar) -> "RatMatrix":
        factor = Fraction(factor)
        if not factor:
            return RatMatrix.zeros(self.rows, self.cols)
        return RatMatrix(
            self.rows,
            self.cols,
            {r: {c: v * factor for c, v in row.items()} for r, row in self.data.items()},
        )

    def apply(self, vector: Mapping[int, Fraction]) -> Vector:
        """Matrix mal Spaltenvektor (dünnbesetzt)"""
        result: Vector = {}
        for r, row in self.data.items():
            total = sum((value * vector[c] for c, value in row.items() if c in vector), Fraction(0))
            if total:
                result[r] = total
        return result

    def select_columns(self, indices: Sequence[int]) -> "RatMatrix":
        position = {c: i for i, c in enumerate(indices)}
        data: Dict[int, Dict[int, Fraction]] = {}
        for r, c, value in self.entries():
            if c in position:
                data.setdefault(r, {})[position[c]] = value
        return RatMatrix(self.rows, len(indices), data)

    def select_rows(self, indices: Sequence[int]) -> "RatMatrix":
        data = {i: dict(self.data[r]) for i, r in enumerate(indices) if r in self.data}
        return RatMatrix(len(indices), self.cols, data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, tuple(self.entries())))

    def __repr__(self) -> str:
        return f"RatMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


# =====================================================
# RationalChainComplex
# =====================================================

@dataclass(frozen=True)
class RationalChainComplex:
    """
    Kettenkomplex über Q
    dims[s] ist die Dimension in homologischem Grad s,
    boundaries[s-1] ist der Rand ∂_s: Grad s -> Grad s-1 (Form dims[s-1] x dims[s]).
    """
    dims: Tuple[int, ...]
    boundaries: Tuple[RatMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if len(self.boundaries) != max(len(self.dims) - 1, 0):
            raise ShapeMismatchError(
                f"{len(self.dims)} Grade verlangen {max(len(self.dims) - 1, 0)} Ränder"
            )
        for s, boundary in enumerate(self.boundaries, start=1):
            expected = (self.dims[s - 1], self.dims[s])
            if boundary.shape != expected:
                raise ShapeMismatchError(f"∂_{s} hat Form {boundary.shape}, erwartet {expected}")

    @classmethod
    def from_boundaries(cls, dims: Iterable[int], boundaries: Iterable[RatMatrix]) -> "RationalChainComplex":
        return cls(tuple(dims), tuple(boundaries))

    @classmethod
    def concentrated(cls, dim: int, degree: int = 0) -> "RationalChainComplex":
        """Komplex mit einem einzigen Term in gegebenem Grad"""
        dims = tuple([0] * degree + [dim])
        boundaries = tuple(RatMatrix.zeros(dims[s - 1], dims[s]) for s in range(1, len(dims)))
        return cls(dims, boundaries)

    @property
    def top_degree(self) -> int:
        return len(self.dims) - 1

    def dim(self, s: int) -> int:
        return self.dims[s] if 0 <= s < len(self.dims) else 0

    def boundary(self, s: int) -> RatMatrix:
        """∂_s mit Nullabbildungen ausserhalb des Trägers"""
        if 1 <= s < len(self.dims):
            return self.boundaries[s - 1]
        return RatMatrix.zeros(self.dim(s - 1), self.dim(s))
