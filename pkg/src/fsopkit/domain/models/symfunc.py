"""
Symmetrische Funktionen Modelle für fsopkit
Ganzzahl-Partitionen und abgeschnittene symmetrische Funktionen in der p-Basis
"""
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

from fsopkit.domain.exceptions import InvalidInputError, TruncationMismatchError

Scalar = Union[int, Fraction]


# =====================================================
# Partition
# =====================================================

class Partition(tuple):
    """Ganzzahl-Partition, Teile absteigend sortiert"""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(parts)
        for part in parts:
            if not isinstance(part, int) or isinstance(part, bool) or part <= 0:
                raise InvalidInputError(f"Ungültiger Teil {part!r} in Partition {parts}")
        return super().__new__(cls, sorted(parts, reverse=True))

    @classmethod
    def from_multiplicities(cls, multiplicities: Mapping[int, int]) -> "Partition":
        return cls(part for part, m in multiplicities.items() for _ in range(m))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Akzeptiert "2,1", "(2, 1)", "21" oder "∅" """
        cleaned = text.strip().strip("()[]")
        if cleaned in ("", "∅", "0"):
            return cls()
        try:
            if "," in cleaned:
                return cls(int(x) for x in cleaned.split(",") if x.strip())
            return cls(int(ch) for ch in cleaned)
        except ValueError as exc:
            raise InvalidInputError(f"Keine Partition: '{text}'") from exc

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def rank(self) -> int:
        """Anzahl Teile Σ m_i"""
        return len(self)

    @property
    def multiplicities(self) -> Dict[int, int]:
        return dict(sorted(Counter(self).items()))

    @property
    def factorial(self) -> int:
        """λ! = ∏ m_i!"""
        return prod(factorial(m) for m in Counter(self).values())

    @property
    def z(self) -> int:
        """z_λ = λ! ∏ i^{m_i}"""
        return self.factorial * prod(self)

    @property
    def sign(self) -> int:
        return -1 if (self.size - len(self)) % 2 else 1

    def union(self, other: Iterable[int]) -> "Partition":
        return Partition(tuple(self) + tuple(other))

    def conjugate(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for part in self if part > i) for i in range(self[0]))

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Kanonisch: nach Grösse, dann lexikographisch"""
        return (self.size, tuple(self))

    def __repr__(self) -> str:
        return f"Partition({', '.join(str(p) for p in self)})"

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self) + ")" if self else "∅"


# =====================================================
# SymFunc
# =====================================================

@dataclass(frozen=True, eq=False)
class SymFunc:
    """
    Abgeschnittene symmetrische Funktion f = Σ coeffs[λ] p_λ mit |λ| ≤ N
    Verschiedene Abschneidegrade in einer Operation sind ein Fehler.
    """
    truncation_degree: int
    coeffs: Mapping[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.truncation_degree < 0:
            raise InvalidInputError(f"Negativer Abschneidegrad {self.truncation_degree}")
        clean: Dict[Partition, Fraction] = {}
        for key, value in self.coeffs.items():
            partition = key if isinstance(key, Partition) else Partition(key)
            if partition.size > self.truncation_degree:
                raise InvalidInputError(
                    f"{partition} liegt über dem Abschneidegrad {self.truncation_degree}"
                )
            if value:
                clean[partition] = clean.get(partition, Fraction(0)) + Fraction(value)
        ordered = {k: clean[k] for k in sorted(clean, key=Partition.sort_key) if clean[k]}
        object.__setattr__(self, "coeffs", ordered)

    # -------------------------------------------------
    # Konstruktoren
    # -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "SymFunc":
        return cls(n, {})

    @classmethod
    def one(cls, n: int) -> "SymFunc":
        return cls(n, {Partition(): Fraction(1)})

    @classmethod
    def constant(cls, value: Scalar, n: int) -> "SymFunc":
        return cls(n, {Partition(): Fraction(value)})

    @classmethod
    def power_sum(cls, partition: Iterable[int], n: int) -> "SymFunc":
        """p_λ (0, falls |λ| > N)"""
        partition = Partition(partition)
        if partition.size > n:
            return cls.zero(n)
        return cls(n, {partition: Fraction(1)})

    # -------------------------------------------------
    # Zugriff
    # -------------------------------------------------

    def coefficient(self, partition: Iterable[int]) -> Fraction:
        return self.coeffs.get(Partition(partition), Fraction(0))

    def items(self) -> Iterator[Tuple[Partition, Fraction]]:
        return iter(self.coeffs.items())

    def homogeneous_part(self, degree: int) -> "SymFunc":
        return SymFunc(
            self.truncation_degree, {k: v for k, v in self.coeffs.items() if k.size == degree}
        )

    def constant_term(self) -> Fraction:
        return self.coeffs.get(Partition(), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    # -------------------------------------------------
    # Arithmetik
    # -------------------------------------------------

    def _check(self, other: "SymFunc") -> None:
        if self.truncation_degree != other.truncation_degree:
            raise TruncationMismatchError(self.truncation_degree, other.truncation_degree)

    def __add__(self, other: "SymFunc") -> "SymFunc":
        self._check(other)
        result = dict(self.coeffs)
        for key, value in other.coeffs.items():
            result[key] = result.get(key, 0) + value
        return SymFunc(self.truncation_degree, result)

    def __neg__(self) -> "SymFunc":
        return self.scale(-1)

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + (-other)

    def scale(self, factor: Scalar) -> "SymFunc":
        factor = Fraction(factor)
        return SymFunc(self.truncation_degree, {k: v * factor for k, v in self.coeffs.items()})

    def __mul__(self, other: Union["SymFunc", int, Fraction]) -> "SymFunc":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        n = self.truncation_degree
        result: Dict[Partition, Fraction] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                if a.size + b.size > n:
                    continue
                key = a.union(b)
                result[key] = result.get(key, 0) + x * y
        return SymFunc(n, result)

    def __rmul__(self, other: Union[int, Fraction]) -> "SymFunc":
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self.truncation_degree == other.truncation_degree and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.truncation_degree, tuple(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"SymFunc(N={self.truncation_degree}, 0)"
        terms = " + ".join(f"{v}*p{k}" for k, v in self.coeffs.items())
        return f"SymFunc(N={self.truncation_degree}, {terms})"
