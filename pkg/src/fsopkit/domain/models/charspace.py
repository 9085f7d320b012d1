"""
Charakterraum Modelle für fsopkit
Exponential-Profile A = 1^{a_1} 2^{a_2} … und Klassenfunktionen (X über ν) A^{X-ν}
"""
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Tuple

from sympy.ntheory import divisors

from fsopkit.domain.exceptions import InvalidInputError
from fsopkit.domain.models.symfunc import Partition


@dataclass(frozen=True)
class ExpProfile:
    """
    A = 1^{a_1} 2^{a_2} …, gespeichert als (a_1, a_2, …) ohne Nullen am Ende
    Legt u_n = p_n - Σ_{d|n} d·a_d fest.
    """
    multiplicities: Tuple[int, ...] = ()

    def __post_init__(self):
        values = list(self.multiplicities)
        if any(not isinstance(a, int) or a < 0 for a in values):
            raise InvalidInputError(f"Ungültige Vielfachheiten {tuple(values)}")
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "multiplicities", tuple(values))

    @classmethod
    def from_partition(cls, partition: Iterable[int]) -> "ExpProfile":
        partition = Partition(partition)
        if not partition:
            return cls()
        counts = partition.multiplicities
        return cls(tuple(counts.get(i, 0) for i in range(1, partition[0] + 1)))

    @classmethod
    def from_mapping(cls, counts: Mapping[int, int]) -> "ExpProfile":
        top = max((i for i, a in counts.items() if a), default=0)
        return cls(tuple(counts.get(i, 0) for i in range(1, top + 1)))

    @classmethod
    def parse(cls, text: str) -> "ExpProfile":
        """Akzeptiert "0", "1^2 2^1" oder eine Partition wie "2,1" """
        cleaned = text.strip()
        if cleaned in ("", "0", "∅"):
            return cls()
        if "^" not in cleaned:
            return cls.from_partition(Partition.parse(cleaned))
        counts = {}
        try:
            for token in cleaned.replace(",", " ").split():
                part, _, exponent = token.partition("^")
                counts[int(part)] = counts.get(int(part), 0) + int(exponent or 1)
        except ValueError as exc:
            raise InvalidInputError(f"Kein Profil: '{text}'") from exc
        if any(i < 1 for i in counts):
            raise InvalidInputError(f"Kein Profil: '{text}'")
        return cls.from_mapping(counts)

    def a(self, i: int) -> int:
        return self.multiplicities[i - 1] if 1 <= i <= len(self.multiplicities) else 0

    @property
    def size(self) -> int:
        """|A| = Σ i·a_i"""
        return sum(i * a for i, a in enumerate(self.multiplicities, start=1))

    @property
    def rank(self) -> int:
        return sum(self.multiplicities)

    def as_partition(self) -> Partition:
        return Partition.from_multiplicities(
            {i: a for i, a in enumerate(self.multiplicities, start=1)}
        )

    def fixed_points(self, n: int) -> int:
        """Σ_{d|n} d·a_d"""
        return sum(d * self.a(d) for d in divisors(n))

    def scaled(self, factor: int) -> "ExpProfile":
        """factor · A im Monoid der Partitionen"""
        return ExpProfile(tuple(factor * a for a in self.multiplicities))

    def __str__(self) -> str:
        if not self.multiplicities:
            return "0"
        return " ".join(f"{i}^{a}" for i, a in enumerate(self.multiplicities, start=1) if a)


@dataclass(frozen=True)
class ClassFnSpec:
    """Klassenfunktion (X über ν) A^{X-ν}"""
    nu: Partition = field(default_factory=Partition)
    profile: ExpProfile = field(default_factory=ExpProfile)

    def __post_init__(self):
        object.__setattr__(self, "nu", Partition(self.nu))

    def __str__(self) -> str:
        return f"(X über {self.nu}) A^(X-ν), A = {self.profile}"
