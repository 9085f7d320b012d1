"""
Darstellungs-Modelle für fsopkit
Darstellungen endlicher Posets (p ↦ M_p) und obere Ideale
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Tuple

from fsopkit.domain.exceptions import InvalidInputError, PosetStructureError
from fsopkit.domain.models.linalg import RatMatrix
from fsopkit.domain.models.poset import FinitePoset


@dataclass(frozen=True)
class PosetIdeal:
    """Oberes Ideal: x ∈ members und y ≥ x impliziert y ∈ members"""
    poset: FinitePoset
    members: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        for x in self.members:
            if not 0 <= x < self.poset.size:
                raise InvalidInputError(f"Element {x} ausserhalb des Posets")
            missing = self.poset.above(x) - self.members
            if missing:
                raise PosetStructureError(
                    f"Ideal nicht nach oben abgeschlossen: {x} enthalten, {min(missing)} fehlt"
                )

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))

    def labels(self) -> Tuple[str, ...]:
        return tuple(self.poset.label(x) for x in self.sorted_members())


@dataclass(frozen=True, eq=False)
class PosetRep:
    """
    Darstellung eines Posets
    maps[(p, q)] für p < q ist M_p -> M_q (dim_at[q] Zeilen, dim_at[p] Spalten);
    map_for(p, p) ist die Identität.
    """
    poset: FinitePoset
    dim_at: Tuple[int, ...]
    maps: Mapping[Tuple[int, int], RatMatrix] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dim_at", tuple(self.dim_at))
        if len(self.dim_at) != self.poset.size:
            raise InvalidInputError(
                f"{len(self.dim_at)} Dimensionen für {self.poset.size} Elemente"
            )
        maps: Dict[Tuple[int, int], RatMatrix] = {}
        for (p, q), matrix in self.maps.items():
            if not self.poset.less(p, q):
                raise InvalidInputError(f"Abbildung für nicht vergleichbares Paar ({p}, {q})")
            if matrix.shape != (self.dim_at[q], self.dim_at[p]):
                raise InvalidInputError(
                    f"Abbildung ({p}, {q}) hat Form {matrix.shape}, erwartet "
                    f"{(self.dim_at[q], self.dim_at[p])}"
                )
            maps[(p, q)] = matrix
        for p, q in self.poset.relations:
            if (p, q) not in maps:
                maps[(p, q)] = RatMatrix.zeros(self.dim_at[q], self.dim_at[p])
        object.__setattr__(self, "maps", maps)

    def map_for(self, p: int, q: int) -> RatMatrix:
        if p == q:
            return RatMatrix.identity(self.dim_at[p])
        try:
            return self.maps[(p, q)]
        except KeyError as exc:
            raise InvalidInputError(f"({p}, {q}) ist kein vergleichbares Paar") from exc

    @property
    def total_dim(self) -> int:
        return sum(self.dim_at)

    def __repr__(self) -> str:
        return f"PosetRep(size={self.poset.size}, dims={self.dim_at})"
