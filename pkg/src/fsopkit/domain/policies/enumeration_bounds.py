"""
Enumeration Bounds Policy für fsopkit
Konfigurierbare Obergrenzen für Aufzählungen und Auswertungen
"""
from typing import Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator

from fsopkit.domain.exceptions import BoundExceededError, InvalidInputError


class EnumerationBounds(BaseModel):
    """Grenzen pro Familie (alle positiv)"""
    model_config = ConfigDict(from_attributes=True, frozen=True)

    boolean_max_n: int = Field(default=12, gt=0, description="Boolescher Verband B(n)")
    partition_max_n: int = Field(default=8, gt=0, description="Partitionsverband P(n)")
    subspace_max_n: int = Field(default=4, gt=0, description="Unterraumverband B_q(n)")
    subspace_fields: Tuple[int, ...] = Field(default=(2, 3, 4, 5), description="Erlaubte q")
    evaluation_max_degree_small: int = Field(
        default=8, gt=0, description="Auswertungsgrad für Moduln mit Erzeugern vom Grad ≤ 2"
    )
    evaluation_max_degree: int = Field(default=6, gt=0, description="Auswertungsgrad sonst")
    language_max_total_length: int = Field(default=10, gt=0, description="Σℓ_t für Sprachideale")
    symfunc_max_degree: int = Field(default=16, gt=0, description="Abschneidegrad symmetrischer Funktionen")

    @field_validator("subspace_fields")
    @classmethod
    def validate_fields(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        if not v or any(q < 2 for q in v):
            raise ValueError("subspace_fields muss Primzahlpotenzen ≥ 2 enthalten")
        return tuple(sorted(set(v)))


class BoundsPolicy:
    """Prüft Parameter gegen EnumerationBounds"""

    def __init__(self, bounds: EnumerationBounds = None):
        self.bounds = bounds or EnumerationBounds()

    def require(self, name: str, value: int, bound: int) -> None:
        if value < 0:
            raise InvalidInputError(f"{name}={value} ist negativ")
        if value > bound:
            raise BoundExceededError(name, value, bound)

    def evaluation_bound(self, generator_degrees: Sequence[int]) -> int:
        """Auswertungsgrad abhängig vom maximalen Erzeugergrad"""
        if all(g <= 2 for g in generator_degrees):
            return self.bounds.evaluation_max_degree_small
        return self.bounds.evaluation_max_degree

    def require_evaluation(self, generator_degrees: Sequence[int], degree: int) -> None:
        self.require("Auswertungsgrad", degree, self.evaluation_bound(generator_degrees))

    def require_field(self, q: int) -> None:
        if q not in self.bounds.subspace_fields:
            raise InvalidInputError(f"q={q} nicht unterstützt (erlaubt: {self.bounds.subspace_fields})")
