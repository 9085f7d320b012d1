"""
FS^op Modelle für fsopkit
Surjektionswörter, endliche Präsentationen und Auswertungen M_n = F_n / R_n
"""
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Dict, Iterable, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from fsopkit.domain.exceptions import InvalidInputError
from fsopkit.domain.models.linalg import RatMatrix, as_rat
from fsopkit.domain.services.exactla import QuotientBasis

MAX_WORD_LETTER = 9


# =====================================================
# Surjektionswort
# =====================================================

@dataclass(frozen=True, order=True)
class SurjWord:
    """
    Wort w_1 … w_n über {1..d}, kodiert f: [n] -> [d] mit f(i) = w_i
    Surjektiv heisst: jeder Buchstabe 1..d kommt vor.
    """
    letters: Tuple[int, ...]

    def __post_init__(self):
        letters = tuple(self.letters)
        if any(not isinstance(x, int) or x < 1 for x in letters):
            raise InvalidInputError(f"Ungültiges Wort {letters}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "SurjWord":
        """Ziffernfolge wie "1221" (leeres Wort: "")"""
        if not all(ch in "123456789" for ch in text):
            raise InvalidInputError(f"Wort '{text}' enthält Zeichen ausserhalb 1..9")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def identity(cls, n: int) -> "SurjWord":
        return cls(tuple(range(1, n + 1)))

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def degree(self) -> int:
        """Grösse der Zielmenge d"""
        return max(self.letters, default=0)

    def is_surjective(self) -> bool:
        return set(self.letters) == set(range(1, self.degree + 1))

    def is_ordered(self) -> bool:
        """min f⁻¹(1) < min f⁻¹(2) < … (OS^op-Wort)"""
        seen = 0
        for x in self.letters:
            if x > seen + 1:
                return False
            seen = max(seen, x)
        return True

    def precompose(self, f: "SurjWord") -> "SurjWord":
        """(w ∘ f)(i) = w(f(i)); f: [m] -> [n] mit n = Länge von w"""
        if f.degree > self.length:
            raise InvalidInputError(f"{f} passt nicht auf ein Wort der Länge {self.length}")
        return SurjWord(tuple(self.letters[i - 1] for i in f.letters))

    def __str__(self) -> str:
        return "".join(str(x) for x in self.letters)


# =====================================================
# Präsentation (I/O-Grenze)
# =====================================================

class RelationTerm(BaseModel):
    """coef · (Wort unter Erzeuger gen); gen ist 0-basiert"""
    model_config = ConfigDict(from_attributes=True, frozen=True)

    gen: int = Field(ge=0)
    word: str
    coef: str = "1"

    @field_validator("coef", mode="before")
    @classmethod
    def normalize_coef(cls, v) -> str:
        value = as_rat(v)
        return str(value)

    @field_validator("word")
    @classmethod
    def validate_word(cls, v: str) -> str:
        SurjWord.parse(v)
        return v

    @property
    def coefficient(self) -> Fraction:
        return as_rat(self.coef)

    @property
    def surj_word(self) -> SurjWord:
        return SurjWord.parse(self.word)


class Relation(BaseModel):
    """Formale Summe von Termen gleichen Grades"""
    model_config = ConfigDict(from_attributes=True, frozen=True)

    degree: int = Field(ge=0)
    terms: Tuple[RelationTerm, ...] = ()


class FsopPresentation(BaseModel):
    """
    Endlich präsentierter FS^op-Modul
    Erzeuger vom Grad g_i, Relationen als Elemente von ⊕ Q·Surj([m], [g_i]).
    """
    model_config = ConfigDict(from_attributes=True, frozen=True, populate_by_name=True)

    generator_degrees: Tuple[int, ...] = Field(default=(), alias="generators")
    relations: Tuple[Relation, ...] = ()

    @field_validator("generator_degrees")
    @classmethod
    def validate_generators(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        for g in v:
            if g < 0 or g > MAX_WORD_LETTER:
                raise ValueError(f"Erzeugergrad {g} ausserhalb 0..{MAX_WORD_LETTER}")
        return v

    @model_validator(mode="after")
    def validate_relations(self) -> "FsopPresentation":
        for index, relation in enumerate(self.relations):
            for term in relation.terms:
                if term.gen >= len(self.generator_degrees):
                    raise ValueError(f"Relation {index}: Erzeuger {term.gen} existiert nicht")
                word = term.surj_word
                if word.length != relation.degree:
                    raise ValueError(
                        f"Relation {index}: Wort {term.word} hat nicht Länge {relation.degree}"
                    )
                target = self.generator_degrees[term.gen]
                if word.degree != target or not word.is_surjective():
                    raise ValueError(
                        f"Relation {index}: {term.word} ist keine Surjektion auf [{target}]"
                    )
        return self

    @property
    def max_generator_degree(self) -> int:
        return max(self.generator_degrees, default=0)

    def with_relations(self, relations: Iterable[Relation]) -> "FsopPresentation":
        return FsopPresentation(
            generator_degrees=self.generator_degrees,
            relations=self.relations + tuple(relations),
        )


# =====================================================
# Auswertung
# =====================================================

BasisEntry = Tuple[int, SurjWord]


@dataclass(frozen=True, eq=False)
class DegreeEvaluation:
    """
    M_n = F_n / R_n
    basis zählt die Paare (Erzeuger, Surjektion [n] -> [g]) von F_n auf;
    relation_space hat die reduzierten Erzeuger von R_n als Spalten.
    """
    degree: int
    basis: Tuple[BasisEntry, ...]
    relation_space: RatMatrix
    quotient: QuotientBasis

    @property
    def free_dim(self) -> int:
        return len(self.basis)

    @property
    def quotient_dim(self) -> int:
        return self.quotient.dim

    def index_of(self, entry: BasisEntry) -> int:
        return self._index[entry]

    @cached_property
    def _index(self) -> Dict[BasisEntry, int]:
        return {entry: i for i, entry in enumerate(self.basis)}

    def __repr__(self) -> str:
        return (
            f"DegreeEvaluation(n={self.degree}, free_dim={self.free_dim}, "
            f"quotient_dim={self.quotient_dim})"
        )
