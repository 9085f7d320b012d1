"""
Automaten Modelle für fsopkit
Deterministische Automaten, geordnete Automaten und Faktorisierungen von Wörtern
"""
from dataclasses import dataclass, field
from string import ascii_lowercase
from typing import FrozenSet, List, Optional, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, field_validator

from fsopkit.domain.exceptions import InvalidInputError
from fsopkit.domain.models.poset import FinitePoset


# =====================================================
# DFA
# =====================================================

@dataclass(frozen=True)
class Dfa:
    """
    Totaler deterministischer Automat
    delta[state][i] ist der Folgezustand beim Buchstaben alphabet[i].
    """
    alphabet: Tuple[str, ...]
    delta: Tuple[Tuple[int, ...], ...]
    start: int = 0
    accepts: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        object.__setattr__(self, "accepts", frozenset(self.accepts))
        if len(set(self.alphabet)) != len(self.alphabet) or any(
            len(letter) != 1 for letter in self.alphabet
        ):
            raise InvalidInputError(f"Ungültiges Alphabet {self.alphabet}")
        n = len(self.delta)
        if n == 0:
            raise InvalidInputError("Automat ohne Zustände")
        for state, row in enumerate(self.delta):
            if len(row) != len(self.alphabet):
                raise InvalidInputError(f"Zustand {state}: Übergangsfunktion nicht total")
            if any(not 0 <= target < n for target in row):
                raise InvalidInputError(f"Zustand {state}: Ziel ausserhalb von {n}")
        if not 0 <= self.start < n:
            raise InvalidInputError(f"Startzustand {self.start} ausserhalb von {n}")
        if any(not 0 <= s < n for s in self.accepts):
            raise InvalidInputError(f"Akzeptierende Zustände {sorted(self.accepts)} ausserhalb von {n}")

    @property
    def state_count(self) -> int:
        return len(self.delta)

    @property
    def alphabet_size(self) -> int:
        return len(self.alphabet)

    def letter_index(self, letter: str) -> int:
        try:
            return self.alphabet.index(letter)
        except ValueError as exc:
            raise InvalidInputError(f"Buchstabe '{letter}' nicht im Alphabet {self.alphabet}") from exc

    def step(self, state: int, letter: str) -> int:
        return self.delta[state][self.letter_index(letter)]

    def run(self, word: str, state: Optional[int] = None) -> int:
        current = self.start if state is None else state
        for letter in word:
            current = self.step(current, letter)
        return current

    def accepts_word(self, word: str) -> bool:
        return self.run(word) in self.accepts

    @property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.state_count))
        for state, row in enumerate(self.delta):
            for target in row:
                if target != state:
                    graph.add_edge(state, target)
        return graph


@dataclass(frozen=True)
class OrderedDfa:
    """
    DFA mit antisymmetrischer Erreichbarkeitsrelation
    order: x < y genau dann, wenn ein nichtleeres Wort x nach y ≠ x führt.
    """
    dfa: Dfa
    order: FinitePoset

    def __post_init__(self):
        if self.order.size != self.dfa.state_count:
            raise InvalidInputError("Ordnung und Automat haben verschiedene Zustandszahl")

    @property
    def length(self) -> int:
        """Anzahl Zustände einer längsten Kette"""
        return nx.dag_longest_path_length(self.order.graph) + 1


@dataclass(frozen=True)
class WordFactorization:
    """
    w faktorisiert über p, falls w auf jedem Block konstant ist
    quotient ist dann das Wort auf den Blöcken (nach kleinstem Element sortiert).
    """
    word: str
    partition: Tuple[int, ...]
    quotient: Optional[str] = None

    @property
    def factors(self) -> bool:
        return self.quotient is not None


# =====================================================
# JSON-Format
# =====================================================

class DfaPayload(BaseModel):
    """{"states": n, "alphabet": d | ["a", …], "delta": [[…]], "start": i, "accepts": […]}"""
    model_config = ConfigDict(from_attributes=True, frozen=True)

    states: int = Field(ge=1)
    alphabet: Union[int, List[str]]
    delta: List[List[int]]
    start: int = 0
    accepts: List[int] = Field(default_factory=list)

    @field_validator("alphabet")
    @classmethod
    def validate_alphabet(cls, v):
        if isinstance(v, int) and not 1 <= v <= len(ascii_lowercase):
            raise ValueError(f"Alphabetgrösse {v} ausserhalb 1..{len(ascii_lowercase)}")
        return v

    def letters(self) -> Tuple[str, ...]:
        if isinstance(self.alphabet, int):
            return tuple(ascii_lowercase[: self.alphabet])
        return tuple(self.alphabet)

    def to_dfa(self) -> Dfa:
        if len(self.delta) != self.states:
            raise InvalidInputError(f"{len(self.delta)} Zeilen in delta für {self.states} Zustände")
        return Dfa(self.letters(), tuple(tuple(row) for row in self.delta), self.start, frozenset(self.accepts))

    @classmethod
    def from_dfa(cls, dfa: Dfa) -> "DfaPayload":
        return cls(
            states=dfa.state_count,
            alphabet=list(dfa.alphabet),
            delta=[list(row) for row in dfa.delta],
            start=dfa.start,
            accepts=sorted(dfa.accepts),
        )
