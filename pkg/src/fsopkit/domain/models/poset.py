"""
Poset Modelle für fsopkit
Endliche Halbordnungen, Graduierung und ganzzahlige Polynome
"""
from dataclasses import InitVar, dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from fsopkit.domain.exceptions import InvalidInputError, PosetStructureError

Relation = Tuple[int, int]


# =====================================================
# FinitePoset
# =====================================================

@dataclass(frozen=True)
class FinitePoset:
    """
    Endliche strikte Halbordnung auf {0..size-1}
    relations enthält alle Paare (a, b) mit a < b (transitiv abgeschlossen).
    Die Familien-Konstruktoren liefern bereits abgeschlossene Relationen und
    setzen validate=False.
    """
    size: int
    relations: FrozenSet[Relation]
    top: Optional[int] = None
    labels: Tuple[str, ...] = ()
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        object.__setattr__(self, "relations", frozenset(self.relations))
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.labels and len(self.labels) != self.size:
            raise InvalidInputError(f"{len(self.labels)} Labels für {self.size} Elemente")
        for a, b in self.relations:
            if not (0 <= a < self.size and 0 <= b < self.size):
                raise InvalidInputError(f"Relation ({a}, {b}) ausserhalb von {self.size}")
            if a == b:
                raise PosetStructureError(f"Relation nicht irreflexiv bei {a}")

        if validate:
            graph = self.graph
            if not nx.is_directed_acyclic_graph(graph):
                raise PosetStructureError("Relation ist nicht antisymmetrisch")
            closure = nx.transitive_closure_dag(graph)
            if set(closure.edges) != set(self.relations):
                raise PosetStructureError("Relation ist nicht transitiv abgeschlossen")

        if self.top is not None:
            if not 0 <= self.top < self.size:
                raise InvalidInputError(f"Top {self.top} ausserhalb von {self.size}")
            if len(self.below(self.top)) != self.size - 1:
                raise PosetStructureError(f"Element {self.top} ist nicht grösstes Element")

    # -------------------------------------------------
    # Konstruktoren
    # -------------------------------------------------

    @classmethod
    def from_covers(
        cls,
        size: int,
        covers: Iterable[Relation],
        top: Optional[int] = None,
        labels: Sequence[str] = (),
        detect_top: bool = True,
    ) -> "FinitePoset":
        """Erstellt Poset aus Überdeckungsrelationen (transitiver Abschluss via networkx)"""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(size))
        graph.add_edges_from(covers)
        if not nx.is_directed_acyclic_graph(graph):
            raise PosetStructureError("Überdeckungsrelationen enthalten einen Zyklus")
        relations = frozenset(nx.transitive_closure_dag(graph).edges)
        if top is None and detect_top:
            top = _detect_top(size, relations)
        return cls(size, relations, top, tuple(labels), validate=False)

    @classmethod
    def from_leq(cls, size: int, leq, labels: Sequence[str] = ()) -> "FinitePoset":
        """Erstellt Poset aus einer Vergleichsfunktion leq(a, b)"""
        relations = frozenset(
            (a, b) for a in range(size) for b in range(size) if a != b and leq(a, b)
        )
        return cls(size, relations, _detect_top(size, relations), tuple(labels))

    # -------------------------------------------------
    # Abgeleitete Strukturen (lazy)
    # -------------------------------------------------

    @cached_property
    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.size))
        graph.add_edges_from(self.relations)
        return graph

    @cached_property
    def _up(self) -> Tuple[FrozenSet[int], ...]:
        up: List[Set[int]] = [set() for _ in range(self.size)]
        for a, b in self.relations:
            up[a].add(b)
        return tuple(frozenset(s) for s in up)

    @cached_property
    def _down(self) -> Tuple[FrozenSet[int], ...]:
        down: List[Set[int]] = [set() for _ in range(self.size)]
        for a, b in self.relations:
            down[b].add(a)
        return tuple(frozenset(s) for s in down)

    @cached_property
    def _cover_graph(self) -> nx.DiGraph:
        return nx.transitive_reduction(self.graph)

    @cached_property
    def _upper_covers(self) -> Tuple[Tuple[int, ...], ...]:
        reduction = self._cover_graph
        return tuple(tuple(sorted(reduction.successors(x))) for x in range(self.size))

    @cached_property
    def _lower_covers(self) -> Tuple[Tuple[int, ...], ...]:
        reduction = self._cover_graph
        return tuple(tuple(sorted(reduction.predecessors(x))) for x in range(self.size))

    # -------------------------------------------------
    # Abfragen
    # -------------------------------------------------

    @property
    def elements(self) -> range:
        return range(self.size)

    def less(self, a: int, b: int) -> bool:
        return b in self._up[a]

    def leq(self, a: int, b: int) -> bool:
        return a == b or b in self._up[a]

    def comparable(self, a: int, b: int) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def above(self, x: int) -> FrozenSet[int]:
        """Alle y > x"""
        return self._up[x]

    def below(self, x: int) -> FrozenSet[int]:
        """Alle y < x"""
        return self._down[x]

    def upper_covers(self, x: int) -> Tuple[int, ...]:
        return self._upper_covers[x]

    def lower_covers(self, x: int) -> Tuple[int, ...]:
        return self._lower_covers[x]

    def covers(self) -> Tuple[Relation, ...]:
        return tuple((a, b) for a in self.elements for b in self._upper_covers[a])

    def interval(self, a: int, b: int) -> FrozenSet[int]:
        """Geschlossenes Intervall [a, b]"""
        if not self.leq(a, b):
            return frozenset()
        return frozenset({a, b} | (self._up[a] & self._down[b]))

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError as exc:
            raise InvalidInputError(f"Unbekanntes Element '{label}'") from exc

    def __repr__(self) -> str:
        return f"FinitePoset(size={self.size}, relations={len(self.relations)}, top={self.top})"


def _detect_top(size: int, relations: FrozenSet[Relation]) -> Optional[int]:
    below_count = [0] * size
    for _, b in relations:
        below_count[b] += 1
    for x in range(size):
        if below_count[x] == size - 1:
            return x
    return None


# =====================================================
# Graduierung & Polynome
# =====================================================

@dataclass(frozen=True)
class GradingData:
    """Rang r(p) = r(p, 1̂): Länge jeder maximalen Kette von p nach oben"""
    rank_of: Tuple[int, ...]

    def __getitem__(self, x: int) -> int:
        return self.rank_of[x]

    @property
    def max_rank(self) -> int:
        return max(self.rank_of, default=0)


@dataclass(frozen=True)
class IntPolynomial:
    """Ganzzahliges Polynom in t, Koeffizienten nach Grad aufsteigend"""
    coefficients: Tuple[int, ...] = ()

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coeffs))

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def linear_product(cls, roots: Iterable[int]) -> "IntPolynomial":
        """∏ (1 - c t) über die gegebenen c"""
        result = cls.one()
        for c in roots:
            result = result * cls((1, -c))
        return result

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, n: int) -> int:
        return self.coefficients[n] if 0 <= n < len(self.coefficients) else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coefficients or not other.coefficients:
            return IntPolynomial()
        result = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                result[i + j] += a * b
        return IntPolynomial(tuple(result))

    def __pow__(self, exponent: int) -> "IntPolynomial":
        result = IntPolynomial.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __str__(self) -> str:
        terms = []
        for degree, coeff in enumerate(self.coefficients):
            if coeff == 0:
                continue
            if degree == 0:
                body = str(abs(coeff))
            else:
                power = "t" if degree == 1 else f"t^{degree}"
                body = power if abs(coeff) == 1 else f"{abs(coeff)}{power}"
            sign = "-" if coeff < 0 else ("+" if terms else "")
            terms.append(f"{sign}{body}")
        return " ".join(terms) if terms else "0"
