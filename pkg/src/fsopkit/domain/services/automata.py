"""
Automaten für fsopkit
Regulärer Ausdruck -> Thompson-NFA -> Teilmengenkonstruktion -> Hopcroft-Minimierung,
Erreichbarkeitsordnung, Abschneiden und die Eigenschaft (*)
"""
import json
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, List, Mapping, Optional, Set, Tuple, Union

import networkx as nx
import structlog
from pydantic import ValidationError

from fsopkit.domain.exceptions import InvalidInputError, RegexSyntaxError
from fsopkit.domain.models.automata import Dfa, DfaPayload, OrderedDfa
from fsopkit.domain.models.poset import FinitePoset

logger = structlog.get_logger(__name__)

OPERATORS = "|*()"


# =====================================================
# Syntaxbaum
# =====================================================

@dataclass(frozen=True)
class _Epsilon:
    pass


@dataclass(frozen=True)
class _Symbol:
    letter: str


@dataclass(frozen=True)
class _Concat:
    left: object
    right: object


@dataclass(frozen=True)
class _Union:
    left: object
    right: object


@dataclass(frozen=True)
class _Star:
    inner: object


class _RegexParser:
    """
    Rekursiver Abstieg
    expr := term ('|' term)*, term := factor*, factor := atom '*'*, atom := letter | '(' expr ')'
    """

    def __init__(self, text: str, alphabet: Tuple[str, ...]):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def parse(self):
        node = self._expr()
        if self.pos != len(self.text):
            raise RegexSyntaxError(f"Unerwartetes Zeichen '{self.text[self.pos]}'", self.pos)
        return node

    def _peek(self) -> Optional[str]:
        return self.text[self.pos] if self.pos < len(self.text) else None

    def _expr(self):
        node = self._term()
        while self._peek() == "|":
            self.pos += 1
            node = _Union(node, self._term())
        return node

    def _term(self):
        node = None
        while self._peek() is not None and self._peek() not in "|)":
            factor = self._factor()
            node = factor if node is None else _Concat(node, factor)
        return _Epsilon() if node is None else node

    def _factor(self):
        node = self._atom()
        while self._peek() == "*":
            self.pos += 1
            node = _Star(node)
        return node

    def _atom(self):
        ch = self._peek()
        if ch == "(":
            start = self.pos
            self.pos += 1
            node = self._expr()
            if self._peek() != ")":
                raise RegexSyntaxError("Klammer nicht geschlossen", start)
            self.pos += 1
            return node
        if ch == "*":
            raise RegexSyntaxError("'*' ohne Operand", self.pos)
        if ch not in self.alphabet:
            raise RegexSyntaxError(f"Zeichen '{ch}' nicht im Alphabet", self.pos)
        self.pos += 1
        return _Symbol(ch)


# =====================================================
# Thompson-NFA
# =====================================================

class _Nfa:
    """ε-Übergänge unter dem Schlüssel None"""

    def __init__(self):
        self.transitions: List[Dict[Optional[str], Set[int]]] = []

    def new_state(self) -> int:
        self.transitions.append({})
        return len(self.transitions) - 1

    def add(self, source: int, letter: Optional[str], target: int) -> None:
        self.transitions[source].setdefault(letter, set()).add(target)

    def build(self, node) -> Tuple[int, int]:
        start, end = self.new_state(), self.new_state()
        if isinstance(node, _Epsilon):
            self.add(start, None, end)
        elif isinstance(node, _Symbol):
            self.add(start, node.letter, end)
        elif isinstance(node, _Concat):
            s1, e1 = self.build(node.left)
            s2, e2 = self.build(node.right)
            self.add(start, None, s1)
            self.add(e1, None, s2)
            self.add(e2, None, end)
        elif isinstance(node, _Union):
            for branch in (node.left, node.right):
                s, e = self.build(branch)
                self.add(start, None, s)
                self.add(e, None, end)
        else:
            s, e = self.build(node.inner)
            self.add(start, None, s)
            self.add(start, None, end)
            self.add(e, None, s)
            self.add(e, None, end)
        return start, end

    def closure(self, states: Set[int]) -> FrozenSet[int]:
        stack = list(states)
        seen = set(states)
        while stack:
            state = stack.pop()
            for target in self.transitions[state].get(None, ()):
                if target not in seen:
                    seen.add(target)
                    stack.append(target)
        return frozenset(seen)

    def move(self, states: FrozenSet[int], letter: str) -> Set[int]:
        return {t for s in states for t in self.transitions[s].get(letter, ())}


def _subset_construction(nfa: _Nfa, start: int, accept: int, alphabet: Tuple[str, ...]) -> Dfa:
    """Teilmengenkonstruktion in Breitensuche; die leere Menge wird Senke"""
    initial = nfa.closure({start})
    index: Dict[FrozenSet[int], int] = {initial: 0}
    rows: List[List[int]] = []
    queue = deque([initial])
    order = [initial]
    while queue:
        current = queue.popleft()
        row = []
        for letter in alphabet:
            target = nfa.closure(nfa.move(current, letter))
            if target not in index:
                index[target] = len(order)
                order.append(target)
                queue.append(target)
            row.append(index[target])
        rows.append(row)
    accepts = frozenset(i for i, states in enumerate(order) if accept in states)
    return Dfa(alphabet, tuple(tuple(r) for r in rows), 0, accepts)


# =====================================================
# Minimierung & Normalform
# =====================================================

def _reachable_states(d: Dfa) -> List[int]:
    """Zustände in Breitensuche-Reihenfolge ab dem Start"""
    seen = {d.start}
    order = [d.start]
    queue = deque([d.start])
    while queue:
        state = queue.popleft()
        for target in d.delta[state]:
            if target not in seen:
                seen.add(target)
                order.append(target)
                queue.append(target)
    return order


def _relabel(d: Dfa, keep: List[int], block_of: Optional[Mapping[int, int]] = None) -> Dfa:
    """Nummeriert die Zustände in der Reihenfolge von keep neu (Start = 0)"""
    block_of = block_of or {s: s for s in keep}
    representatives: Dict[int, int] = {}
    for state in keep:
        representatives.setdefault(block_of[state], state)
    blocks = list(representatives)
    new_index = {block: i for i, block in enumerate(blocks)}
    delta = tuple(
        tuple(new_index[block_of[t]] for t in d.delta[representatives[block]]) for block in blocks
    )
    accepts = frozenset(new_index[block_of[s]] for s in keep if s in d.accepts)
    return Dfa(d.alphabet, delta, new_index[block_of[d.start]], accepts)


def connected_part(d: Dfa) -> Dfa:
    """Entfernt vom Start aus nicht erreichbare Zustände"""
    return _relabel(d, _reachable_states(d))


def minimize(d: Dfa) -> Dfa:
    """Hopcroft-Verfeinerung, danach kanonische Nummerierung in Breitensuche"""
    d = connected_part(d)
    states = set(range(d.state_count))
    accepting = frozenset(d.accepts)
    rejecting = frozenset(states - accepting)
    partition: List[FrozenSet[int]] = [b for b in (accepting, rejecting) if b]
    worklist: List[FrozenSet[int]] = [min(partition, key=len)] if len(partition) == 2 else []

    preimage: List[Dict[int, Set[int]]] = [dict() for _ in d.alphabet]
    for state, row in enumerate(d.delta):
        for i, target in enumerate(row):
            preimage[i].setdefault(target, set()).add(state)

    while worklist:
        splitter = worklist.pop()
        for i in range(len(d.alphabet)):
            incoming = set()
            for target in splitter:
                incoming |= preimage[i].get(target, set())
            refined: List[FrozenSet[int]] = []
            for block in partition:
                inside, outside = block & incoming, block - incoming
                if inside and outside:
                    refined.extend([frozenset(inside), frozenset(outside)])
                    if block in worklist:
                        worklist.remove(block)
                        worklist.extend([frozenset(inside), frozenset(outside)])
                    else:
                        worklist.append(min(frozenset(inside), frozenset(outside), key=len))
                else:
                    refined.append(block)
            partition = refined

    block_of = {s: min(block) for block in partition for s in block}
    merged = _relabel(d, sorted(states), block_of)
    result = connected_part(merged)
    logger.debug("dfa_minimized", states_before=d.state_count, states_after=result.state_count)
    return result


def parse_regex(expr: str, alphabet: Union[str, Tuple[str, ...]] = "ab") -> Dfa:
    """Minimaler DFA zu einem regulären Ausdruck (Literale, Verkettung, |, *, Klammern)"""
    letters = tuple(alphabet)
    clash = [letter for letter in letters if letter in OPERATORS]
    if clash:
        raise InvalidInputError(f"Operatorzeichen {clash} im Alphabet")
    tree = _RegexParser(expr.replace(" ", ""), letters).parse()
    nfa = _Nfa()
    start, accept = nfa.build(tree)
    dfa = minimize(_subset_construction(nfa, start, accept, letters))
    logger.debug("regex_compiled", regex=expr, states=dfa.state_count)
    return dfa


def parse_dfa(payload: Union[str, Mapping]) -> Dfa:
    """Liest das DFA-JSON-Format"""
    try:
        data = json.loads(payload) if isinstance(payload, str) else dict(payload)
        return DfaPayload.model_validate(data).to_dfa()
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"Kein gültiges JSON: {exc.msg}") from exc
    except ValidationError as exc:
        raise InvalidInputError(f"Ungültiger Automat: {exc.errors()[0]['msg']}") from exc


def dfa_accepts(a: Union[Dfa, OrderedDfa], word: str) -> bool:
    dfa = a.dfa if isinstance(a, OrderedDfa) else a
    return dfa.accepts_word(word)


# =====================================================
# Geordnete Automaten
# =====================================================

def reachability_order(d: Dfa) -> Optional[OrderedDfa]:
    """
    Erreichbarkeitsordnung des zusammenhängenden Teils
    None, falls zwei verschiedene Zustände gegenseitig erreichbar sind.
    """
    connected = connected_part(d)
    graph = connected.graph
    if any(len(component) > 1 for component in nx.strongly_connected_components(graph)):
        logger.debug("dfa_not_ordered", states=connected.state_count)
        return None
    relations = frozenset(
        (x, y) for x in range(connected.state_count) for y in nx.descendants(graph, x)
    )
    labels = tuple(f"q{x}" for x in range(connected.state_count))
    order = FinitePoset(connected.state_count, relations, None, labels, validate=False)
    return OrderedDfa(connected, order)


def dfa_length(a: Union[Dfa, OrderedDfa]) -> int:
    """Länge des geordneten Automaten als Poset"""
    if isinstance(a, Dfa):
        ordered = reachability_order(a)
        if ordered is None:
            raise InvalidInputError("Automat ist nicht geordnet")
        a = ordered
    return a.length


def truncate_dfa(a: OrderedDfa, state: int) -> OrderedDfa:
    """A_{≥α}: Zustände ≥ state, Start = state"""
    if not 0 <= state < a.dfa.state_count:
        raise InvalidInputError(f"Zustand {state} ausserhalb von {a.dfa.state_count}")
    keep = sorted({state} | a.order.above(state))
    new_index = {s: i for i, s in enumerate(keep)}
    delta = tuple(tuple(new_index[t] for t in a.dfa.delta[s]) for s in keep)
    accepts = frozenset(new_index[s] for s in keep if s in a.dfa.accepts)
    dfa = Dfa(a.dfa.alphabet, delta, new_index[state], accepts)
    relations = frozenset(
        (new_index[x], new_index[y]) for x, y in a.order.relations if x in new_index and y in new_index
    )
    labels = tuple(a.order.label(s) for s in keep)
    return OrderedDfa(dfa, FinitePoset(len(keep), relations, None, labels, validate=False))


# =====================================================
# Eigenschaft (*)
# =====================================================

def words_up_to(alphabet: Tuple[str, ...], max_len: int):
    for length in range(max_len + 1):
        for letters in product(alphabet, repeat=length):
            yield "".join(letters)


def find_star_violation(a: Union[Dfa, OrderedDfa], max_len: int) -> Optional[Tuple[str, str]]:
    """
    Sucht w_1 a w_2 w_3 ∈ L mit w_1 a w_2 a w_3 ∉ L, |w| ≤ max_len

    Returns:
        (Wort in L, Wort nach Verdopplung) oder None
    """
    dfa = a.dfa if isinstance(a, OrderedDfa) else a
    for word in words_up_to(dfa.alphabet, max_len):
        if not dfa.accepts_word(word):
            continue
        for i, letter in enumerate(word):
            for j in range(i + 1, len(word) + 1):
                extended = word[:j] + letter + word[j:]
                if not dfa.accepts_word(extended):
                    return word, extended
    return None


def star_property_check(a: Union[Dfa, OrderedDfa], max_len: int) -> bool:
    """Beschränkte Prüfung der Eigenschaft (*) für alle Wörter der Länge ≤ max_len"""
    violation = find_star_violation(a, max_len)
    if violation is not None:
        logger.debug("star_property_violated", word=violation[0], extended=violation[1])
    return violation is None
