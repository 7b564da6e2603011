"""Finite fuzzy automata: sparse transitions, languages, and norms.

States and symbols are 0-based contiguous indices internally; display names
are carried alongside for I/O. Transitions are stored sparsely per symbol as
(source, target, degree) triples with strictly positive degrees, mirrored
into successor/predecessor adjacency lists by :func:`build_index`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    AlphabetMismatch,
    DegreeRangeError,
    DimensionMismatch,
    InputFormatError,
    UnknownSymbol,
    WordCapExceeded,
)
from .fuzzy import FuzzyRelation, FuzzySet, compose_set_rel, inverse, subset_degree
from .lattice import Structure, validate_degree

DEFAULT_WORD_CAP = 10**6

Transition = tuple[int, int, float]
Word = tuple[int, ...]


@dataclass(frozen=True)
class FuzzyAutomaton:
    """A fuzzy automaton: states, alphabet, graded transitions and end sets."""

    num_states: int
    alphabet: tuple[str, ...]
    transitions: tuple[tuple[Transition, ...], ...]  # per symbol index
    initial: FuzzySet
    terminal: FuzzySet
    state_names: tuple[str, ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.num_states < 1:
            raise ValueError("an automaton needs at least one state")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet symbols must be distinct")
        if self.state_names is None:
            object.__setattr__(
                self, "state_names",
                tuple(f"q{i}" for i in range(self.num_states)))
        if len(self.state_names) != self.num_states:
            raise ValueError("state_names length must equal num_states")
        if len(set(self.state_names)) != self.num_states:
            raise ValueError("state names must be distinct")
        if len(self.transitions) != len(self.alphabet):
            raise ValueError("one transition list per alphabet symbol expected")
        if self.initial.size != self.num_states or self.terminal.size != self.num_states:
            raise ValueError("initial/terminal sets must range over the states")
        seen: set[tuple[int, int, int]] = set()
        normalized = []
        for s, triples in enumerate(self.transitions):
            per_symbol = []
            for x, y, d in triples:
                if not (0 <= x < self.num_states and 0 <= y < self.num_states):
                    raise ValueError(f"transition ({x}, {y}) out of state range")
                if not 0.0 < d <= 1.0:
                    raise DegreeRangeError(
                        f"transition degree must lie in (0, 1], got {d!r}")
                if (s, x, y) in seen:
                    raise ValueError(
                        f"duplicate transition for symbol {self.alphabet[s]!r}: "
                        f"({x}, {y})")
                seen.add((s, x, y))
                per_symbol.append((x, y, float(d)))
            normalized.append(tuple(per_symbol))
        object.__setattr__(self, "transitions", tuple(normalized))

    @classmethod
    def build(cls, alphabet: Sequence[str], states: Sequence[str],
              initial: Mapping[str, float], terminal: Mapping[str, float],
              transitions: Iterable[tuple[str, str, str, float]]) -> "FuzzyAutomaton":
        """Construct from display names; transitions are (from, symbol, to, degree)."""
        state_index = {name: i for i, name in enumerate(states)}
        symbol_index = {name: i for i, name in enumerate(alphabet)}
        if len(state_index) != len(states):
            raise ValueError("state names must be distinct")

        def lookup(table: dict[str, int], name: str, what: str) -> int:
            try:
                return table[name]
            except KeyError:
                raise InputFormatError(f"unknown {what} {name!r}") from None

        def end_set(mapping: Mapping[str, float], what: str) -> FuzzySet:
            degrees = [0.0] * len(states)
            for name, value in mapping.items():
                degrees[lookup(state_index, name, "state")] = validate_degree(
                    value, f"{what} degree")
            return FuzzySet(tuple(degrees))

        per_symbol: list[list[Transition]] = [[] for _ in alphabet]
        for src, sym, dst, degree in transitions:
            s = lookup(symbol_index, sym, "symbol")
            per_symbol[s].append(
                (lookup(state_index, src, "state"),
                 lookup(state_index, dst, "state"), degree))
        return cls(
            num_states=len(states),
            alphabet=tuple(alphabet),
            transitions=tuple(tuple(t) for t in per_symbol),
            initial=end_set(initial, "initial"),
            terminal=end_set(terminal, "terminal"),
            state_names=tuple(states),
        )

    @property
    def num_symbols(self) -> int:
        return len(self.alphabet)

    def num_transitions(self) -> int:
        return sum(len(t) for t in self.transitions)

    def symbol_index(self, name: str) -> int:
        try:
            return self.alphabet.index(name)
        except ValueError:
            raise UnknownSymbol(f"symbol {name!r} not in alphabet") from None

    def symbol_relation(self, s: int) -> FuzzyRelation:
        """The dense relation of one symbol's transitions."""
        return FuzzyRelation.from_entries(
            self.num_states, self.num_states, self.transitions[s])


@dataclass(frozen=True)
class SuccPredIndex:
    """Successor and predecessor adjacency views of the same transitions.

    ``succ[s][x]`` lists (target, degree) pairs, ``pred[s][y]`` lists
    (source, degree) pairs; both enumerate exactly the positive transitions.
    """

    succ: tuple[tuple[tuple[tuple[int, float], ...], ...], ...]
    pred: tuple[tuple[tuple[tuple[int, float], ...], ...], ...]


def build_index(automaton: FuzzyAutomaton) -> SuccPredIndex:
    """Materialize both adjacency views in one pass over the transitions."""
    n = automaton.num_states
    succ = [[[] for _ in range(n)] for _ in automaton.alphabet]
    pred = [[[] for _ in range(n)] for _ in automaton.alphabet]
    for s, triples in enumerate(automaton.transitions):
        for x, y, d in triples:
            succ[s][x].append((y, d))
            pred[s][y].append((x, d))

    def freeze(view):
        return tuple(tuple(tuple(lst) for lst in per) for per in view)

    return SuccPredIndex(succ=freeze(succ), pred=freeze(pred))


def require_same_alphabet(a: FuzzyAutomaton, b: FuzzyAutomaton) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(
            f"alphabets differ: {list(a.alphabet)} vs {list(b.alphabet)}")


def word_from_names(automaton: FuzzyAutomaton, names: Sequence[str]) -> Word:
    """Translate symbol names into the index word the evaluators use."""
    return tuple(automaton.symbol_index(name) for name in names)


def _check_word(automaton: FuzzyAutomaton, word: Sequence[int]) -> None:
    for s in word:
        if not 0 <= s < automaton.num_symbols:
            raise UnknownSymbol(f"symbol index {s!r} out of range")


def _advance(tnorm, succ_s, vec: list[float], n: int) -> list[float]:
    """One sup-t-norm step of the forward state-distribution vector."""
    new = [0.0] * n
    for x, fv in enumerate(vec):
        if fv > 0.0:
            for y, d in succ_s[x]:
                v = tnorm(fv, d)
                if v > new[y]:
                    new[y] = v
    return new


def _accept(tnorm, vec, terminal) -> float:
    return max(
        (tnorm(fv, tv) for fv, tv in zip(vec, terminal) if fv > 0.0),
        default=0.0)


def language_eval(st: Structure, automaton: FuzzyAutomaton,
                  word: Sequence[int]) -> float:
    """Degree in which the automaton accepts the word.

    Evaluates the initial-set / transition-chain / terminal-set composition
    left to right over the sparse successor lists, in O(|word| * m).
    """
    _check_word(automaton, word)
    tnorm = st.tnorm
    index = build_index(automaton)
    vec = list(automaton.initial.degrees)
    for s in word:
        vec = _advance(tnorm, index.succ[s], vec, automaton.num_states)
    return _accept(tnorm, vec, automaton.terminal.degrees)


def language_bounded(st: Structure, automaton: FuzzyAutomaton, n: int,
                     cap: int = DEFAULT_WORD_CAP) -> dict[Word, float]:
    """All words of length <= n with their acceptance degrees.

    Zero-degree words are kept: graded language comparisons quantify over
    every word up to the bound. Words are enumerated breadth first, carrying
    the forward state-distribution vector so each level costs O(m) per word.
    """
    if n < 0:
        raise ValueError("word-length bound must be >= 0")
    if automaton.num_symbols ** (n + 1) > cap:
        raise WordCapExceeded(
            f"{automaton.num_symbols}^{n + 1} words exceed the cap of {cap}")
    tnorm = st.tnorm
    index = build_index(automaton)
    terminal = automaton.terminal.degrees

    language: dict[Word, float] = {}
    frontier: list[tuple[Word, list[float]]] = [((), list(automaton.initial.degrees))]
    for length in range(n + 1):
        next_frontier: list[tuple[Word, list[float]]] = []
        for word, vec in frontier:
            language[word] = _accept(tnorm, vec, terminal)
            if length < n:
                for s in range(automaton.num_symbols):
                    next_frontier.append((
                        word + (s,),
                        _advance(tnorm, index.succ[s], vec, automaton.num_states)))
        frontier = next_frontier
    return language


def pin_initial(automaton: FuzzyAutomaton, state: int) -> FuzzyAutomaton:
    """Copy of the automaton whose initial set is exactly {state: 1}."""
    if not 0 <= state < automaton.num_states:
        raise IndexError(f"state index {state} out of range")
    return FuzzyAutomaton(
        num_states=automaton.num_states,
        alphabet=automaton.alphabet,
        transitions=automaton.transitions,
        initial=FuzzySet.from_support(automaton.num_states, {state: 1.0}),
        terminal=automaton.terminal,
        state_names=automaton.state_names,
    )


def sim_norm(st: Structure, rel: FuzzyRelation, a: FuzzyAutomaton,
             b: FuzzyAutomaton) -> float:
    """Graded inclusion of a's initial set in b's, pulled back through rel."""
    if rel.rows != a.num_states or rel.cols != b.num_states:
        raise DimensionMismatch(
            f"relation is {rel.rows}x{rel.cols}, automata have "
            f"{a.num_states} and {b.num_states} states")
    pulled = compose_set_rel(st, b.initial, inverse(rel))
    return subset_degree(st, a.initial, pulled)


def bisim_norm(st: Structure, rel: FuzzyRelation, a: FuzzyAutomaton,
               b: FuzzyAutomaton) -> float:
    """Meet of the simulation norms in both directions."""
    return min(sim_norm(st, rel, a, b), sim_norm(st, inverse(rel), b, a))


def automaton_to_json(automaton: FuzzyAutomaton) -> dict:
    names = automaton.state_names
    return {
        "alphabet": list(automaton.alphabet),
        "states": list(names),
        "initial": {names[i]: v for i, v in enumerate(automaton.initial.degrees)
                    if v > 0.0},
        "terminal": {names[i]: v for i, v in enumerate(automaton.terminal.degrees)
                     if v > 0.0},
        "transitions": [
            {"from": names[x], "symbol": automaton.alphabet[s],
             "to": names[y], "degree": d}
            for s, triples in enumerate(automaton.transitions)
            for x, y, d in triples
        ],
    }


def automaton_from_json(doc: dict) -> FuzzyAutomaton:
    if not isinstance(doc, dict):
        raise InputFormatError("automaton document must be a JSON object")
    for key in ("alphabet", "states", "initial", "terminal", "transitions"):
        if key not in doc:
            raise InputFormatError(f"automaton document lacks {key!r}")
    transitions = []
    for item in doc["transitions"]:
        try:
            degree = float(item["degree"])
            transitions.append((item["from"], item["symbol"], item["to"], degree))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"malformed transition {item!r}: {exc}") from None
        if not 0.0 < degree <= 1.0:
            raise InputFormatError(
                f"transition degree must lie in (0, 1], got {degree!r}")
    try:
        return FuzzyAutomaton.build(
            alphabet=list(doc["alphabet"]),
            states=list(doc["states"]),
            initial=dict(doc["initial"]),
            terminal=dict(doc["terminal"]),
            transitions=transitions,
        )
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None
