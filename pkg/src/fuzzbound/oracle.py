"""Independent brute-force verifiers and random-instance generators.

The dense recurrence here recomputes depth-bounded (bi)simulation chains with
straight quintuple loops and no early exit; it is the anti-bug oracle the
optimized computation is compared against. The language verifiers enumerate
every word up to a bound and check the preservation/invariance inequalities
word by word.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .automata import (
    FuzzyAutomaton,
    FuzzyRelation,
    language_bounded,
    pin_initial,
    require_same_alphabet,
    bisim_norm,
    sim_norm,
    DEFAULT_WORD_CAP,
)
from .dbsim import MODE_BISIM, canonical_mode
from .fuzzy import FuzzySet
from .lattice import Structure, validate_degree

DEFAULT_DEGREE_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


@dataclass(frozen=True)
class RandomAutomatonSpec:
    """Parameters for deterministic random automaton generation."""

    num_states: int
    num_symbols: int
    transition_density: float
    degree_grid: tuple[float, ...] = DEFAULT_DEGREE_GRID
    seed: int = 0

    def __post_init__(self):
        if self.num_states < 1 or self.num_symbols < 1:
            raise ValueError("need at least one state and one symbol")
        if not 0.0 <= self.transition_density <= 1.0:
            raise ValueError("transition_density must lie in [0, 1]")
        for d in self.degree_grid:
            validate_degree(d, "grid degree")
            if d <= 0.0:
                raise ValueError("grid degrees must be strictly positive")


def generate_automaton(spec: RandomAutomatonSpec) -> FuzzyAutomaton:
    """Density-controlled random automaton, identical for identical specs.

    Each (symbol, source, target) slot becomes a transition with the given
    probability; initial/terminal degrees are drawn from the grid extended
    with 0 so empty supports occur too.
    """
    rng = random.Random(spec.seed)
    end_grid = (0.0,) + spec.degree_grid
    alphabet = tuple(f"s{i}" for i in range(spec.num_symbols))
    transitions = []
    for _ in alphabet:
        triples = []
        for x in range(spec.num_states):
            for y in range(spec.num_states):
                if rng.random() < spec.transition_density:
                    triples.append((x, y, rng.choice(spec.degree_grid)))
        transitions.append(tuple(triples))
    initial = FuzzySet(tuple(rng.choice(end_grid) for _ in range(spec.num_states)))
    terminal = FuzzySet(tuple(rng.choice(end_grid) for _ in range(spec.num_states)))
    return FuzzyAutomaton(
        num_states=spec.num_states,
        alphabet=alphabet,
        transitions=tuple(transitions),
        initial=initial,
        terminal=terminal,
    )


def _dense_delta(automaton: FuzzyAutomaton) -> list[list[list[float]]]:
    n = automaton.num_states
    out = []
    for triples in automaton.transitions:
        grid = [[0.0] * n for _ in range(n)]
        for x, y, d in triples:
            grid[x][y] = d
        out.append(grid)
    return out


def naive_dbsim(st: Structure, a: FuzzyAutomaton, b: FuzzyAutomaton, k: int,
                mode: str = "sim") -> list[FuzzyRelation]:
    """The chain phi_0..phi_k by the dense recurrence, with no early exit.

    O(k * |alphabet| * n^4); intended for oracle-scale inputs only.
    """
    require_same_alphabet(a, b)
    if k < 0:
        raise ValueError("depth must be >= 0")
    bisim = canonical_mode(mode) == MODE_BISIM
    tnorm = st.tnorm
    residuum = st.residuum
    na = a.num_states
    nb = b.num_states
    delta_a = _dense_delta(a)
    delta_b = _dense_delta(b)
    init_op = st.biresiduum if bisim else residuum
    cur = [[init_op(tx, ty) for ty in b.terminal.degrees]
           for tx in a.terminal.degrees]
    chain = [FuzzyRelation(na, nb, tuple(tuple(row) for row in cur))]
    for _ in range(k):
        prev = cur
        nxt = [[0.0] * nb for _ in range(na)]
        for x in range(na):
            for xp in range(nb):
                value = prev[x][xp]
                for s in range(a.num_symbols):
                    da = delta_a[s]
                    db = delta_b[s]
                    for y in range(na):
                        bound = 0.0
                        for yp in range(nb):
                            v = tnorm(db[xp][yp], prev[y][yp])
                            if v > bound:
                                bound = v
                        r = residuum(da[x][y], bound)
                        if r < value:
                            value = r
                    if bisim:
                        for yp in range(nb):
                            bound = 0.0
                            for y in range(na):
                                v = tnorm(da[x][y], prev[y][yp])
                                if v > bound:
                                    bound = v
                            r = residuum(db[xp][yp], bound)
                            if r < value:
                                value = r
                nxt[x][xp] = value
        cur = nxt
        chain.append(FuzzyRelation(na, nb, tuple(tuple(row) for row in cur)))
    return chain


@dataclass(frozen=True)
class Violation:
    """One witnessed failure of a language inequality.

    ``x``/``xp`` are None for failures of the norm-level inequality.
    """

    x: Optional[int]
    xp: Optional[int]
    word: tuple[int, ...]
    lhs: float
    rhs: float

    def to_json(self) -> dict:
        return {"x": self.x, "xp": self.xp, "word": list(self.word),
                "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    violations: tuple[Violation, ...] = field(default=())

    def to_json(self) -> dict:
        return {"ok": self.ok,
                "violations": [v.to_json() for v in self.violations]}


def _language_tables(st: Structure, automaton: FuzzyAutomaton, n: int,
                     cap: int) -> list[dict]:
    """Bounded language of the automaton pinned at each state in turn."""
    return [language_bounded(st, pin_initial(automaton, x), n, cap)
            for x in range(automaton.num_states)]


def _verify_languages(st: Structure, a: FuzzyAutomaton, b: FuzzyAutomaton,
                      rel: FuzzyRelation, n: int, cap: int,
                      invariance: bool) -> VerificationReport:
    require_same_alphabet(a, b)
    compare = st.biresiduum if invariance else st.residuum
    eps = st.eps_cmp
    tables_a = _language_tables(st, a, n, cap)
    tables_b = _language_tables(st, b, n, cap)
    words = sorted(tables_a[0], key=lambda w: (len(w), w))
    violations: list[Violation] = []

    for x in range(a.num_states):
        lang_x = tables_a[x]
        for xp in range(b.num_states):
            value = rel.degrees[x][xp]
            if value <= eps:
                continue
            lang_xp = tables_b[xp]
            for word in words:
                gap = compare(lang_x[word], lang_xp[word])
                if value > gap + eps:
                    violations.append(Violation(x, xp, word, value, gap))

    norm = (bisim_norm if invariance else sim_norm)(st, rel, a, b)
    if norm > eps:
        lang_a = language_bounded(st, a, n, cap)
        lang_b = language_bounded(st, b, n, cap)
        for word in words:
            gap = compare(lang_a[word], lang_b[word])
            if norm > gap + eps:
                violations.append(Violation(None, None, word, norm, gap))

    return VerificationReport(ok=not violations, violations=tuple(violations))


def verify_language_preservation(st: Structure, a: FuzzyAutomaton,
                                 b: FuzzyAutomaton, rel: FuzzyRelation, n: int,
                                 cap: int = DEFAULT_WORD_CAP) -> VerificationReport:
    """Check, word by word, that rel fuzzily preserves languages up to length n.

    For every state pair the relation degree must lower-bound the graded
    inclusion of the pinned bounded languages, and the relation's norm must
    lower-bound the graded inclusion of the full bounded languages.
    """
    return _verify_languages(st, a, b, rel, n, cap, invariance=False)


def verify_language_invariance(st: Structure, a: FuzzyAutomaton,
                               b: FuzzyAutomaton, rel: FuzzyRelation, n: int,
                               cap: int = DEFAULT_WORD_CAP) -> VerificationReport:
    """Invariance counterpart: graded language equality and the bisim norm."""
    return _verify_languages(st, a, b, rel, n, cap, invariance=True)
