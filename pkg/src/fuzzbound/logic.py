"""Modal formulas over an alphabet and the unit interval.

The language has the terminal-test atom, a diamond step along one symbol,
graded implication/equivalence guards, and conjunction. Formulas with
implication guards form the simulation dialect; those with equivalence
guards form the bisimulation dialect. Concrete syntax:

    T                     terminal test
    (sym . F)             step along `sym` into F
    (0.9 -> F)            graded implication guard
    (0.9 <-> F)           graded equivalence guard
    (F & F)               conjunction

Step symbols are identifiers; the name ``T`` is reserved for the terminal
test.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Sequence

from .automata import FuzzyAutomaton, build_index
from .errors import DialectError, FormulaSyntaxError
from .fuzzy import FuzzyRelation, FuzzySet, compose_rel_set, inverse, set_leq
from .lattice import Structure, validate_degree

DIALECT_SIM = "sim"
DIALECT_BISIM = "bisim"


class Formula:
    """Base class for formula nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Tau(Formula):
    pass


@dataclass(frozen=True)
class Dia(Formula):
    symbol: str
    child: Formula


@dataclass(frozen=True)
class Imp(Formula):
    constant: float
    child: Formula

    def __post_init__(self):
        object.__setattr__(
            self, "constant", validate_degree(self.constant, "formula constant"))


@dataclass(frozen=True)
class Equiv(Formula):
    constant: float
    child: Formula

    def __post_init__(self):
        object.__setattr__(
            self, "constant", validate_degree(self.constant, "formula constant"))


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


def formula_depth(formula: Formula) -> int:
    """Nesting depth of diamond steps."""
    if isinstance(formula, Tau):
        return 0
    if isinstance(formula, Dia):
        return formula_depth(formula.child) + 1
    if isinstance(formula, (Imp, Equiv)):
        return formula_depth(formula.child)
    if isinstance(formula, And):
        return max(formula_depth(formula.left), formula_depth(formula.right))
    raise TypeError(f"not a formula: {formula!r}")


def formula_size(formula: Formula) -> int:
    if isinstance(formula, Tau):
        return 1
    if isinstance(formula, (Dia, Imp, Equiv)):
        return 1 + formula_size(formula.child)
    if isinstance(formula, And):
        return 1 + formula_size(formula.left) + formula_size(formula.right)
    raise TypeError(f"not a formula: {formula!r}")


def in_dialect(formula: Formula, dialect: str) -> bool:
    """Does the formula avoid the guard the dialect excludes?"""
    banned = Equiv if _canonical_dialect(dialect) == DIALECT_SIM else Imp

    def walk(f: Formula) -> bool:
        if isinstance(f, banned):
            return False
        if isinstance(f, (Dia, Imp, Equiv)):
            return walk(f.child)
        if isinstance(f, And):
            return walk(f.left) and walk(f.right)
        return True

    return walk(formula)


def _canonical_dialect(dialect: str) -> str:
    if dialect in (DIALECT_SIM, DIALECT_BISIM):
        return dialect
    raise ValueError(f"unknown dialect {dialect!r} (use 'sim' or 'bisim')")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<lparen>\()|(?P<rparen>\))|(?P<equiv><->)|(?P<imp>->)"
    r"|(?P<dot>\.)|(?P<amp>&)|(?P<number>\d+(?:\.\d+)?(?:[eE][-+]?\d+)?)"
    r"|(?P<symbol>[A-Za-z_][A-Za-z0-9_]*))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.lastgroup is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise FormulaSyntaxError(f"unexpected character {text[at]!r}", at)
        kind = match.lastgroup
        value = match.group(kind)
        start = match.start(kind)
        if kind == "symbol" and value == "T":
            kind = "tau"
        tokens.append((kind, value, start))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def _peek(self) -> tuple[str, str, int]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("eof", "", len(self.text))

    def _take(self, kind: str, expected: str) -> tuple[str, str, int]:
        token = self._peek()
        if token[0] != kind:
            raise FormulaSyntaxError(
                f"expected {expected}, found {token[1]!r}" if token[0] != "eof"
                else f"expected {expected}, found end of input", token[2])
        self.index += 1
        return token

    def parse(self) -> Formula:
        formula = self._formula()
        token = self._peek()
        if token[0] != "eof":
            raise FormulaSyntaxError(f"trailing input {token[1]!r}", token[2])
        return formula

    def _formula(self) -> Formula:
        kind, value, pos = self._peek()
        if kind == "tau":
            self.index += 1
            return Tau()
        if kind != "lparen":
            raise FormulaSyntaxError(
                f"expected a formula, found {value!r}" if kind != "eof"
                else "expected a formula, found end of input", pos)
        self.index += 1
        kind, value, pos = self._peek()
        if kind == "symbol":
            self.index += 1
            self._take("dot", "'.'")
            child = self._formula()
            self._take("rparen", "')'")
            return Dia(value, child)
        if kind == "number":
            self.index += 1
            constant = float(value)
            if not 0.0 <= constant <= 1.0:
                raise FormulaSyntaxError(
                    f"constant {value} outside [0, 1]", pos)
            op_kind, op_value, op_pos = self._peek()
            if op_kind not in ("imp", "equiv"):
                raise FormulaSyntaxError(
                    f"expected '->' or '<->' after a constant, found {op_value!r}",
                    op_pos)
            self.index += 1
            child = self._formula()
            self._take("rparen", "')'")
            return Imp(constant, child) if op_kind == "imp" else Equiv(constant, child)
        left = self._formula()
        self._take("amp", "'&'")
        right = self._formula()
        self._take("rparen", "')'")
        return And(left, right)


def parse_formula(text: str) -> Formula:
    """Parse the concrete syntax; raises FormulaSyntaxError with a position."""
    return _Parser(text).parse()


def format_formula(formula: Formula) -> str:
    """Print a formula so that parsing the output reproduces it."""
    if isinstance(formula, Tau):
        return "T"
    if isinstance(formula, Dia):
        return f"({formula.symbol} . {format_formula(formula.child)})"
    if isinstance(formula, Imp):
        return f"({formula.constant!r} -> {format_formula(formula.child)})"
    if isinstance(formula, Equiv):
        return f"({formula.constant!r} <-> {format_formula(formula.child)})"
    if isinstance(formula, And):
        return f"({format_formula(formula.left)} & {format_formula(formula.right)})"
    raise TypeError(f"not a formula: {formula!r}")


def eval_formula(st: Structure, automaton: FuzzyAutomaton,
                 formula: Formula) -> FuzzySet:
    """Degree, per state, in which the state has the formula's property."""
    tnorm = st.tnorm
    residuum = st.residuum
    biresiduum = st.biresiduum
    succ = build_index(automaton).succ
    n = automaton.num_states

    def walk(f: Formula) -> list[float]:
        if isinstance(f, Tau):
            return list(automaton.terminal.degrees)
        if isinstance(f, Dia):
            s = automaton.symbol_index(f.symbol)
            child = walk(f.child)
            succ_s = succ[s]
            out = []
            for x in range(n):
                best = 0.0
                for y, d in succ_s[x]:
                    v = tnorm(d, child[y])
                    if v > best:
                        best = v
                out.append(best)
            return out
        if isinstance(f, Imp):
            return [residuum(f.constant, v) for v in walk(f.child)]
        if isinstance(f, Equiv):
            return [biresiduum(f.constant, v) for v in walk(f.child)]
        if isinstance(f, And):
            return [min(l, r) for l, r in zip(walk(f.left), walk(f.right))]
        raise TypeError(f"not a formula: {f!r}")

    return FuzzySet(tuple(walk(formula)))


def constant_pool_for(*automata: FuzzyAutomaton) -> tuple[float, ...]:
    """Degrees occurring in the automata, extended with 0, 0.5 and 1.

    Guards instantiated at reachable evaluation values discriminate best, so
    generators draw constants from this pool by default.
    """
    pool = {0.0, 0.5, 1.0}
    for automaton in automata:
        pool.update(automaton.initial.degrees)
        pool.update(automaton.terminal.degrees)
        for triples in automaton.transitions:
            pool.update(d for _, _, d in triples)
    return tuple(sorted(pool))


def random_formula(dialect: str, max_depth: int,
                   constant_pool: Sequence[float], symbols: Sequence[str],
                   seed: int, max_size: int = 64) -> Formula:
    """A random formula of the dialect with diamond depth <= max_depth.

    Deterministic per seed; the node count is at most ``max_size``.
    """
    if max_depth < 0:
        raise ValueError("max_depth must be >= 0")
    if not constant_pool:
        raise ValueError("constant_pool must not be empty")
    if not symbols:
        raise ValueError("symbols must not be empty")
    guard = Imp if _canonical_dialect(dialect) == DIALECT_SIM else Equiv
    rng = random.Random(seed)

    def build(depth_left: int, budget: int) -> Formula:
        # Produces a tree of at most `budget` nodes by splitting the budget
        # among children up front.
        kinds = ["tau"]
        weights = [2]
        if budget >= 2:
            kinds.append("guard")
            weights.append(3)
            if depth_left > 0:
                kinds.append("dia")
                weights.append(5)
        if budget >= 3:
            kinds.append("and")
            weights.append(2)
        kind = rng.choices(kinds, weights)[0]
        if kind == "tau":
            return Tau()
        if kind == "dia":
            return Dia(rng.choice(symbols), build(depth_left - 1, budget - 1))
        if kind == "guard":
            return guard(rng.choice(constant_pool), build(depth_left, budget - 1))
        left_share = rng.randint(1, budget - 2)
        return And(build(depth_left, left_share),
                   build(depth_left, budget - 1 - left_share))

    return build(max_depth, max_size)


def _require_usable(formula: Formula, depth_bound: int, dialect: str) -> None:
    if not in_dialect(formula, dialect):
        raise DialectError(
            f"formula {format_formula(formula)} is outside the {dialect} dialect")
    depth = formula_depth(formula)
    if depth > depth_bound:
        raise DialectError(
            f"formula depth {depth} exceeds the component depth {depth_bound}")


def hm_check_sim(st: Structure, a: FuzzyAutomaton, b: FuzzyAutomaton,
                 rel: FuzzyRelation, formula: Formula, depth_bound: int) -> bool:
    """Are the formula's degrees preserved through the relation?

    For a component of depth n of a depth-bounded fuzzy simulation and any
    simulation-dialect formula of depth <= n this must hold.
    """
    _require_usable(formula, depth_bound, DIALECT_SIM)
    va = eval_formula(st, a, formula)
    vb = eval_formula(st, b, formula)
    return set_leq(st, compose_rel_set(st, inverse(rel), va), vb)


def hm_check_bisim(st: Structure, a: FuzzyAutomaton, b: FuzzyAutomaton,
                   rel: FuzzyRelation, formula: Formula, depth_bound: int) -> bool:
    """Both-direction counterpart of :func:`hm_check_sim` for the bisim dialect."""
    _require_usable(formula, depth_bound, DIALECT_BISIM)
    va = eval_formula(st, a, formula)
    vb = eval_formula(st, b, formula)
    if not set_leq(st, compose_rel_set(st, inverse(rel), va), vb):
        return False
    return set_leq(st, compose_rel_set(st, rel, vb), va)


def formula_bound_relation(st: Structure, a: FuzzyAutomaton, b: FuzzyAutomaton,
                           formula: Formula, dialect: str) -> FuzzyRelation:
    """Pointwise bound a formula induces on relating state pairs.

    Entry (x, x') is the implication degree (sim dialect) or equivalence
    degree (bisim dialect) between the formula's values at x and x'. Every
    component of the corresponding depth regards it as an upper bound.
    """
    op = (st.residuum if _canonical_dialect(dialect) == DIALECT_SIM
          else st.biresiduum)
    va = eval_formula(st, a, formula)
    vb = eval_formula(st, b, formula)
    return FuzzyRelation(
        a.num_states, b.num_states,
        tuple(tuple(op(x_val, y_val) for y_val in vb.degrees)
              for x_val in va.degrees))
