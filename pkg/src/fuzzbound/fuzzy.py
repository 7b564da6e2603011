"""Fuzzy sets and fuzzy relations over finite, 0-based index sets.

Relations are stored dense (row-major lists of float rows); index sets are
contiguous integers, with display names kept elsewhere for I/O only. All
operations treat their inputs as immutable and return fresh values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, InputFormatError
from .lattice import Structure, validate_degree


@dataclass(frozen=True)
class FuzzySet:
    """A degree vector over 0..size-1."""

    degrees: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "degrees",
            tuple(validate_degree(v, "fuzzy-set degree") for v in self.degrees))

    @property
    def size(self) -> int:
        return len(self.degrees)

    def __getitem__(self, i: int) -> float:
        return self.degrees[i]

    def __iter__(self) -> Iterator[float]:
        return iter(self.degrees)

    @staticmethod
    def zeros(size: int) -> "FuzzySet":
        return FuzzySet((0.0,) * size)

    @staticmethod
    def from_support(size: int, entries: dict[int, float]) -> "FuzzySet":
        degrees = [0.0] * size
        for i, v in entries.items():
            degrees[i] = v
        return FuzzySet(tuple(degrees))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.degrees) if v > 0.0)

    def is_empty(self) -> bool:
        return not any(v > 0.0 for v in self.degrees)


@dataclass(frozen=True)
class FuzzyRelation:
    """A dense degree matrix over rows x cols."""

    rows: int
    cols: int
    degrees: tuple[tuple[float, ...], ...] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.degrees is None:
            grid = tuple((0.0,) * self.cols for _ in range(self.rows))
        else:
            grid = tuple(tuple(row) for row in self.degrees)
        if len(grid) != self.rows or any(len(row) != self.cols for row in grid):
            raise DimensionMismatch(
                f"relation grid does not match shape {self.rows}x{self.cols}")
        for row in grid:
            for v in row:
                validate_degree(v, "relation degree")
        object.__setattr__(self, "degrees", grid)

    def __getitem__(self, pair: tuple[int, int]) -> float:
        r, c = pair
        return self.degrees[r][c]

    @staticmethod
    def empty(rows: int, cols: int) -> "FuzzyRelation":
        return FuzzyRelation(rows, cols)

    @staticmethod
    def identity(n: int) -> "FuzzyRelation":
        return FuzzyRelation(
            n, n, tuple(tuple(1.0 if i == j else 0.0 for j in range(n))
                        for i in range(n)))

    @staticmethod
    def from_entries(rows: int, cols: int,
                     entries: Iterable[tuple[int, int, float]]) -> "FuzzyRelation":
        grid = [[0.0] * cols for _ in range(rows)]
        for r, c, v in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionMismatch(
                    f"entry ({r}, {c}) outside a {rows}x{cols} relation")
            grid[r][c] = v
        return FuzzyRelation(rows, cols, tuple(tuple(row) for row in grid))

    def entries(self) -> list[tuple[int, int, float]]:
        """All positive entries as (row, col, degree) triples."""
        return [(r, c, v)
                for r, row in enumerate(self.degrees)
                for c, v in enumerate(row) if v > 0.0]

    def is_empty(self) -> bool:
        return all(v == 0.0 for row in self.degrees for v in row)


def _require_same_shape(a: FuzzyRelation, b: FuzzyRelation) -> None:
    if a.rows != b.rows or a.cols != b.cols:
        raise DimensionMismatch(
            f"relations have shapes {a.rows}x{a.cols} and {b.rows}x{b.cols}")


def compose_rel_rel(st: Structure, left: FuzzyRelation,
                    right: FuzzyRelation) -> FuzzyRelation:
    """Sup-t-norm relation product: (left o right)(a, c) = sup_b left(a,b) (x) right(b,c)."""
    if left.cols != right.rows:
        raise DimensionMismatch(
            f"cannot compose {left.rows}x{left.cols} with {right.rows}x{right.cols}")
    tnorm = st.tnorm
    out = []
    for row in left.degrees:
        out_row = []
        for c in range(right.cols):
            best = 0.0
            for b, lv in enumerate(row):
                if lv > 0.0:
                    v = tnorm(lv, right.degrees[b][c])
                    if v > best:
                        best = v
            out_row.append(best)
        out.append(tuple(out_row))
    return FuzzyRelation(left.rows, right.cols, tuple(out))


def compose_set_rel(st: Structure, f: FuzzySet, rel: FuzzyRelation) -> FuzzySet:
    """(f o rel)(b) = sup_a f(a) (x) rel(a, b)."""
    if f.size != rel.rows:
        raise DimensionMismatch(
            f"set of size {f.size} does not left-compose with {rel.rows}x{rel.cols}")
    tnorm = st.tnorm
    out = []
    for b in range(rel.cols):
        best = 0.0
        for a, fv in enumerate(f.degrees):
            if fv > 0.0:
                v = tnorm(fv, rel.degrees[a][b])
                if v > best:
                    best = v
        out.append(best)
    return FuzzySet(tuple(out))


def compose_rel_set(st: Structure, rel: FuzzyRelation, g: FuzzySet) -> FuzzySet:
    """(rel o g)(a) = sup_b rel(a, b) (x) g(b)."""
    if g.size != rel.cols:
        raise DimensionMismatch(
            f"set of size {g.size} does not right-compose with {rel.rows}x{rel.cols}")
    tnorm = st.tnorm
    out = []
    for row in rel.degrees:
        best = 0.0
        for b, gv in enumerate(g.degrees):
            if gv > 0.0:
                v = tnorm(row[b], gv)
                if v > best:
                    best = v
        out.append(best)
    return FuzzySet(tuple(out))


def inverse(rel: FuzzyRelation) -> FuzzyRelation:
    """Transpose: inverse(rel)(b, a) = rel(a, b)."""
    return FuzzyRelation(
        rel.cols, rel.rows,
        tuple(tuple(rel.degrees[r][c] for r in range(rel.rows))
              for c in range(rel.cols)))


def subset_degree(st: Structure, g: FuzzySet, f: FuzzySet) -> float:
    """Graded inclusion S(g, f) = inf_a (g(a) => f(a))."""
    if g.size != f.size:
        raise DimensionMismatch(f"sets have sizes {g.size} and {f.size}")
    residuum = st.residuum
    return min((residuum(gv, fv) for gv, fv in zip(g.degrees, f.degrees)),
               default=1.0)


def equal_degree(st: Structure, g: FuzzySet, f: FuzzySet) -> float:
    """Graded equality E(g, f) = inf_a (g(a) <=> f(a))."""
    if g.size != f.size:
        raise DimensionMismatch(f"sets have sizes {g.size} and {f.size}")
    biresiduum = st.biresiduum
    return min((biresiduum(gv, fv) for gv, fv in zip(g.degrees, f.degrees)),
               default=1.0)


def set_leq(st: Structure, g: FuzzySet, f: FuzzySet) -> bool:
    """Pointwise g <= f within the comparison tolerance."""
    if g.size != f.size:
        raise DimensionMismatch(f"sets have sizes {g.size} and {f.size}")
    return all(st.leq(gv, fv) for gv, fv in zip(g.degrees, f.degrees))


def rel_leq(st: Structure, a: FuzzyRelation, b: FuzzyRelation) -> bool:
    """Pointwise a <= b within the comparison tolerance."""
    _require_same_shape(a, b)
    return all(st.leq(av, bv)
               for arow, brow in zip(a.degrees, b.degrees)
               for av, bv in zip(arow, brow))


def rel_meet(st: Structure, a: FuzzyRelation, b: FuzzyRelation) -> FuzzyRelation:
    _require_same_shape(a, b)
    return FuzzyRelation(
        a.rows, a.cols,
        tuple(tuple(min(av, bv) for av, bv in zip(arow, brow))
              for arow, brow in zip(a.degrees, b.degrees)))


def rel_join(st: Structure, a: FuzzyRelation, b: FuzzyRelation) -> FuzzyRelation:
    _require_same_shape(a, b)
    return FuzzyRelation(
        a.rows, a.cols,
        tuple(tuple(max(av, bv) for av, bv in zip(arow, brow))
              for arow, brow in zip(a.degrees, b.degrees)))


def relation_to_json(rel: FuzzyRelation) -> dict:
    """Sparse JSON form: zero entries are omitted."""
    return {
        "rows": rel.rows,
        "cols": rel.cols,
        "entries": [[r, c, v] for r, c, v in rel.entries()],
    }


def relation_from_json(doc: dict) -> FuzzyRelation:
    if not isinstance(doc, dict):
        raise InputFormatError("relation document must be a JSON object")
    try:
        rows = int(doc["rows"])
        cols = int(doc["cols"])
        raw = doc.get("entries", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"malformed relation document: {exc}") from None
    entries: list[tuple[int, int, float]] = []
    for item in raw:
        if not isinstance(item, Sequence) or len(item) != 3:
            raise InputFormatError(f"malformed relation entry {item!r}")
        entries.append((int(item[0]), int(item[1]),
                        validate_degree(item[2], "relation degree")))
    return FuzzyRelation.from_entries(rows, cols, entries)
