"""Residuated-lattice structures on the unit interval.

A structure bundles a t-norm with its adjoint residuum, plus the comparison
tolerance used everywhere degrees are compared. The three classic structures
(Godel, Lukasiewicz, product) are built in; user-defined pairs plug in through
:func:`custom_structure`. The built-ins are linear and their t-norms are
continuous, which the fixpoint results rely on; this is a documented
assumption, not a runtime check.
"""

from __future__ import annotations

from typing import Callable, Iterable

from .errors import DegreeRangeError

DEFAULT_EPS = 1e-9

BinaryOp = Callable[[float, float], float]


def validate_degree(value: float, what: str = "degree") -> float:
    """Return ``value`` if it is a real number in [0, 1], else raise."""
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise DegreeRangeError(f"{what} must be a real number, got {value!r}") from None
    if not 0.0 <= v <= 1.0:
        raise DegreeRangeError(f"{what} must lie in [0, 1], got {v!r}")
    return v


def _godel_tnorm(x: float, y: float) -> float:
    return x if x < y else y


def _godel_residuum(x: float, y: float) -> float:
    return 1.0 if x <= y else y


def _lukasiewicz_tnorm(x: float, y: float) -> float:
    v = x + y - 1.0
    return v if v > 0.0 else 0.0


def _lukasiewicz_residuum(x: float, y: float) -> float:
    v = 1.0 - x + y
    return v if v < 1.0 else 1.0


def _product_tnorm(x: float, y: float) -> float:
    return x * y


def _product_residuum(x: float, y: float) -> float:
    # x = 0 falls under x <= y, so the division is never by zero.
    return 1.0 if x <= y else y / x


class Structure:
    """A residuated lattice on [0, 1]: t-norm, residuum, comparison tolerance.

    Instances are immutable value objects; all methods are pure functions and
    safe to use from any number of threads.
    """

    __slots__ = ("kind", "tnorm", "residuum", "eps_cmp")

    def __init__(self, kind: str, tnorm: BinaryOp, residuum: BinaryOp,
                 eps_cmp: float = DEFAULT_EPS):
        if eps_cmp < 0.0:
            raise ValueError(f"eps_cmp must be >= 0, got {eps_cmp!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "tnorm", tnorm)
        object.__setattr__(self, "residuum", residuum)
        object.__setattr__(self, "eps_cmp", eps_cmp)

    def __setattr__(self, name, value):
        raise AttributeError("Structure instances are immutable")

    def __repr__(self) -> str:
        return f"Structure({self.kind!r}, eps_cmp={self.eps_cmp!r})"

    def biresiduum(self, x: float, y: float) -> float:
        """Graded equality: the meet of the residua in both directions."""
        a = self.residuum(x, y)
        b = self.residuum(y, x)
        return a if a < b else b

    @staticmethod
    def meet_all(values: Iterable[float]) -> float:
        """Infimum of a finite family; 1 on the empty family."""
        return min(values, default=1.0)

    @staticmethod
    def join_all(values: Iterable[float]) -> float:
        """Supremum of a finite family; 0 on the empty family."""
        return max(values, default=0.0)

    def leq(self, x: float, y: float) -> bool:
        """x <= y up to the comparison tolerance."""
        return x <= y + self.eps_cmp

    def approx(self, x: float, y: float) -> bool:
        """|x - y| <= the comparison tolerance."""
        return abs(x - y) <= self.eps_cmp


_BUILTINS: dict[str, tuple[BinaryOp, BinaryOp]] = {
    "godel": (_godel_tnorm, _godel_residuum),
    "lukasiewicz": (_lukasiewicz_tnorm, _lukasiewicz_residuum),
    "product": (_product_tnorm, _product_residuum),
}

STRUCTURE_NAMES = tuple(_BUILTINS)


def structure(name: str, eps_cmp: float = DEFAULT_EPS) -> Structure:
    """Look up a built-in structure by name ("godel", "lukasiewicz", "product")."""
    try:
        tnorm, residuum = _BUILTINS[name]
    except KeyError:
        known = ", ".join(STRUCTURE_NAMES)
        raise ValueError(f"unknown structure {name!r} (known: {known})") from None
    return Structure(name, tnorm, residuum, eps_cmp)


def custom_structure(tnorm: BinaryOp, residuum: BinaryOp,
                     eps_cmp: float = DEFAULT_EPS) -> Structure:
    """Wrap a user-supplied t-norm/residuum pair.

    The pair is expected to satisfy the adjunction x (x) y <= z iff
    x <= (y => z); this is checked by the property-test suite, not here.
    """
    return Structure("custom", tnorm, residuum, eps_cmp)
