# leftcorner/semiring.py
"""
Semiring arithmetic for weighted grammars.

Provides:
- Semiring: immutable bundle of carrier operations (plus, times, star)
- boolean_semiring / real_semiring / viterbi_semiring instances
- check_axioms: sampled verification of the commutative-semiring laws
- closure: algebraic-path (Lehmann) closure of a sparse weight matrix
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Any, Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .config import get_settings
from .errors import StarDivergence

logger = logging.getLogger(__name__)


# =============================================================================
# SEMIRING TYPE
# =============================================================================

@dataclass(frozen=True)
class Semiring:
    """
    A commutative semiring with a (possibly partial) star.

    ``approximate`` carriers compare values with a relative/absolute
    tolerance; exact carriers use ``==``.
    """
    name: str
    zero: Any
    one: Any
    plus: Callable[[Any, Any], Any] = field(repr=False)
    times: Callable[[Any, Any], Any] = field(repr=False)
    star_fn: Callable[[Any], Any] = field(repr=False)
    approximate: bool = False
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12

    def add(self, a: Any, b: Any) -> Any:
        return self.plus(a, b)

    def mul(self, a: Any, b: Any) -> Any:
        return self.times(a, b)

    def star(self, a: Any) -> Any:
        return self.star_fn(a)

    def sum(self, values: Iterable[Any]) -> Any:
        return reduce(self.plus, values, self.zero)

    def product(self, values: Iterable[Any]) -> Any:
        return reduce(self.times, values, self.one)

    def is_zero(self, a: Any) -> bool:
        return a == self.zero

    def is_one(self, a: Any) -> bool:
        return a == self.one

    def diverged(self, a: Any) -> bool:
        """True when a closure value left the finite part of the carrier"""
        return self.approximate and isinstance(a, float) and math.isinf(a)

    def equal(self, a: Any, b: Any) -> bool:
        if not self.approximate:
            return a == b
        return math.isclose(a, b, rel_tol=self.rel_tol, abs_tol=self.abs_tol)

    def close(self, a: Any, b: Any, tol: float) -> bool:
        """Absolute-distance test used by fixed-point iteration"""
        if not self.approximate:
            return a == b
        if math.isinf(a) or math.isinf(b):
            return a == b
        return abs(a - b) <= tol

    def parse(self, text: str) -> Any:
        """Parse a weight literal as written in grammar files"""
        token = text.strip()
        if not self.approximate:
            lowered = token.lower()
            if lowered in ("true", "1", "⊤"):
                return True
            if lowered in ("false", "0", "⊥"):
                return False
            raise ValueError(f"not a boolean weight: {text!r}")
        if token.lower() in ("inf", "∞", "infinity"):
            return math.inf
        if "/" in token:
            return float(Fraction(token))
        return float(token)

    def format(self, value: Any) -> str:
        if not self.approximate:
            return "true" if value else "false"
        return repr(float(value))


# =============================================================================
# INSTANCES
# =============================================================================

def _tolerances() -> Dict[str, float]:
    settings = get_settings()
    return {"rel_tol": settings.REL_TOL, "abs_tol": settings.ABS_TOL}


def _real_times(a: float, b: float) -> float:
    # 0 annihilates infinity
    if a == 0.0 or b == 0.0:
        return 0.0
    return a * b


def _real_star(a: float) -> float:
    if a >= 1.0:
        return math.inf
    return 1.0 / (1.0 - a)


@lru_cache(maxsize=None)
def boolean_semiring() -> Semiring:
    """⟨{⊥,⊤}, ∨, ∧, ⊥, ⊤⟩ with star(a) = ⊤"""
    return Semiring(
        name="boolean",
        zero=False,
        one=True,
        plus=lambda a, b: bool(a or b),
        times=lambda a, b: bool(a and b),
        star_fn=lambda a: True,
    )


@lru_cache(maxsize=None)
def real_semiring() -> Semiring:
    """Nonnegative reals with ∞; star(a) = 1/(1-a) below 1, ∞ otherwise"""
    return Semiring(
        name="real",
        zero=0.0,
        one=1.0,
        plus=lambda a, b: a + b,
        times=_real_times,
        star_fn=_real_star,
        approximate=True,
        **_tolerances(),
    )


@lru_cache(maxsize=None)
def viterbi_semiring() -> Semiring:
    """
    ⟨[0,1], max, ·, 0, 1⟩.

    The additive identity of max over [0,1] is 0 and the multiplicative
    identity is 1; star is 1 everywhere on the carrier.
    """
    return Semiring(
        name="viterbi",
        zero=0.0,
        one=1.0,
        plus=max,
        times=_real_times,
        star_fn=lambda a: 1.0,
        approximate=True,
        **_tolerances(),
    )


SEMIRINGS: Dict[str, Callable[[], Semiring]] = {
    "boolean": boolean_semiring,
    "real": real_semiring,
    "viterbi": viterbi_semiring,
}


def get_semiring(name: str) -> Semiring:
    """Look up a shipped semiring by name"""
    try:
        return SEMIRINGS[name.lower()]()
    except KeyError:
        raise ValueError(
            f"unknown semiring {name!r}; expected one of {', '.join(SEMIRINGS)}"
        ) from None


# =============================================================================
# AXIOM CHECKING
# =============================================================================

@dataclass
class AxiomViolation:
    axiom: str
    operands: Tuple[Any, ...]
    left: Any
    right: Any


@dataclass
class AxiomReport:
    semiring: str
    samples: int
    checked: int = 0
    violations: List[AxiomViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_axioms(s: Semiring, samples: Sequence[Any]) -> AxiomReport:
    """
    Check the commutative-semiring laws and the star fixpoint on samples.

    Args:
        s: Semiring under test
        samples: At least three carrier values

    Returns:
        AxiomReport listing every violated instance

    Raises:
        ValueError: If fewer than three samples are given
    """
    values = list(samples)
    if len(values) < 3:
        raise ValueError("check_axioms needs at least 3 samples")

    report = AxiomReport(semiring=s.name, samples=len(values))

    def expect(axiom: str, operands: Tuple[Any, ...], left: Any, right: Any) -> None:
        report.checked += 1
        if not s.equal(left, right):
            report.violations.append(AxiomViolation(axiom, operands, left, right))

    for a in values:
        expect("plus identity", (a,), s.plus(a, s.zero), a)
        expect("times identity", (a,), s.times(a, s.one), a)
        expect("times left identity", (a,), s.times(s.one, a), a)
        expect("annihilation", (a,), s.times(a, s.zero), s.zero)
        expect("left annihilation", (a,), s.times(s.zero, a), s.zero)
        star = s.star(a)
        if not s.diverged(star):
            expect("star fixpoint", (a,), star, s.plus(s.one, s.times(a, star)))

    for a, b in itertools.product(values, repeat=2):
        expect("plus commutativity", (a, b), s.plus(a, b), s.plus(b, a))
        expect("times commutativity", (a, b), s.times(a, b), s.times(b, a))

    for a, b, c in itertools.product(values, repeat=3):
        expect("plus associativity", (a, b, c),
               s.plus(s.plus(a, b), c), s.plus(a, s.plus(b, c)))
        expect("times associativity", (a, b, c),
               s.times(s.times(a, b), c), s.times(a, s.times(b, c)))
        expect("right distributivity", (a, b, c),
               s.times(s.plus(a, b), c), s.plus(s.times(a, c), s.times(b, c)))
        expect("left distributivity", (a, b, c),
               s.times(c, s.plus(a, b)), s.plus(s.times(c, a), s.times(c, b)))

    if report.violations:
        logger.debug("%s: %d axiom violations", s.name, len(report.violations))
    return report


# =============================================================================
# ALGEBRAIC PATH CLOSURE
# =============================================================================

Matrix = Dict[Hashable, Dict[Hashable, Any]]


def closure(s: Semiring, matrix: Matrix, nodes: Optional[Iterable[Hashable]] = None) -> Matrix:
    """
    Reflexive-transitive closure W* = I ⊕ W ⊕ W² ⊕ ... of a sparse matrix.

    Lehmann's elimination: pivot on each node k in turn, folding paths
    through k with star of the accumulated k→k weight. Entries equal to
    0̄ are left out of the result.

    Args:
        s: Semiring for the entries
        matrix: row -> column -> weight
        nodes: Node order for pivoting (defaults to every row/column key)

    Returns:
        Closure matrix in the same sparse layout

    Raises:
        StarDivergence: If a pivot's cycle weight has no finite star
    """
    if nodes is None:
        keys = set(matrix)
        for row in matrix.values():
            keys.update(row)
        order = sorted(keys, key=repr)
    else:
        order = list(nodes)

    rows: Matrix = {i: {j: w for j, w in matrix.get(i, {}).items() if not s.is_zero(w)}
                    for i in order}

    for k in order:
        pivot = rows[k].get(k, s.zero)
        loop = s.star(pivot)
        if s.diverged(loop):
            raise StarDivergence(
                f"star diverges at pivot {k}: cycle weight {pivot!r}", details=[k]
            )
        column = {i: row[k] for i, row in rows.items() if k in row}
        outgoing = dict(rows[k])
        for i, left in column.items():
            through = s.times(left, loop)
            target = rows[i]
            for j, right in outgoing.items():
                target[j] = s.plus(target.get(j, s.zero), s.times(through, right))

    for i in order:
        rows[i][i] = s.plus(s.one, rows[i].get(i, s.zero))

    return {i: {j: w for j, w in row.items() if not s.is_zero(w)} for i, row in rows.items()}
