# leftcorner/preprocess.py
"""
Grammar conditioning steps.

Features:
- Null weights G_X(ε) by fixed-point iteration (any grammar)
- Null weights of GLCT outputs by a linear system and star closure
- Nullary-rule elimination (subset fold with null-weight multipliers)
- Unary-cycle elimination via the closure of the unary-rule matrix
- Binarization with deterministic fresh symbols
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple

from .config import get_settings
from .errors import NoConvergence, NotGLCTShape, StarDivergence
from .grammar import WCFG, Rule, Symbol, nonterminal
from .semiring import Semiring, closure

logger = logging.getLogger(__name__)


# =============================================================================
# NULL WEIGHTS
# =============================================================================

@dataclass
class NullWeightVector:
    """G_X(ε) per nonterminal; absent symbols are 0̄"""
    semiring: Semiring
    weights: Dict[Symbol, Any] = field(default_factory=dict)
    iterations: int = 0
    method: str = "fixed-point"

    def __getitem__(self, symbol: Symbol) -> Any:
        return self.weights.get(symbol, self.semiring.zero)

    def nullable(self) -> Set[Symbol]:
        return {s for s, w in self.weights.items() if not self.semiring.is_zero(w)}

    def agrees_with(self, other: "NullWeightVector", tol: float) -> bool:
        keys = set(self.weights) | set(other.weights)
        return all(self.semiring.close(self[k], other[k], tol) for k in keys)


def _step(g: WCFG, current: Dict[Symbol, Any]) -> Dict[Symbol, Any]:
    s = g.semiring
    nxt = {x: s.zero for x in g.nonterminals}
    for rule in g.rules:
        value = rule.weight
        for sym in rule.rhs:
            if sym.is_terminal:
                value = s.zero
                break
            value = s.times(value, current[sym])
            if s.is_zero(value):
                break
        if not s.is_zero(value):
            nxt[rule.lhs] = s.plus(nxt[rule.lhs], value)
    return nxt


def null_weight_iterates(g: WCFG) -> Iterator[Dict[Symbol, Any]]:
    """Successive iterates of the ε-equations, starting from all 0̄"""
    current = {x: g.semiring.zero for x in g.nonterminals}
    while True:
        current = _step(g, current)
        yield current


def null_weights_fixed_point(
    g: WCFG,
    max_iters: Optional[int] = None,
    tol: Optional[float] = None,
) -> NullWeightVector:
    """
    Smallest solution of the null-weight equations by iteration from 0̄.

    Args:
        g: Any grammar
        max_iters: Iteration limit (settings default 10,000)
        tol: Stop when successive iterates differ by at most tol

    Raises:
        NoConvergence: If the iterates are still moving after max_iters
    """
    settings = get_settings()
    max_iters = settings.FIXED_POINT_MAX_ITERS if max_iters is None else max_iters
    tol = settings.FIXED_POINT_TOL if tol is None else tol
    s = g.semiring

    previous = {x: s.zero for x in g.nonterminals}
    for iteration, current in enumerate(null_weight_iterates(g), start=1):
        if all(s.close(previous[x], current[x], tol) for x in current):
            logger.debug("null weights converged after %d iterations", iteration)
            return NullWeightVector(s, _nonzero(s, current), iteration, "fixed-point")
        if iteration >= max_iters:
            raise NoConvergence(f"null weights did not converge within {max_iters} iterations")
        previous = current
    raise AssertionError("unreachable")


def _nonzero(s: Semiring, weights: Dict[Symbol, Any]) -> Dict[Symbol, Any]:
    return {x: w for x, w in weights.items() if not s.is_zero(w)}


def null_weights_glct(g: WCFG) -> NullWeightVector:
    """
    Null weights of a GLCT output of a nullary-free grammar.

    Only slashed symbols can derive ε, through unary slashed rules and the
    X/X -> ε rules, so the weights are W* v for the unary slashed matrix W
    and the nullary vector v.

    Raises:
        NotGLCTShape: If a nullary rule has a non-slashed left-hand side
    """
    s = g.semiring
    offending = [r for r in g.rules if r.is_nullary and not r.lhs.is_slashed]
    if offending:
        raise NotGLCTShape(
            "nullary rules outside the slashed family: " + ", ".join(str(r) for r in offending[:5]),
            details=offending,
        )

    v: Dict[Symbol, Any] = {}
    W: Dict[Symbol, Dict[Symbol, Any]] = {}
    for rule in g.rules:
        if not rule.lhs.is_slashed:
            continue
        if rule.is_nullary:
            v[rule.lhs] = s.plus(v.get(rule.lhs, s.zero), rule.weight)
        elif len(rule.rhs) == 1 and rule.rhs[0].is_slashed:
            row = W.setdefault(rule.lhs, {})
            row[rule.rhs[0]] = s.plus(row.get(rule.rhs[0], s.zero), rule.weight)

    weights = dict(v)
    if W:
        star = closure(s, W)
        for x, row in star.items():
            total = s.zero
            for y, w in row.items():
                if y in v:
                    total = s.plus(total, s.times(w, v[y]))
            weights[x] = total
    logger.debug("glct null weights: %d slashed symbols, %d unary entries", len(v), sum(map(len, W.values())))
    return NullWeightVector(s, _nonzero(s, weights), 1, "glct-fast")


# =============================================================================
# NULLARY ELIMINATION
# =============================================================================

def eliminate_nullary(g: WCFG, null_weights: Optional[NullWeightVector] = None) -> WCFG:
    """
    Equivalent grammar (on non-empty strings) without nullary rules.

    Each rule is copied once per subset of nullable children left out, its
    weight multiplied by their null weights. Symbols that only derived ε
    lose their rules; rules mentioning them are dropped. The start
    symbol's null weight is kept in metadata["start_null_weight"].

    Raises:
        NoConvergence: From the null-weight computation
    """
    s = g.semiring
    nulls = null_weights if null_weights is not None else null_weights_fixed_point(g)

    rules: List[Rule] = []
    for rule in g.rules:
        if rule.is_nullary:
            continue
        optional = [i for i, sym in enumerate(rule.rhs) if not s.is_zero(nulls[sym])]
        for size in range(len(optional) + 1):
            for dropped in itertools.combinations(optional, size):
                rhs = tuple(sym for i, sym in enumerate(rule.rhs) if i not in dropped)
                if not rhs:
                    continue
                if not dropped:
                    rules.append(Rule(rule.lhs, rhs, rule.weight))
                    continue
                weight = s.product([rule.weight] + [nulls[rule.rhs[i]] for i in dropped])
                if not s.is_zero(weight):
                    rules.append(Rule(rule.lhs, rhs, weight))

    nullable = nulls.nullable()
    while True:
        heads = {r.lhs for r in rules}
        empty = {x for x in nullable if x not in heads}
        kept = [r for r in rules if not any(sym in empty for sym in r.rhs)]
        if len(kept) == len(rules):
            break
        rules = kept

    metadata = dict(g.metadata)
    start_null = nulls[g.start]
    if not s.is_zero(start_null):
        metadata["start_null_weight"] = start_null
    logger.info("nullary elimination: %d -> %d rules", len(g.rules), len(rules))
    return WCFG.build(g.start, rules, s, nonterminals=g.nonterminals, terminals=g.terminals, metadata=metadata)


# =============================================================================
# UNARY ELIMINATION
# =============================================================================

def eliminate_unary_cycles(g: WCFG) -> WCFG:
    """
    Fold the unary closure U* into the remaining rules and drop all rules
    X -> Y with Y a nonterminal.

    Raises:
        StarDivergence: If a unary cycle has weight without a finite star
    """
    s = g.semiring
    U: Dict[Symbol, Dict[Symbol, Any]] = {}
    for rule in g.rules:
        if rule.is_unary:
            row = U.setdefault(rule.lhs, {})
            row[rule.rhs[0]] = s.plus(row.get(rule.rhs[0], s.zero), rule.weight)
    if not U:
        return g

    nodes = sorted(set(U) | {y for row in U.values() for y in row})
    try:
        star = closure(s, U, nodes)
    except StarDivergence as exc:
        raise StarDivergence(f"unary closure diverges: {exc.message}", details=exc.details) from exc

    # predecessors: X with U*[X][Y] ≠ 0̄, for each Y
    into: Dict[Symbol, List[Tuple[Symbol, Any]]] = {}
    for x in nodes:
        for y, w in star.get(x, {}).items():
            into.setdefault(y, []).append((x, w))

    rules: List[Rule] = []
    for rule in g.rules:
        if rule.is_unary:
            continue
        sources = into.get(rule.lhs)
        if sources is None:
            rules.append(rule)
            continue
        for x, w in sorted(sources, key=lambda item: item[0].sort_key):
            rules.append(Rule(x, rule.rhs, s.times(w, rule.weight)))
    logger.info("unary elimination: %d -> %d rules", len(g.rules), len(rules))
    return WCFG.build(g.start, rules, s, nonterminals=g.nonterminals, terminals=g.terminals, metadata=g.metadata)


# =============================================================================
# BINARIZATION
# =============================================================================

def fold_symbol(suffix: Tuple[Symbol, ...]) -> Symbol:
    """Fresh nonterminal ⟨b.c⟩ naming a folded right-hand-side suffix"""
    return nonterminal("⟨" + ".".join(sym.render() for sym in suffix) + "⟩")


def binarize(g: WCFG) -> WCFG:
    """
    Right-hand sides of length > 2 are folded left to right:
    X -> a b c (w) becomes X -> a ⟨b.c⟩ (w) and ⟨b.c⟩ -> b c (1̄).
    Fold symbols are shared between rules with the same suffix.
    """
    one = g.semiring.one
    rules: List[Rule] = []
    defined: Set[Symbol] = set()
    for rule in g.rules:
        if rule.arity <= 2:
            rules.append(rule)
            continue
        rest = rule.rhs[1:]
        rules.append(Rule(rule.lhs, (rule.rhs[0], fold_symbol(rest)), rule.weight))
        while len(rest) > 2:
            head = fold_symbol(rest)
            tail = rest[1:]
            if head not in defined:
                defined.add(head)
                rules.append(Rule(head, (rest[0], fold_symbol(tail)), one))
            rest = tail
        head = fold_symbol(rest)
        if head not in defined:
            defined.add(head)
            rules.append(Rule(head, rest, one))
    return WCFG.build(g.start, rules, g.semiring, nonterminals=g.nonterminals, terminals=g.terminals, metadata=g.metadata)


# =============================================================================
# PIPELINE
# =============================================================================

STEPS = {
    "unary": eliminate_unary_cycles,
    "nullary": eliminate_nullary,
    "binarize": binarize,
}


def run_steps(g: WCFG, steps: List[str]) -> WCFG:
    """Apply named preprocessing steps in order"""
    for name in steps:
        try:
            step = STEPS[name]
        except KeyError:
            raise ValueError(f"unknown preprocessing step {name!r}; expected one of {', '.join(STEPS)}") from None
        g = step(g)
        logger.debug("after %s: %d rules, size %d", name, len(g.rules), g.size)
    return g
