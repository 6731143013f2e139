# leftcorner/transform.py
"""
Left-corner style grammar transformations.

Features:
- TransformParams: validated (P, X) choice with a fresh transformation id
- glct: generalized left-corner transformation (six rule families)
- glct_filtered: the same with useless-rule filters applied while emitting
- speculate: the speculation transformation (left-branching slashed chains)
- lct / slct: the classical and selective special cases
- rule_count_bound: upper bound on the number of emitted rules
"""

import itertools
import logging
from collections import defaultdict, deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Union

from .errors import InvalidParams
from .grammar import WCFG, Rule, Symbol, frozen, slashed, transform_ids

logger = logging.getLogger(__name__)

_transform_counter = itertools.count(1)


def next_transform_id(g: Optional[WCFG] = None) -> int:
    """Next id from the process-wide counter, skipping ids already in ``g``"""
    taken = transform_ids(g.symbols) if g is not None else set()
    while True:
        tid = next(_transform_counter)
        if tid not in taken:
            return tid


# =============================================================================
# PARAMETERS AND FAMILIES
# =============================================================================

class RuleFamily(str, Enum):
    """Rule families emitted by the transformations, in emission order"""
    RECOVER_FROZEN = "recover-frozen"          # X -> ~X
    RECOVER_SLASHED = "recover-slashed"        # X -> ~α X/α
    SLASH_BASE = "slash-base"                  # X/X -> ε
    SLASH_RECURSIVE = "slash-recursive"        # Y/α -> β Y/X  (speculation: X/Y -> α/Y β)
    FROZEN_BASE = "frozen-base"                # ~X -> α
    FROZEN_RECURSIVE = "frozen-recursive"      # ~X -> ~α β


@dataclass(frozen=True)
class TransformParams:
    """
    Left-corner recognition rules ``P`` and symbols ``X`` for a grammar.

    Use ``TransformParams.create`` to validate and allocate an id.
    """
    grammar: WCFG = field(compare=False, repr=False)
    P: FrozenSet[Rule]
    X: FrozenSet[Symbol]
    tid: int

    @classmethod
    def create(
        cls,
        g: WCFG,
        P: Iterable[Union[Rule, int]] = (),
        X: Iterable[Symbol] = (),
        tid: Optional[int] = None,
    ) -> "TransformParams":
        """
        Validate (P, X) against ``g``.

        Args:
            g: Source grammar
            P: Rules of g, or indices into g.rules
            X: Symbols of g
            tid: Transformation id (fresh when omitted)

        Raises:
            InvalidParams: If P ⊄ R, P has a nullary rule, X ⊄ V ∪ N,
                or tid is already used by a symbol of g
        """
        rules: Set[Rule] = set()
        bad: List[str] = []
        for item in P:
            if isinstance(item, int):
                if not 0 <= item < len(g.rules):
                    bad.append(f"rule index {item} out of range")
                    continue
                item = g.rules[item]
            if item not in g.rule_set:
                bad.append(f"rule {item} is not in the grammar")
            elif item.is_nullary:
                bad.append(f"rule {item} is nullary")
            else:
                rules.add(item)
        symbols = frozenset(X)
        bad.extend(f"symbol {s} is not in the grammar" for s in sorted(symbols - g.symbols))
        if tid is None:
            tid = next_transform_id(g)
        elif tid in transform_ids(g.symbols):
            bad.append(f"transform id {tid} is already used by the grammar")
        if bad:
            raise InvalidParams("invalid transformation parameters: " + "; ".join(bad), details=bad)
        return cls(g, frozenset(rules), symbols, tid)

    @property
    def p_rules(self) -> List[Rule]:
        """Rules of P in grammar order, duplicates kept"""
        return [r for r in self.grammar.rules if r in self.P]

    def p_indices(self) -> List[int]:
        return [i for i, r in enumerate(self.grammar.rules) if r in self.P]

    def frozen(self, symbol: Symbol) -> Symbol:
        return frozen(symbol, self.tid)

    def slashed(self, numerator: Symbol, denominator: Symbol) -> Symbol:
        return slashed(numerator, denominator, self.tid)

    @cached_property
    def glct_rules(self) -> FrozenSet[Rule]:
        return glct(self.grammar, self).rule_set

    @cached_property
    def speculation_rules(self) -> FrozenSet[Rule]:
        return speculate(self.grammar, self).rule_set


# =============================================================================
# FAMILY CONSTRUCTION
# =============================================================================

Families = Dict[RuleFamily, List[Rule]]


def _shared_families(g: WCFG, params: TransformParams, families: Families) -> None:
    """Recovery and frozen families common to GLCT and speculation"""
    one = g.semiring.one
    recognised = sorted(params.X)
    for x in g.sorted_nonterminals():
        if x not in params.X:
            families[RuleFamily.RECOVER_FROZEN].append(Rule(x, (params.frozen(x),), one))
    for x in g.sorted_nonterminals():
        for alpha in recognised:
            families[RuleFamily.RECOVER_SLASHED].append(
                Rule(x, (params.frozen(alpha), params.slashed(x, alpha)), one)
            )
    for rule in g.rules:
        if rule in params.P:
            if rule.rhs[0] not in params.X:
                families[RuleFamily.FROZEN_RECURSIVE].append(
                    Rule(params.frozen(rule.lhs), (params.frozen(rule.rhs[0]),) + rule.rhs[1:], rule.weight)
                )
        else:
            families[RuleFamily.FROZEN_BASE].append(Rule(params.frozen(rule.lhs), rule.rhs, rule.weight))


def glct_families(g: WCFG, params: TransformParams) -> Families:
    """GLCT output grouped by family"""
    families: Families = {family: [] for family in RuleFamily}
    _shared_families(g, params, families)
    one = g.semiring.one
    for x in g.sorted_symbols():
        families[RuleFamily.SLASH_BASE].append(Rule(params.slashed(x, x), (), one))
    for rule in params.p_rules:
        alpha, beta = rule.rhs[0], rule.rhs[1:]
        for y in g.sorted_nonterminals():
            families[RuleFamily.SLASH_RECURSIVE].append(
                Rule(params.slashed(y, alpha), beta + (params.slashed(y, rule.lhs),), rule.weight)
            )
    return families


def speculate_families(g: WCFG, params: TransformParams, restrict_denominator: bool = False) -> Families:
    """
    Speculation output grouped by family.

    With ``restrict_denominator`` the slashed rules are only emitted for
    denominators in X; this drops useless rules only.
    """
    families: Families = {family: [] for family in RuleFamily}
    _shared_families(g, params, families)
    one = g.semiring.one
    denominators = [y for y in g.sorted_symbols() if not restrict_denominator or y in params.X]
    for y in denominators:
        families[RuleFamily.SLASH_BASE].append(Rule(params.slashed(y, y), (), one))
    for rule in params.p_rules:
        alpha, beta = rule.rhs[0], rule.rhs[1:]
        for y in denominators:
            families[RuleFamily.SLASH_RECURSIVE].append(
                Rule(params.slashed(rule.lhs, y), (params.slashed(alpha, y),) + beta, rule.weight)
            )
    return families


def _p_reachability(params: TransformParams):
    """X ⇝ α over the left-recursion graph restricted to P (reflexive)"""
    edges: Dict[Symbol, Set[Symbol]] = defaultdict(set)
    for rule in params.P:
        edges[rule.lhs].add(rule.rhs[0])
    cache: Dict[Symbol, FrozenSet[Symbol]] = {}

    def reach(start: Symbol) -> FrozenSet[Symbol]:
        if start not in cache:
            seen = {start}
            queue = deque([start])
            while queue:
                for nxt in edges.get(queue.popleft(), ()):
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
            cache[start] = frozenset(seen)
        return cache[start]

    return reach


def retained_symbols(g: WCFG, params: TransformParams) -> Set[Symbol]:
    """
    Symbols that can appear as the root of a recovered subtree: the start,
    non-leftmost children of P rules, and every child of the other rules.
    """
    kept = {g.start}
    for rule in g.rules:
        kept.update(rule.rhs[1:] if rule in params.P else rule.rhs)
    return kept


def glct_filtered_families(g: WCFG, params: TransformParams) -> Families:
    """GLCT families minus rules that the retained/reachability filters rule out"""
    families: Families = {family: [] for family in RuleFamily}
    one = g.semiring.one
    reach = _p_reachability(params)
    kept = retained_symbols(g, params)

    def reaches_x(symbol: Symbol) -> bool:
        return not params.X.isdisjoint(reach(symbol))

    heads = [x for x in g.sorted_nonterminals() if x in kept]
    for x in heads:
        if x not in params.X:
            families[RuleFamily.RECOVER_FROZEN].append(Rule(x, (params.frozen(x),), one))
    for x in heads:
        for alpha in sorted(params.X & reach(x)):
            families[RuleFamily.RECOVER_SLASHED].append(
                Rule(x, (params.frozen(alpha), params.slashed(x, alpha)), one)
            )
    for x in g.sorted_symbols():
        if x in kept and reaches_x(x):
            families[RuleFamily.SLASH_BASE].append(Rule(params.slashed(x, x), (), one))
    for rule in params.p_rules:
        alpha, beta = rule.rhs[0], rule.rhs[1:]
        if not reaches_x(alpha):
            continue
        for y in heads:
            if alpha in reach(y):
                families[RuleFamily.SLASH_RECURSIVE].append(
                    Rule(params.slashed(y, alpha), beta + (params.slashed(y, rule.lhs),), rule.weight)
                )
    for rule in g.rules:
        if rule in params.P:
            if rule.rhs[0] not in params.X:
                families[RuleFamily.FROZEN_RECURSIVE].append(
                    Rule(params.frozen(rule.lhs), (params.frozen(rule.rhs[0]),) + rule.rhs[1:], rule.weight)
                )
        else:
            families[RuleFamily.FROZEN_BASE].append(Rule(params.frozen(rule.lhs), rule.rhs, rule.weight))
    return families


def assemble(g: WCFG, params: TransformParams, families: Families, kind: str) -> WCFG:
    """Build the transformed grammar from already computed rule families"""
    rules = [rule for family in RuleFamily for rule in families[family]]
    counts = {family.value: len(families[family]) for family in RuleFamily}
    logger.info("%s (id %d): %d rules %s", kind, params.tid, len(rules), counts)
    return WCFG.build(
        g.start,
        rules,
        g.semiring,
        nonterminals=g.nonterminals,
        terminals=g.terminals,
        metadata={"transform": kind, "transform_id": params.tid},
    )


# =============================================================================
# TRANSFORMATIONS
# =============================================================================

def glct(g: WCFG, params: TransformParams) -> WCFG:
    """Generalized left-corner transformation (untrimmed)"""
    return assemble(g, params, glct_families(g, params), "glct")


def glct_filtered(g: WCFG, params: TransformParams) -> WCFG:
    """GLCT emitting only rules that pass the usefulness filters"""
    return assemble(g, params, glct_filtered_families(g, params), "glct-filtered")


def speculate(g: WCFG, params: TransformParams, restrict_denominator: bool = False) -> WCFG:
    """Speculation transformation (untrimmed)"""
    return assemble(g, params, speculate_families(g, params, restrict_denominator), "speculate")


def lct_params(g: WCFG, tid: Optional[int] = None) -> TransformParams:
    """P = R, X = N ∪ V; fails with InvalidParams on nullary rules"""
    return TransformParams.create(g, g.rules, g.symbols, tid)


def slct_params(g: WCFG, P: Iterable[Union[Rule, int]], tid: Optional[int] = None) -> TransformParams:
    return TransformParams.create(g, P, g.symbols, tid)


def lct(g: WCFG) -> WCFG:
    return glct(g, lct_params(g))


def slct(g: WCFG, P: Iterable[Union[Rule, int]]) -> WCFG:
    return glct(g, slct_params(g, P))


def rule_count_bound(g: WCFG, params: TransformParams) -> int:
    """|R| + |N|(1 + |X| + |P|) + |N∖X| + |V|"""
    n = len(g.nonterminals)
    return (
        len(g.rules)
        + n * (1 + len(params.X) + len(params.p_rules))
        + len(g.nonterminals - params.X)
        + len(g.terminals)
    )
