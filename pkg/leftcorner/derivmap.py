# leftcorner/derivmap.py
"""
Derivation structure and the tree mappings between a grammar and its
left-corner / speculation transforms.

Features:
- spine / left_corner: decompose a derivation along its left edge
- phi / phi_inverse: bijection between derivations of G and of glct(G)
- glct_to_spec / spec_to_glct: bijection between glct(G) and speculate(G)
"""

import logging
from dataclasses import dataclass
from typing import Collection, List, Optional, Sequence, Tuple

from .errors import ForeignRule, MalformedShape
from .grammar import Derivation, Rule, Symbol
from .transform import TransformParams

logger = logging.getLogger(__name__)


# =============================================================================
# SPINE AND LEFT CORNER
# =============================================================================

@dataclass(frozen=True)
class SpineDecomposition:
    """
    Subtrees t_1 .. t_K along the left edge, bottom to top.

    t_K is the whole tree; the rule at each t_{i+1} (i ≥ 1) is in P and has
    t_i as its first child. The rule at t_1, if any, is not in P.
    """
    nodes: Tuple[Derivation, ...]

    @property
    def K(self) -> int:
        return len(self.nodes)

    @property
    def spine(self) -> Tuple[Rule, ...]:
        """Spine rules from the top down"""
        return tuple(self.nodes[i].rule for i in range(self.K - 1, 0, -1))

    @property
    def spine_symbols(self) -> Tuple[Symbol, ...]:
        """X_1 .. X_K"""
        return tuple(node.label for node in self.nodes)

    @property
    def bottom(self) -> Derivation:
        return self.nodes[0]

    def rest(self, i: int) -> Tuple[Derivation, ...]:
        """β_i: the children after the spine child at X_{i+1}, 1 ≤ i < K"""
        return self.nodes[i].children[1:]

    def reassemble(self) -> Derivation:
        tree = self.bottom
        for i in range(1, self.K):
            node = self.nodes[i]
            tree = Derivation(node.label, node.rule, (tree,) + self.rest(i))
        return tree


@dataclass(frozen=True)
class LeftCornerResult:
    """The left corner and its 1-based spine index, or both None (⊥)"""
    corner: Optional[Derivation]
    index: Optional[int]
    decomposition: SpineDecomposition

    @property
    def found(self) -> bool:
        return self.corner is not None


def spine(t: Derivation, P: Collection[Rule]) -> SpineDecomposition:
    """Follow first children while the node's rule is in P"""
    nodes = [t]
    node = t
    while node.rule is not None and node.children and node.rule in P:
        node = node.children[0]
        nodes.append(node)
    return SpineDecomposition(tuple(reversed(nodes)))


def left_corner(t: Derivation, P: Collection[Rule], X: Collection[Symbol], proper: bool = False) -> LeftCornerResult:
    """
    Bottommost spine subtree labeled in X.

    With ``proper`` the root itself is not a candidate; this is the sense in
    which a frozen symbol ~α covers trees "without a left corner".
    """
    d = spine(t, P)
    last = d.K - 1 if proper else d.K
    for i in range(1, last + 1):
        if d.nodes[i - 1].label in X:
            return LeftCornerResult(d.nodes[i - 1], i, d)
    return LeftCornerResult(None, None, d)


# =============================================================================
# GLCT MAPPING
# =============================================================================

def _require(rule: Optional[Rule], allowed, what: str) -> None:
    if rule is not None and rule not in allowed:
        raise ForeignRule(f"rule {rule} is not a rule of the {what}", details=[rule])


def phi(t: Derivation, params: TransformParams) -> Derivation:
    """
    Map a derivation of G to the corresponding derivation of glct(G).

    Raises:
        ForeignRule: If t uses a rule that G does not have
    """
    if t.is_leaf:
        return t
    source = params.grammar.rule_set
    d = spine(t, params.P)
    for node in d.nodes:
        _require(node.rule, source, "source grammar")

    found = left_corner(t, params.P, params.X)
    top = d.K if found.index is None else found.index
    corner = _freeze(d, top, params)
    root = t.label
    one = params.grammar.semiring.one

    if found.index is None:
        rule = Rule(root, (params.frozen(root),), one)
        return Derivation(root, rule, (corner,))

    chain = _slash_chain(d, found.index, params)
    rule = Rule(root, (corner.label, chain.label), one)
    return Derivation(root, rule, (corner, chain))


def phi_sequence(ts: Sequence[Derivation], params: TransformParams) -> Tuple[Derivation, ...]:
    return tuple(phi(t, params) for t in ts)


def _freeze(d: SpineDecomposition, top: int, params: TransformParams) -> Derivation:
    """Frozen chain ~X_top over t_1 .. t_top"""
    bottom = d.bottom
    if bottom.is_leaf:
        tree = bottom
    else:
        rule = bottom.rule
        frozen_rule = Rule(params.frozen(rule.lhs), rule.rhs, rule.weight)
        tree = Derivation(frozen_rule.lhs, frozen_rule, phi_sequence(bottom.children, params))
    for i in range(1, top):
        node = d.nodes[i]
        rule = node.rule
        frozen_rule = Rule(
            params.frozen(rule.lhs), (params.frozen(rule.rhs[0]),) + rule.rhs[1:], rule.weight
        )
        tree = Derivation(frozen_rule.lhs, frozen_rule, (tree,) + phi_sequence(d.rest(i), params))
    return tree


def _slash_chain(d: SpineDecomposition, k: int, params: TransformParams) -> Derivation:
    """Right-branching chain X_K/X_k -> β_k X_K/X_{k+1} -> ... -> X_K/X_K -> ε"""
    root = d.nodes[-1].label
    base = params.slashed(root, root)
    tree = Derivation(base, Rule(base, (), params.grammar.semiring.one), ())
    for i in range(d.K - 1, k - 1, -1):
        rule = d.nodes[i].rule
        lhs = params.slashed(root, rule.rhs[0])
        slash_rule = Rule(lhs, rule.rhs[1:] + (tree.label,), rule.weight)
        tree = Derivation(lhs, slash_rule, phi_sequence(d.rest(i), params) + (tree,))
    return tree


def phi_inverse(t: Derivation, params: TransformParams) -> Derivation:
    """
    Map a derivation of glct(G) rooted at an original symbol back to G.

    Raises:
        ForeignRule: If t uses a rule outside glct(G) or implies a rule
            outside G
        MalformedShape: If the root is not built by a recovery rule
    """
    if t.is_leaf:
        return t
    _require(t.rule, params.glct_rules, "transformed grammar")
    root = t.label
    rhs = t.rule.rhs
    if not root.is_original:
        raise MalformedShape(f"{root} is not an original nonterminal", details=[t.rule])

    if rhs == (params.frozen(root),):
        return _unfreeze(t.children[0], params)

    if len(rhs) == 2 and rhs[1].is_slashed and rhs[1].tid == params.tid \
            and rhs[1].numerator == root and rhs[0] == params.frozen(rhs[1].denominator):
        corner = _unfreeze(t.children[0], params)
        return _unslash(t.children[1], corner, params)

    raise MalformedShape(f"{t.rule} is not a recovery rule", details=[t.rule])


def phi_inverse_sequence(ts: Sequence[Derivation], params: TransformParams) -> Tuple[Derivation, ...]:
    return tuple(phi_inverse(t, params) for t in ts)


def _unfreeze(t: Derivation, params: TransformParams) -> Derivation:
    if t.is_leaf:
        return t
    _require(t.rule, params.glct_rules, "transformed grammar")
    lhs, rhs, weight = t.rule.lhs, t.rule.rhs, t.rule.weight
    if not (lhs.is_frozen and lhs.tid == params.tid):
        raise MalformedShape(f"expected a frozen symbol, found {lhs}", details=[t.rule])
    base = lhs.base
    if rhs and rhs[0].is_frozen and rhs[0].tid == params.tid:
        rule = Rule(base, (rhs[0].base,) + rhs[1:], weight)
        children = (_unfreeze(t.children[0], params),) + phi_inverse_sequence(t.children[1:], params)
    else:
        # ~X -> α from a non-P rule, or ~X -> a β from a P rule with terminal a
        rule = Rule(base, rhs, weight)
        children = phi_inverse_sequence(t.children, params)
    _require(rule, params.grammar.rule_set, "source grammar")
    return Derivation(base, rule, children)


def _collect_glct_chain(t: Derivation, params: TransformParams, allowed) -> Tuple[List[Tuple[Rule, Tuple[Derivation, ...]]], Symbol]:
    """
    Walk a right-branching slashed chain Y/α -> β Y/X ... Y/Y -> ε.

    Returns the implied P rules bottom-up with their β subtrees, and Y.
    """
    steps: List[Tuple[Rule, Tuple[Derivation, ...]]] = []
    node = t
    while True:
        _require(node.rule, allowed, "transformed grammar")
        lhs = node.label
        if not (lhs.is_slashed and lhs.tid == params.tid):
            raise MalformedShape(f"expected a slashed symbol, found {lhs}", details=[node.rule])
        rule = node.rule
        if rule.is_nullary:
            if lhs.numerator != lhs.denominator:
                raise MalformedShape(f"{rule} does not close a slashed chain", details=[rule])
            return steps, lhs.numerator
        last = rule.rhs[-1]
        if not (last.is_slashed and last.tid == params.tid and last.numerator == lhs.numerator):
            raise MalformedShape(f"{rule} is not a slashed chain rule", details=[rule])
        source = Rule(last.denominator, (lhs.denominator,) + rule.rhs[:-1], rule.weight)
        if source not in params.P:
            raise ForeignRule(f"{rule} implies {source}, which is not in P", details=[source])
        steps.append((source, node.children[:-1]))
        node = node.children[-1]


def _unslash(t: Derivation, corner: Derivation, params: TransformParams) -> Derivation:
    steps, top = _collect_glct_chain(t, params, params.glct_rules)
    tree = corner
    for rule, rest in steps:
        if rule.rhs[0] != tree.label:
            raise MalformedShape(f"{rule} does not continue the spine at {tree.label}", details=[rule])
        tree = Derivation(rule.lhs, rule, (tree,) + phi_inverse_sequence(rest, params))
    if tree.label != top:
        raise MalformedShape(f"slashed chain ends at {tree.label}, expected {top}")
    return tree


# =============================================================================
# SPECULATION <-> GLCT
# =============================================================================

def glct_to_spec(t: Derivation, params: TransformParams) -> Derivation:
    """
    Map any derivation of glct(G) to speculate(G).

    Slashed chains are re-hung from right-branching (common numerator) to
    left-branching (common denominator); other rules are shared.
    """
    if t.is_leaf:
        return t
    if not t.label.is_slashed:
        _require(t.rule, params.glct_rules, "transformed grammar")
        return Derivation(t.label, t.rule, tuple(glct_to_spec(c, params) for c in t.children))

    steps, _ = _collect_glct_chain(t, params, params.glct_rules)
    den = t.label.denominator
    base = params.slashed(den, den)
    tree = Derivation(base, Rule(base, (), params.grammar.semiring.one), ())
    for rule, rest in steps:
        lhs = params.slashed(rule.lhs, den)
        spec_rule = Rule(lhs, (params.slashed(rule.rhs[0], den),) + rule.rhs[1:], rule.weight)
        tree = Derivation(lhs, spec_rule, (tree,) + tuple(glct_to_spec(c, params) for c in rest))
    return tree


def spec_to_glct(t: Derivation, params: TransformParams) -> Derivation:
    """Inverse of glct_to_spec"""
    if t.is_leaf:
        return t
    _require(t.rule, params.speculation_rules, "speculation grammar")
    if not t.label.is_slashed:
        return Derivation(t.label, t.rule, tuple(spec_to_glct(c, params) for c in t.children))

    steps: List[Tuple[Rule, Tuple[Derivation, ...]]] = []
    node = t
    while True:
        _require(node.rule, params.speculation_rules, "speculation grammar")
        lhs, rule = node.label, node.rule
        if not (lhs.is_slashed and lhs.tid == params.tid):
            raise MalformedShape(f"expected a slashed symbol, found {lhs}", details=[rule])
        if rule.is_nullary:
            if lhs.numerator != lhs.denominator:
                raise MalformedShape(f"{rule} does not close a slashed chain", details=[rule])
            break
        first = rule.rhs[0]
        if not (first.is_slashed and first.tid == params.tid and first.denominator == lhs.denominator):
            raise MalformedShape(f"{rule} is not a speculation chain rule", details=[rule])
        source = Rule(lhs.numerator, (first.numerator,) + rule.rhs[1:], rule.weight)
        if source not in params.P:
            raise ForeignRule(f"{rule} implies {source}, which is not in P", details=[source])
        steps.append((source, node.children[1:]))
        node = node.children[0]

    top = t.label.numerator
    base = params.slashed(top, top)
    tree = Derivation(base, Rule(base, (), params.grammar.semiring.one), ())
    for source, rest in steps:
        lhs = params.slashed(top, source.rhs[0])
        glct_rule = Rule(lhs, source.rhs[1:] + (tree.label,), source.weight)
        tree = Derivation(lhs, glct_rule, tuple(spec_to_glct(c, params) for c in rest) + (tree,))
    return tree
