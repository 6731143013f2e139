# leftcorner/grammar.py
"""
Weighted context-free grammars and their derivations.

Features:
- Symbol / Rule / WCFG / Derivation value types (immutable, hashable)
- Yield and weight of derivations
- Bounded derivation enumeration in deterministic order
- String weights by chart (inside) computation or by exhaustive enumeration
- Trimming, canonical ordering, size metrics
- Bounded weighted-language equivalence checking
"""

import itertools
import json
import logging
import re
from collections import defaultdict, deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import (
    Any,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Set,
    Tuple,
    Union,
)

from .errors import UnboundedDerivations
from .semiring import Semiring

logger = logging.getLogger(__name__)


# =============================================================================
# SYMBOLS
# =============================================================================

class SymbolKind(Enum):
    """The four symbol varieties; the value fixes the sort order"""
    TERMINAL = 0
    NONTERMINAL = 1
    FROZEN = 2
    SLASHED = 3


_PLAIN_NAME = re.compile(r"[^\s'\"/~#\[\]]+")


@dataclass(frozen=True)
class Symbol:
    """
    A grammar symbol.

    Frozen symbols keep their base in ``parts[0]``; slashed symbols keep
    numerator and denominator in ``parts``. ``tid`` names the transformation
    instance that introduced the symbol (0 for originals).
    """
    kind: SymbolKind
    name: str = ""
    parts: Tuple["Symbol", ...] = ()
    tid: int = 0

    @property
    def is_terminal(self) -> bool:
        return self.kind is SymbolKind.TERMINAL

    @property
    def is_nonterminal(self) -> bool:
        return self.kind is not SymbolKind.TERMINAL

    @property
    def is_original(self) -> bool:
        return self.kind is SymbolKind.NONTERMINAL

    @property
    def is_frozen(self) -> bool:
        return self.kind is SymbolKind.FROZEN

    @property
    def is_slashed(self) -> bool:
        return self.kind is SymbolKind.SLASHED

    @property
    def base(self) -> "Symbol":
        return self.parts[0]

    @property
    def numerator(self) -> "Symbol":
        return self.parts[0]

    @property
    def denominator(self) -> "Symbol":
        return self.parts[1]

    @cached_property
    def sort_key(self) -> tuple:
        return (self.kind.value, self.name, tuple(p.sort_key for p in self.parts), self.tid)

    def __lt__(self, other: "Symbol") -> bool:
        return self.sort_key < other.sort_key

    @property
    def is_plain(self) -> bool:
        """Original nonterminal whose name needs no quoting"""
        return self.is_original and bool(_PLAIN_NAME.fullmatch(self.name)) and self.name != "ε"

    def render(self, show_ids: bool = True) -> str:
        """Text form used by the .wcfg and s-expression formats"""
        if self.is_terminal:
            return f"'{self.name}'"
        if self.is_original:
            return self.name if self.is_plain else json.dumps(self.name, ensure_ascii=False)
        suffix = f"#{self.tid}" if show_ids else ""
        if self.is_frozen:
            return f"~{self.base._atom(show_ids)}{suffix}"
        return f"{self.numerator._atom(show_ids)}/{self.denominator._atom(show_ids)}{suffix}"

    def _atom(self, show_ids: bool) -> str:
        if self.is_plain:
            return self.name
        return f"[{self.render(show_ids)}]"

    def __str__(self) -> str:
        return self.render()


def terminal(name: str) -> Symbol:
    return Symbol(SymbolKind.TERMINAL, name)


def nonterminal(name: str) -> Symbol:
    return Symbol(SymbolKind.NONTERMINAL, name)


def frozen(symbol: Symbol, tid: int) -> Symbol:
    """~X for a nonterminal X; a terminal freezes to itself"""
    if symbol.is_terminal:
        return symbol
    return Symbol(SymbolKind.FROZEN, parts=(symbol,), tid=tid)


def slashed(numerator: Symbol, denominator: Symbol, tid: int) -> Symbol:
    return Symbol(SymbolKind.SLASHED, parts=(numerator, denominator), tid=tid)


def words(text: Union[str, Sequence[str], Sequence[Symbol]]) -> Tuple[Symbol, ...]:
    """Terminal string from whitespace-separated words or a sequence"""
    if isinstance(text, str):
        items: Sequence[Any] = text.split()
    else:
        items = text
    return tuple(item if isinstance(item, Symbol) else terminal(item) for item in items)


def transform_ids(symbols: Iterable[Symbol]) -> Set[int]:
    """Every transformation id occurring in the symbols, at any nesting depth"""
    found: Set[int] = set()
    stack = list(symbols)
    while stack:
        sym = stack.pop()
        if sym.kind in (SymbolKind.FROZEN, SymbolKind.SLASHED):
            found.add(sym.tid)
            stack.extend(sym.parts)
    return found


# =============================================================================
# RULES AND GRAMMARS
# =============================================================================

@dataclass(frozen=True)
class Rule:
    """lhs -> rhs with a semiring weight; compared by value"""
    lhs: Symbol
    rhs: Tuple[Symbol, ...]
    weight: Any

    @property
    def arity(self) -> int:
        return len(self.rhs)

    @property
    def is_nullary(self) -> bool:
        return not self.rhs

    @property
    def is_unary(self) -> bool:
        """X -> Y with Y a nonterminal; X -> 'a' does not count"""
        return len(self.rhs) == 1 and self.rhs[0].is_nonterminal

    @property
    def leftmost(self) -> Optional[Symbol]:
        return self.rhs[0] if self.rhs else None

    @property
    def shape(self) -> Tuple[Symbol, Tuple[Symbol, ...]]:
        return (self.lhs, self.rhs)

    @property
    def sort_key(self) -> tuple:
        return (self.lhs.sort_key, tuple(s.sort_key for s in self.rhs))

    def render(self, show_ids: bool = True) -> str:
        rhs = " ".join(s.render(show_ids) for s in self.rhs) or "ε"
        return f"{self.lhs.render(show_ids)} -> {rhs}"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class WCFG:
    """
    A weighted CFG: start symbol, rule bag in file order, bound semiring,
    and symbol inventories. Build instances with ``WCFG.build``.
    """
    start: Symbol
    rules: Tuple[Rule, ...]
    semiring: Semiring
    nonterminals: FrozenSet[Symbol]
    terminals: FrozenSet[Symbol]
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def build(
        cls,
        start: Symbol,
        rules: Iterable[Rule],
        semiring: Semiring,
        nonterminals: Iterable[Symbol] = (),
        terminals: Iterable[Symbol] = (),
        metadata: Optional[Dict[str, Any]] = None,
    ) -> "WCFG":
        """
        Assemble a grammar, adding every symbol used by a rule to the
        matching inventory.

        Raises:
            ValueError: If the start symbol or a rule lhs is a terminal
        """
        rules = tuple(rules)
        if start.is_terminal:
            raise ValueError(f"start symbol {start} is a terminal")
        nts: Set[Symbol] = {start}
        ts: Set[Symbol] = set()
        for sym in itertools.chain(nonterminals, terminals):
            (ts if sym.is_terminal else nts).add(sym)
        for rule in rules:
            if rule.lhs.is_terminal:
                raise ValueError(f"rule {rule} has a terminal left-hand side")
            nts.add(rule.lhs)
            for sym in rule.rhs:
                (ts if sym.is_terminal else nts).add(sym)
        return cls(start, rules, semiring, frozenset(nts), frozenset(ts), dict(metadata or {}))

    def replace(self, rules: Iterable[Rule], **changes: Any) -> "WCFG":
        """Same start/semiring/terminals with a new rule bag"""
        return WCFG.build(
            changes.get("start", self.start),
            rules,
            changes.get("semiring", self.semiring),
            nonterminals=changes.get("nonterminals", ()),
            terminals=changes.get("terminals", self.terminals),
            metadata=changes.get("metadata", self.metadata),
        )

    @cached_property
    def by_lhs(self) -> Dict[Symbol, Tuple[Rule, ...]]:
        grouped: Dict[Symbol, List[Rule]] = defaultdict(list)
        for rule in self.rules:
            grouped[rule.lhs].append(rule)
        return {lhs: tuple(rs) for lhs, rs in grouped.items()}

    @cached_property
    def rule_set(self) -> FrozenSet[Rule]:
        return frozenset(self.rules)

    @cached_property
    def symbols(self) -> FrozenSet[Symbol]:
        return self.nonterminals | self.terminals

    def sorted_nonterminals(self) -> List[Symbol]:
        return sorted(self.nonterminals)

    def sorted_symbols(self) -> List[Symbol]:
        return sorted(self.symbols)

    def rules_for(self, lhs: Symbol) -> Tuple[Rule, ...]:
        return self.by_lhs.get(lhs, ())

    @property
    def size(self) -> int:
        return grammar_size(self)

    def __len__(self) -> int:
        return len(self.rules)


def grammar_size(g: WCFG) -> int:
    """Σ (1 + |rhs|) over the rule bag"""
    return sum(1 + rule.arity for rule in g.rules)


def rule_count(g: WCFG) -> int:
    return len(g.rules)


def nullary_rules(g: WCFG) -> List[Rule]:
    return [r for r in g.rules if r.is_nullary]


def unary_rules(g: WCFG) -> List[Rule]:
    return [r for r in g.rules if r.is_unary]


# =============================================================================
# DERIVATIONS
# =============================================================================

@dataclass(frozen=True)
class Derivation:
    """A terminal leaf (rule is None) or a node expanded by ``rule``"""
    label: Symbol
    rule: Optional[Rule] = None
    children: Tuple["Derivation", ...] = ()

    @classmethod
    def leaf(cls, symbol: Symbol) -> "Derivation":
        if not symbol.is_terminal:
            raise ValueError(f"leaf label {symbol} is not a terminal")
        return cls(symbol)

    @classmethod
    def node(cls, rule: Rule, children: Sequence["Derivation"] = ()) -> "Derivation":
        children = tuple(children)
        if tuple(c.label for c in children) != rule.rhs:
            raise ValueError(f"children do not spell the right-hand side of {rule}")
        return cls(rule.lhs, rule, children)

    @property
    def is_leaf(self) -> bool:
        return self.rule is None

    @cached_property
    def height(self) -> int:
        return 1 + max((c.height for c in self.children), default=0)

    def rules(self) -> Iterator[Rule]:
        """Rules in pre-order"""
        stack = [self]
        while stack:
            t = stack.pop()
            if t.rule is not None:
                yield t.rule
                stack.extend(reversed(t.children))


def derivation_yield(t: Derivation) -> Tuple[Symbol, ...]:
    """Leaf terminals left to right; () for a fully nullary tree"""
    out: List[Symbol] = []
    stack = [t]
    while stack:
        node = stack.pop()
        if node.is_leaf:
            out.append(node.label)
        else:
            stack.extend(reversed(node.children))
    return tuple(out)


def derivation_weight(t: Derivation, semiring: Semiring) -> Any:
    """⊗-product of every rule weight in the tree (1̄ for a leaf)"""
    return semiring.product(rule.weight for rule in t.rules())


def iter_derivations(g: WCFG, root: Symbol, max_depth: int) -> Iterator[Derivation]:
    """
    Lazily enumerate the derivations of ``root`` with height ≤ max_depth.

    Order: rules in grammar order, then children varying right-most fastest.
    """
    if max_depth < 1:
        return
    if root.is_terminal:
        yield Derivation(root)
        return
    for rule in g.rules_for(root):
        for kids in _iter_children(g, rule.rhs, max_depth - 1):
            yield Derivation(root, rule, kids)


def _iter_children(g: WCFG, rhs: Tuple[Symbol, ...], depth: int) -> Iterator[Tuple[Derivation, ...]]:
    if not rhs:
        yield ()
        return
    for first in iter_derivations(g, rhs[0], depth):
        for rest in _iter_children(g, rhs[1:], depth):
            yield (first,) + rest


def enumerate_derivations(g: WCFG, root: Symbol, max_depth: int) -> List[Derivation]:
    """
    All derivations of ``root`` with height ≤ max_depth.

    Raises:
        ValueError: If max_depth < 1
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    return list(iter_derivations(g, root, max_depth))


# =============================================================================
# GRAPH HELPERS
# =============================================================================

def _find_cycle(nodes: Iterable[Symbol], edges: Dict[Symbol, Set[Symbol]]) -> Tuple[List[Symbol], Optional[List[Symbol]]]:
    """
    Iterative DFS. Returns (post-order, None) for an acyclic graph or
    ([], cycle) when a back edge is found.
    """
    WHITE, GREY, BLACK = 0, 1, 2
    color: Dict[Symbol, int] = defaultdict(int)
    order: List[Symbol] = []
    for root in sorted(nodes):
        if color[root] != WHITE:
            continue
        color[root] = GREY
        path = [root]
        stack = [iter(sorted(edges.get(root, ())))]
        while stack:
            advanced = False
            for succ in stack[-1]:
                if color[succ] == GREY:
                    return [], path[path.index(succ):] + [succ]
                if color[succ] == WHITE:
                    color[succ] = GREY
                    path.append(succ)
                    stack.append(iter(sorted(edges.get(succ, ()))))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
                done = path.pop()
                color[done] = BLACK
                order.append(done)
    return order, None


def reachable_symbols(g: WCFG, roots: Iterable[Symbol]) -> Set[Symbol]:
    """Symbols occurring in some sentential form derived from the roots"""
    seen: Set[Symbol] = set()
    queue = deque(roots)
    while queue:
        sym = queue.popleft()
        if sym in seen:
            continue
        seen.add(sym)
        for rule in g.rules_for(sym):
            queue.extend(s for s in rule.rhs if s not in seen)
    return seen


def productive_symbols(g: WCFG, skip_zero: bool = False) -> Set[Symbol]:
    """
    Nonterminals deriving at least one terminal string (linear fixpoint).

    With ``skip_zero`` rules weighted 0̄ do not count.
    """
    pending: List[int] = []
    watchers: Dict[Symbol, List[int]] = defaultdict(list)
    productive: Set[Symbol] = set()
    queue: deque = deque()
    rules = g.rules
    for idx, rule in enumerate(rules):
        if skip_zero and g.semiring.is_zero(rule.weight):
            pending.append(-1)
            continue
        missing = [s for s in rule.rhs if s.is_nonterminal]
        pending.append(len(missing))
        for sym in missing:
            watchers[sym].append(idx)
        if not missing:
            queue.append(rule.lhs)
    while queue:
        sym = queue.popleft()
        if sym in productive:
            continue
        productive.add(sym)
        for idx in watchers.get(sym, ()):
            pending[idx] -= 1
            if pending[idx] == 0:
                queue.append(rules[idx].lhs)
    return productive


def nullable_symbols(g: WCFG) -> Set[Symbol]:
    """Nonterminals with at least one ε-yield derivation (structural)"""
    nullable: Set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            if rule.lhs not in nullable and all(s in nullable for s in rule.rhs):
                nullable.add(rule.lhs)
                changed = True
    return nullable


# =============================================================================
# STRING WEIGHTS
# =============================================================================

class Chart:
    """
    Inside-weight computation for one grammar and one root symbol.

    Any grammar is accepted as long as, among the productive symbols
    reachable from the root, no symbol can rewrite to itself over the same
    span (a cycle through rules whose other children are all nullable).
    Nullary-free, unary-acyclic grammars are the common special case;
    grammars with X/X -> ε rules produced by left-corner transformations
    also qualify.
    """

    def __init__(self, g: WCFG, root: Symbol):
        self.grammar = g
        self.root = root
        self.semiring = g.semiring

        productive = productive_symbols(g)
        reach = reachable_symbols(g, [root])
        self.active: Set[Symbol] = {s for s in reach if s.is_nonterminal and s in productive}
        nullable = nullable_symbols(g)

        self.rules: Dict[Symbol, List[Rule]] = {}
        same_span: Dict[Symbol, Set[Symbol]] = defaultdict(set)
        for sym in self.active:
            usable = [r for r in g.rules_for(sym)
                      if all(s.is_terminal or s in self.active for s in r.rhs)]
            self.rules[sym] = usable
            for rule in usable:
                for i, child in enumerate(rule.rhs):
                    if child.is_terminal:
                        continue
                    others = rule.rhs[:i] + rule.rhs[i + 1:]
                    if all(o in nullable for o in others):
                        same_span[sym].add(child)

        order, cycle = _find_cycle(self.active, same_span)
        if cycle is not None:
            raise UnboundedDerivations(
                "infinitely many derivations share a yield: "
                + " -> ".join(str(s) for s in cycle),
                details=cycle,
            )
        # post-order puts dependencies first
        self.order = order

    def weight(self, x: Sequence[Symbol]) -> Any:
        s = self.semiring
        x = tuple(x)
        n = len(x)
        if self.root.is_terminal:
            return s.one if x == (self.root,) else s.zero
        if self.root not in self.active:
            return s.zero

        chart: Dict[Tuple[int, int], Dict[Symbol, Any]] = {}

        def lookup(sym: Symbol, i: int, j: int) -> Any:
            if sym.is_terminal:
                return s.one if j == i + 1 and x[i] == sym else s.zero
            return chart[(i, j)].get(sym, s.zero)

        def inside(rhs: Tuple[Symbol, ...], i: int, j: int) -> Any:
            prefix = {i: s.one}
            for sym in rhs:
                extended: Dict[int, Any] = {}
                for k, left in prefix.items():
                    for m in range(k, j + 1):
                        right = lookup(sym, k, m)
                        if s.is_zero(right):
                            continue
                        extended[m] = s.plus(extended.get(m, s.zero), s.times(left, right))
                prefix = extended
                if not prefix:
                    return s.zero
            return prefix.get(j, s.zero)

        for length in range(n + 1):
            for i in range(n - length + 1):
                j = i + length
                cell: Dict[Symbol, Any] = {}
                chart[(i, j)] = cell
                for sym in self.order:
                    total = s.zero
                    for rule in self.rules[sym]:
                        if len(rule.rhs) > 0 and length == 0 and any(c.is_terminal for c in rule.rhs):
                            continue
                        value = inside(rule.rhs, i, j)
                        if not s.is_zero(value):
                            total = s.plus(total, s.times(rule.weight, value))
                    if not s.is_zero(total):
                        cell[sym] = total
        return chart[(0, n)].get(self.root, s.zero)


def iter_derivations_with_yield(g: WCFG, root: Symbol, x: Sequence[Symbol]) -> Iterator[Derivation]:
    """
    Enumerate D_root(x) explicitly.

    Raises:
        UnboundedDerivations: If the grammar has nullary rules or a unary
            cycle reachable from ``root``
    """
    x = tuple(x)
    nullary = nullary_rules(g)
    if nullary:
        raise UnboundedDerivations(
            "exhaustive enumeration needs a nullary-free grammar", details=nullary
        )
    reach = reachable_symbols(g, [root])
    unary_edges: Dict[Symbol, Set[Symbol]] = defaultdict(set)
    for rule in g.rules:
        if rule.is_unary and rule.lhs in reach:
            unary_edges[rule.lhs].add(rule.rhs[0])
    _, cycle = _find_cycle([s for s in reach if s.is_nonterminal], unary_edges)
    if cycle is not None:
        raise UnboundedDerivations(
            "unary cycle: " + " -> ".join(str(s) for s in cycle), details=cycle
        )

    def derive(sym: Symbol, i: int, j: int) -> Iterator[Derivation]:
        if sym.is_terminal:
            if j == i + 1 and x[i] == sym:
                yield Derivation(sym)
            return
        for rule in g.rules_for(sym):
            if len(rule.rhs) > j - i:
                continue
            for kids in split(rule.rhs, i, j):
                yield Derivation(sym, rule, kids)

    def split(rhs: Tuple[Symbol, ...], i: int, j: int) -> Iterator[Tuple[Derivation, ...]]:
        if len(rhs) == 1:
            for t in derive(rhs[0], i, j):
                yield (t,)
            return
        for m in range(i + 1, j - len(rhs) + 2):
            for first in derive(rhs[0], i, m):
                for rest in split(rhs[1:], m, j):
                    yield (first,) + rest

    if not x:
        return iter(())
    return derive(root, 0, len(x))


def string_weight(g: WCFG, alpha: Symbol, x: Union[str, Sequence[Symbol]], method: str = "chart") -> Any:
    """
    ⊕ over derivations of ``alpha`` with yield ``x`` of their weights.

    Args:
        g: Grammar
        alpha: Root symbol of the derivations
        x: Terminal string (whitespace-separated words or symbols)
        method: "chart" (inside computation) or "enumerate"

    Raises:
        UnboundedDerivations: If infinitely many derivations share a yield
    """
    x = words(x)
    if method == "enumerate":
        return g.semiring.sum(
            derivation_weight(t, g.semiring) for t in iter_derivations_with_yield(g, alpha, x)
        )
    if method != "chart":
        raise ValueError(f"unknown method {method!r}")
    return Chart(g, alpha).weight(x)


# =============================================================================
# TRIMMING AND CANONICAL FORM
# =============================================================================

def trim(g: WCFG) -> WCFG:
    """
    Keep only rules over symbols that are reachable from the start and
    productive. 0̄-weighted rules are dropped.
    """
    productive = productive_symbols(g, skip_zero=True)
    s = g.semiring

    def usable(rule: Rule) -> bool:
        return (
            not s.is_zero(rule.weight)
            and rule.lhs in productive
            and all(sym.is_terminal or sym in productive for sym in rule.rhs)
        )

    reached: Set[Symbol] = set()
    if g.start in productive:
        queue = deque([g.start])
        while queue:
            sym = queue.popleft()
            if sym in reached:
                continue
            reached.add(sym)
            for rule in g.rules_for(sym):
                if usable(rule):
                    queue.extend(c for c in rule.rhs if c.is_nonterminal and c not in reached)

    kept = [r for r in g.rules if r.lhs in reached and usable(r)]
    logger.debug("trim: %d -> %d rules", len(g.rules), len(kept))
    return WCFG.build(g.start, kept, s, metadata=g.metadata)


def canonical(g: WCFG) -> WCFG:
    """Rules sorted by shape with equal shapes ⊕-merged"""
    s = g.semiring
    merged: Dict[Tuple[Symbol, Tuple[Symbol, ...]], Any] = {}
    for rule in g.rules:
        merged[rule.shape] = s.plus(merged.get(rule.shape, s.zero), rule.weight)
    rules = [Rule(lhs, rhs, w) for (lhs, rhs), w in merged.items()]
    rules.sort(key=lambda r: r.sort_key)
    return WCFG(g.start, tuple(rules), s, g.nonterminals, g.terminals, dict(g.metadata))


def same_grammar(g: WCFG, h: WCFG) -> bool:
    """Equality of trimmed canonical forms, weights compared per semiring"""
    a, b = canonical(trim(g)), canonical(trim(h))
    if a.start != b.start or len(a.rules) != len(b.rules):
        return False
    return all(
        ra.shape == rb.shape and g.semiring.equal(ra.weight, rb.weight)
        for ra, rb in zip(a.rules, b.rules)
    )


# =============================================================================
# EQUIVALENCE
# =============================================================================

@dataclass
class Mismatch:
    string: Tuple[Symbol, ...]
    left: Any
    right: Any

    def __str__(self) -> str:
        text = " ".join(s.name for s in self.string) or "ε"
        return f"{text!r}: {self.left!r} != {self.right!r}"


@dataclass
class EquivalenceReport:
    equivalent: bool
    strings_checked: int
    max_len: int
    mismatch: Optional[Mismatch] = None


def all_strings(alphabet: Sequence[Symbol], max_len: int, min_len: int = 0) -> Iterator[Tuple[Symbol, ...]]:
    for length in range(min_len, max_len + 1):
        yield from itertools.product(alphabet, repeat=length)


def equivalence_check(g: WCFG, h: WCFG, max_len: int, min_len: int = 0) -> EquivalenceReport:
    """
    Compare G_S(x) with H_S'(x) for every x over V ∪ V' with
    min_len ≤ |x| ≤ max_len; stop at the first mismatch.

    Raises:
        UnboundedDerivations: From either grammar's chart
    """
    s = g.semiring
    left, right = Chart(g, g.start), Chart(h, h.start)
    alphabet = sorted(g.terminals | h.terminals)
    checked = 0
    for x in all_strings(alphabet, max_len, min_len):
        checked += 1
        a, b = left.weight(x), right.weight(x)
        if not s.equal(a, b):
            logger.info("grammars differ on %s", " ".join(t.name for t in x) or "ε")
            return EquivalenceReport(False, checked, max_len, Mismatch(x, a, b))
    return EquivalenceReport(True, checked, max_len)
