# leftcorner/leftrec.py
"""
Left-recursion analysis and elimination.

Features:
- LeftRecursionGraph: lhs -> leftmost-child edges, one per non-nullary rule
- sccs: Tarjan's strongly connected components (iterative)
- left_recursive_rules / bottoms: the parameters of the elimination recipe
- eliminate_left_recursion: trimmed GLCT with the recipe parameters
- lr_depth: longest left-edge path among useful symbols
"""

import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Collection, Dict, Iterator, List, Optional, Set, Tuple, Union

from .errors import HasNullaryRules, HasUnaryRules
from .grammar import WCFG, Rule, Symbol, nullary_rules, trim, unary_rules
from .transform import TransformParams, glct, glct_filtered, slct_params

logger = logging.getLogger(__name__)

UNBOUNDED = math.inf


# =============================================================================
# GRAPH
# =============================================================================

@dataclass(frozen=True)
class LeftEdge:
    source: Symbol
    target: Symbol
    rule: Rule
    index: int


@dataclass(frozen=True)
class LeftRecursionGraph:
    nodes: Tuple[Symbol, ...]
    edges: Tuple[LeftEdge, ...]

    @cached_property
    def _out(self) -> Dict[Symbol, List[LeftEdge]]:
        out: Dict[Symbol, List[LeftEdge]] = defaultdict(list)
        for edge in self.edges:
            out[edge.source].append(edge)
        return out

    def edges_from(self, node: Symbol) -> List[LeftEdge]:
        return self._out.get(node, [])

    def successors(self, node: Symbol) -> List[Symbol]:
        return [edge.target for edge in self.edges_from(node)]

    @cached_property
    def by_index(self) -> Dict[int, LeftEdge]:
        return {edge.index: edge for edge in self.edges}

    def edge_for(self, index: int) -> Optional[LeftEdge]:
        return self.by_index.get(index)


def left_recursion_graph(g: WCFG) -> LeftRecursionGraph:
    edges = tuple(
        LeftEdge(rule.lhs, rule.rhs[0], rule, i)
        for i, rule in enumerate(g.rules)
        if not rule.is_nullary
    )
    return LeftRecursionGraph(tuple(g.sorted_symbols()), edges)


# =============================================================================
# STRONGLY CONNECTED COMPONENTS
# =============================================================================

@dataclass
class SCCResult:
    """Component id per node; ids are assigned sinks first"""
    component: Dict[Symbol, int]
    count: int
    components: List[List[Symbol]] = field(default_factory=list)

    def same(self, a: Symbol, b: Symbol) -> bool:
        return self.component[a] == self.component[b]


def tarjan(vertices, neighbours) -> Iterator[Set]:
    """
    Tarjan's algorithm without recursion.

    Yields each strongly connected component as a set, in reverse
    topological order (a component is yielded after every component it
    reaches).
    """
    indices = itertools.count()
    index: Dict = {}
    lowlink: Dict = {}
    on_stack: Set = set()
    stack: List = []

    for root in vertices:
        if root in index:
            continue
        index[root] = lowlink[root] = next(indices)
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(neighbours(root)))]
        while work:
            v, successors = work[-1]
            for w in successors:
                if w not in index:
                    index[w] = lowlink[w] = next(indices)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(neighbours(w))))
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            else:
                work.pop()
                if work:
                    parent = work[-1][0]
                    lowlink[parent] = min(lowlink[parent], lowlink[v])
                if lowlink[v] == index[v]:
                    scc = set()
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        scc.add(w)
                        if w == v:
                            break
                    yield scc


def sccs(graph: LeftRecursionGraph) -> SCCResult:
    """Strongly connected components with deterministic ids"""
    component: Dict[Symbol, int] = {}
    components: List[List[Symbol]] = []
    for cid, scc in enumerate(tarjan(graph.nodes, graph.successors)):
        members = sorted(scc)
        components.append(members)
        for node in members:
            component[node] = cid
    return SCCResult(component, len(components), components)


def left_recursive_edges(g: WCFG) -> List[LeftEdge]:
    graph = left_recursion_graph(g)
    result = sccs(graph)
    return [e for e in graph.edges if result.same(e.source, e.target)]


def left_recursive_rules(g: WCFG) -> List[Rule]:
    """Rules whose left edge stays inside one component, in grammar order"""
    return [e.rule for e in left_recursive_edges(g)]


def is_left_recursive(g: WCFG) -> bool:
    return bool(left_recursive_edges(g))


def bottoms(g: WCFG, P: Collection[Rule]) -> Set[Symbol]:
    """
    Symbols that can end a spine: leftmost children of P rules that are
    terminals or have a left edge from a rule outside P.
    """
    P = set(P)
    leftmost = {r.rhs[0] for r in P if r.rhs}
    exits = {r.lhs for r in g.rules if r.rhs and r not in P}
    return {s for s in leftmost if s.is_terminal or s in exits}


# =============================================================================
# ELIMINATION
# =============================================================================

def recipe_params(g: WCFG, tid: Optional[int] = None) -> TransformParams:
    """P = left-recursive rules, X = bottoms(P)"""
    P = left_recursive_rules(g)
    X = bottoms(g, P)
    logger.debug("recipe: |P|=%d, X=%s", len(set(P)), sorted(str(s) for s in X))
    return TransformParams.create(g, P, X, tid)


def check_recipe_input(g: WCFG) -> None:
    unary = unary_rules(g)
    if unary:
        raise HasUnaryRules(
            f"grammar has {len(unary)} unary rule(s): " + ", ".join(str(r) for r in unary[:5]),
            details=unary,
        )
    nullary = nullary_rules(g)
    if nullary:
        raise HasNullaryRules(
            f"grammar has {len(nullary)} nullary rule(s): " + ", ".join(str(r) for r in nullary[:5]),
            details=nullary,
        )


def eliminate_left_recursion(g: WCFG, filtered: bool = False) -> Tuple[WCFG, TransformParams]:
    """
    Remove left recursion with a trimmed GLCT under the recipe parameters.

    Args:
        g: Unary-free, nullary-free grammar
        filtered: Emit through the filtered GLCT before trimming

    Returns:
        (output grammar, parameters used)

    Raises:
        HasUnaryRules: If g has a rule X -> Y
        HasNullaryRules: If g has a rule X -> ε
    """
    check_recipe_input(g)
    params = recipe_params(g)
    raw = glct_filtered(g, params) if filtered else glct(g, params)
    out = trim(raw)
    logger.info(
        "left recursion eliminated: %d rules -> %d raw -> %d trimmed",
        len(g.rules), len(raw.rules), len(out.rules),
    )
    return out, params


def slct_recipe(g: WCFG) -> Tuple[WCFG, TransformParams]:
    """
    Selective LCT baseline: P = left-recursive rules, X = every symbol.

    Raises:
        HasUnaryRules: If g has a rule X -> Y
        HasNullaryRules: If g has a rule X -> ε
    """
    check_recipe_input(g)
    params = slct_params(g, left_recursive_rules(g))
    return trim(glct(g, params)), params


def is_acyclic(g: WCFG) -> bool:
    """No left-recursion cycle among the useful symbols"""
    return lr_depth(g) != UNBOUNDED


def lr_depth(g: WCFG) -> Union[int, float]:
    """
    Longest path (in edges) in the trimmed grammar's left-recursion graph,
    over every useful symbol; UNBOUNDED when the graph has a cycle.

    A useful symbol roots a subtree of some derivation from the start, so
    left recursion below a non-leftmost position counts too.
    """
    graph = left_recursion_graph(trim(g))
    longest: Dict[Symbol, int] = {}
    GREY = -1
    for root in graph.nodes:
        if root in longest:
            continue
        longest[root] = GREY
        work = [(root, iter(graph.successors(root)))]
        while work:
            node, successors = work[-1]
            for succ in successors:
                state = longest.get(succ)
                if state == GREY:
                    return UNBOUNDED
                if state is None:
                    longest[succ] = GREY
                    work.append((succ, iter(graph.successors(succ))))
                    break
            else:
                work.pop()
                longest[node] = max((1 + longest[s] for s in graph.successors(node)), default=0)
    return max(longest.values(), default=0)
