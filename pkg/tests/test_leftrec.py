import pytest
from hypothesis import given, settings, strategies as st

from leftcorner.errors import HasNullaryRules, HasUnaryRules
from leftcorner.grammar import WCFG, Rule, equivalence_check, nonterminal, terminal, trim
from leftcorner.leftrec import (
    UNBOUNDED,
    bottoms,
    eliminate_left_recursion,
    is_acyclic,
    is_left_recursive,
    left_recursion_graph,
    left_recursive_rules,
    lr_depth,
    recipe_params,
    sccs,
    slct_recipe,
    tarjan,
)
from leftcorner.semiring import real_semiring
from leftcorner.transform import TransformParams, glct

from .conftest import MY_SISTER, NP, S, VP, PossP
from .strategies import grammars


# =============================================================================
# GRAPH AND COMPONENTS
# =============================================================================

def test_graph_of_g1(g1):
    graph = left_recursion_graph(g1)
    assert len(graph.edges) == 6
    assert graph.successors(S) == [NP]
    assert graph.successors(NP) == [PossP, MY_SISTER]
    assert graph.edge_for(2).rule == g1.rules[2]


def test_components_of_g1(g1):
    result = sccs(left_recursion_graph(g1))
    assert result.count == 8
    assert result.same(NP, PossP)
    assert not result.same(S, NP)
    # sinks first
    assert result.component[MY_SISTER] < result.component[NP] < result.component[S]


def test_tarjan_handles_long_chains():
    n = 20000
    components = list(tarjan(range(n), lambda v: [v + 1] if v + 1 < n else [0]))
    assert len(components) == 1
    chain = list(tarjan(range(n), lambda v: [v + 1] if v + 1 < n else []))
    assert len(chain) == n
    assert chain[0] == {n - 1}


def test_left_recursive_rules_of_g1(g1):
    assert left_recursive_rules(g1) == [g1.rules[1], g1.rules[2]]
    assert is_left_recursive(g1)


@pytest.mark.parametrize("P, expected", [
    ([1, 2], {NP}),
    ([0, 1, 2], {NP}),
    ([0, 1, 2, 3], {MY_SISTER}),
    ([], set()),
])
def test_bottoms(g1, P, expected):
    assert bottoms(g1, [g1.rules[i] for i in P]) == expected


# =============================================================================
# ELIMINATION
# =============================================================================

def test_recipe_params_of_g1(g1):
    params = recipe_params(g1)
    assert params.P == frozenset(g1.rules[1:3])
    assert params.X == frozenset({NP})


def test_eliminate_left_recursion_on_g1(g1):
    out, params = eliminate_left_recursion(g1)
    C = sccs(left_recursion_graph(g1)).count
    assert is_acyclic(out)
    assert lr_depth(out) <= 2 * C
    assert equivalence_check(g1, out, 5).equivalent
    filtered, _ = eliminate_left_recursion(g1, filtered=True)
    assert len(filtered.rules) == len(out.rules)


def test_slct_recipe_is_acyclic_and_larger(g1):
    out, params = slct_recipe(g1)
    assert params.X == g1.symbols
    assert is_acyclic(out)
    assert out.size >= eliminate_left_recursion(g1)[0].size


def test_recipe_rejects_unary_rules(g1):
    g = WCFG.build(S, g1.rules + (Rule(S, (VP,), 1.0),), g1.semiring)
    with pytest.raises(HasUnaryRules):
        eliminate_left_recursion(g)


def test_recipe_rejects_nullary_rules(g1):
    g = WCFG.build(S, g1.rules + (Rule(VP, (), 1.0),), g1.semiring)
    with pytest.raises(HasNullaryRules):
        eliminate_left_recursion(g)
    with pytest.raises(HasNullaryRules):
        slct_recipe(g)


# =============================================================================
# DEPTH
# =============================================================================

def test_lr_depth_examples(g1):
    assert lr_depth(g1) == UNBOUNDED
    a, b = terminal("a"), terminal("b")
    A = nonterminal("A")
    g = WCFG.build(S, [Rule(S, (A, b), 1.0), Rule(A, (a,), 1.0)], real_semiring())
    assert lr_depth(g) == 2
    assert lr_depth(WCFG.build(S, [], real_semiring())) == 0


def test_lr_depth_ignores_useless_cycles():
    a = terminal("a")
    A = nonterminal("A")
    g = WCFG.build(S, [Rule(S, (a,), 1.0), Rule(A, (A, a), 1.0), Rule(A, (a,), 1.0)], real_semiring())
    assert is_left_recursive(g)
    assert lr_depth(g) == 1


def test_lr_depth_sees_left_recursion_below_the_start():
    a, b, c = terminal("a"), terminal("b"), terminal("c")
    X = nonterminal("X")
    g = WCFG.build(S, [
        Rule(S, (a, X), 1.0),
        Rule(X, (X, b), 0.5),
        Rule(X, (c,), 0.5),
    ], real_semiring())
    assert is_left_recursive(g)
    assert lr_depth(g) == UNBOUNDED
    assert not is_acyclic(g)
    out, _ = eliminate_left_recursion(g)
    assert is_acyclic(out)


def _deepest_left_path(g, symbol, depth, memo):
    """
    Most edges from ``symbol`` down the left edge to a leaf, over the
    derivations of height ≤ depth; None when there are none.
    """
    if depth < 1:
        return None
    if symbol.is_terminal:
        return 0
    key = (symbol, depth)
    if key not in memo:
        best = None
        for rule in g.rules_for(symbol):
            left = _deepest_left_path(g, rule.rhs[0], depth - 1, memo)
            if left is None:
                continue
            if any(_deepest_left_path(g, s, depth - 1, memo) is None for s in rule.rhs[1:]):
                continue
            best = 1 + left if best is None else max(best, 1 + left)
        memo[key] = best
    return memo[key]


@given(grammars(max_nonterminals=3, max_rules=6))
def test_lr_depth_matches_deepest_derivation(g0):
    recursive = set(left_recursive_rules(g0))
    g = WCFG.build(g0.start, [r for r in g0.rules if r not in recursive], g0.semiring)
    assert is_acyclic(g)
    useful = trim(g)
    memo = {}
    paths = [_deepest_left_path(useful, x, 8, memo) for x in useful.sorted_nonterminals()]
    assert lr_depth(g) == max((p for p in paths if p is not None), default=0)


@given(st.data())
def test_supersets_of_recipe_params_remove_left_recursion(data):
    g = data.draw(grammars(max_nonterminals=4, max_rules=8))
    extra_rules = data.draw(st.lists(st.sampled_from(g.rules), unique=True))
    P = set(left_recursive_rules(g)) | set(extra_rules)
    extra_symbols = data.draw(st.lists(st.sampled_from(g.sorted_symbols()), unique=True))
    X = bottoms(g, P) | set(extra_symbols)
    out = trim(glct(g, TransformParams.create(g, P, X)))
    assert is_acyclic(out)
    assert lr_depth(out) <= 2 * sccs(left_recursion_graph(g)).count


@settings(max_examples=200)
@given(grammars(max_nonterminals=6, max_rules=12))
def test_recipe_removes_left_recursion(g):
    out, _ = eliminate_left_recursion(g)
    C = sccs(left_recursion_graph(g)).count
    assert is_acyclic(out)
    assert lr_depth(out) <= 2 * C
    assert equivalence_check(g, out, 4).equivalent
