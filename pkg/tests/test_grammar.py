import itertools

import pytest
from hypothesis import given

from leftcorner.errors import UnboundedDerivations
from leftcorner.grammar import (
    WCFG,
    Derivation,
    Rule,
    all_strings,
    canonical,
    derivation_weight,
    derivation_yield,
    enumerate_derivations,
    equivalence_check,
    frozen,
    grammar_size,
    nonterminal,
    rule_count,
    same_grammar,
    slashed,
    string_weight,
    terminal,
    trim,
    words,
)
from leftcorner.semiring import real_semiring

from .conftest import ARRIVED, MY_SISTER, NP, S, make_g1
from .strategies import grammars

SENTENCE = "my-sister 's diploma arrived"


# =============================================================================
# SYMBOLS
# =============================================================================

def test_frozen_terminal_is_itself():
    a = terminal("a")
    assert frozen(a, 3) is a


def test_transformed_symbols_do_not_collide():
    assert frozen(NP, 1) != NP
    assert frozen(NP, 1) != frozen(NP, 2)
    assert slashed(S, NP, 1) == slashed(S, NP, 1)
    assert slashed(S, NP, 1) != slashed(S, NP, 2)


def test_symbol_rendering():
    assert terminal("a").render() == "'a'"
    assert NP.render() == "NP"
    assert nonterminal("odd name").render() == '"odd name"'
    assert frozen(NP, 4).render() == "~NP#4"
    assert slashed(S, NP, 4).render(show_ids=False) == "S/NP"
    assert slashed(S, terminal("a"), 4).render() == "S/['a']#4"


def test_build_rejects_terminal_lhs():
    with pytest.raises(ValueError):
        WCFG.build(S, [Rule(terminal("a"), (), 1.0)], real_semiring())


# =============================================================================
# DERIVATIONS
# =============================================================================

def test_yield_and_weight_of_sister_tree(g1, sister_tree):
    assert derivation_yield(sister_tree) == words(SENTENCE)
    assert derivation_weight(sister_tree, g1.semiring) == 1.0
    assert sister_tree.height == 5


def test_leaf_and_nullary_yields():
    leaf = Derivation.leaf(terminal("a"))
    assert derivation_yield(leaf) == (terminal("a"),)
    assert derivation_weight(leaf, real_semiring()) == 1.0
    empty = Derivation.node(Rule(S, (), 0.5))
    assert derivation_yield(empty) == ()
    assert empty.height == 1


def test_weight_is_product():
    s = real_semiring()
    a = terminal("a")
    inner = Rule(NP, (a,), 0.5)
    outer = Rule(S, (NP,), 0.5)
    t = Derivation.node(outer, [Derivation.node(inner, [Derivation.leaf(a)])])
    assert derivation_weight(t, s) == 0.25


def test_node_checks_children():
    with pytest.raises(ValueError):
        Derivation.node(Rule(S, (NP,), 1.0), [Derivation.leaf(terminal("a"))])


def test_enumerate_derivations_depths(g1, sister_tree):
    assert len(enumerate_derivations(g1, S, 4)) == 1
    five = enumerate_derivations(g1, S, 5)
    assert len(five) == 2
    assert sister_tree in five


def test_enumerate_terminal_root_and_empty_grammar():
    a = terminal("a")
    g = WCFG.build(S, [], real_semiring())
    assert enumerate_derivations(g, a, 1) == [Derivation(a)]
    assert enumerate_derivations(g, S, 3) == []
    with pytest.raises(ValueError):
        enumerate_derivations(g, S, 0)


@given(grammars(max_rules=6))
def test_enumerated_weights_unfold_rule_multiset(g):
    s = g.semiring
    for t in itertools.islice(enumerate_derivations(g, g.start, 3), 50):
        assert derivation_weight(t, s) == s.product(r.weight for r in t.rules())


# =============================================================================
# STRING WEIGHTS
# =============================================================================

def test_string_weight_examples(g1, g1_boolean):
    assert string_weight(g1_boolean, S, SENTENCE) is True
    assert string_weight(g1, S, SENTENCE) == 1.0
    assert string_weight(g1, S, "arrived") == 0.0


def test_string_weight_half_weights():
    s = real_semiring()
    g = make_g1(s)
    halves = WCFG.build(S, [Rule(r.lhs, r.rhs, 0.5) for r in g.rules], s)
    assert string_weight(halves, S, SENTENCE) == pytest.approx(0.5 ** 6)
    assert string_weight(halves, S, SENTENCE, method="enumerate") == pytest.approx(0.5 ** 6)


def test_string_weight_rejects_unary_cycle():
    s = real_semiring()
    a = terminal("a")
    g = WCFG.build(S, [Rule(S, (NP,), 0.5), Rule(NP, (S,), 0.5), Rule(S, (a,), 1.0)], s)
    with pytest.raises(UnboundedDerivations):
        string_weight(g, S, "a")
    with pytest.raises(UnboundedDerivations):
        string_weight(g, S, "a", method="enumerate")


def test_string_weight_enumeration_rejects_nullary():
    g = WCFG.build(S, [Rule(S, (), 1.0)], real_semiring())
    with pytest.raises(UnboundedDerivations):
        string_weight(g, S, "", method="enumerate")


def test_chart_accepts_nullable_slash_chain():
    s = real_semiring()
    a = terminal("a")
    top = slashed(S, S, 1)
    g = WCFG.build(S, [Rule(S, (a, top), 0.5), Rule(top, (), 1.0)], s)
    assert string_weight(g, S, "a") == 0.5


@given(grammars(max_rules=6))
def test_chart_agrees_with_enumeration(g):
    s = g.semiring
    alphabet = sorted(g.terminals)
    for x in all_strings(alphabet, 3):
        assert s.equal(string_weight(g, g.start, x), string_weight(g, g.start, x, method="enumerate"))


# =============================================================================
# TRIM, SIZE, CANONICAL FORM
# =============================================================================

def test_size_and_rule_count(g1):
    assert grammar_size(g1) == 15
    assert rule_count(g1) == 6
    assert grammar_size(WCFG.build(S, [], real_semiring())) == 0


def test_trim_keeps_useful_grammar(g1):
    assert trim(g1).rules == g1.rules


def test_trim_drops_unreachable_and_zero_rules(g1):
    q = nonterminal("Q")
    extra = g1.rules + (Rule(q, (terminal("q"),), 1.0), Rule(S, (ARRIVED,), 0.0))
    g = WCFG.build(S, extra, g1.semiring)
    assert trim(g).rules == g1.rules


def test_trim_unproductive_start():
    g = WCFG.build(S, [Rule(S, (S, NP), 1.0)], real_semiring())
    out = trim(g)
    assert out.rules == ()
    assert out.start == S


@given(grammars(max_rules=6))
def test_trim_is_idempotent_and_preserves_weights(g):
    once = trim(g)
    assert canonical(trim(once)).rules == canonical(once).rules
    assert equivalence_check(g, once, 3).equivalent


def test_canonical_merges_equal_shapes():
    s = real_semiring()
    a = terminal("a")
    g = WCFG.build(S, [Rule(S, (a,), 0.25), Rule(S, (a,), 0.5)], s)
    assert canonical(g).rules == (Rule(S, (a,), 0.75),)
    assert same_grammar(g, WCFG.build(S, [Rule(S, (a,), 0.75)], s))


# =============================================================================
# EQUIVALENCE
# =============================================================================

def test_equivalence_reflexive(g1):
    report = equivalence_check(g1, g1, 5)
    assert report.equivalent
    assert report.strings_checked == sum(4 ** n for n in range(6))


def test_equivalence_mismatch(g1):
    h = WCFG.build(S, g1.rules[:5], g1.semiring)
    report = equivalence_check(g1, h, 6)
    assert not report.equivalent
    assert report.mismatch.string == (MY_SISTER, ARRIVED)
    assert report.mismatch.left == 1.0
    assert report.mismatch.right == 0.0
