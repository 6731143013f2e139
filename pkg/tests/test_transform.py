import itertools
from collections import Counter
from pathlib import Path

import pytest
from hypothesis import given, settings

from leftcorner.derivmap import left_corner
from leftcorner.errors import InvalidParams
from leftcorner.formats import load_grammar
from leftcorner.grammar import (
    WCFG,
    Rule,
    all_strings,
    canonical,
    derivation_weight,
    equivalence_check,
    iter_derivations_with_yield,
    same_grammar,
    string_weight,
    terminal,
    trim,
)
from leftcorner.leftrec import is_acyclic
from leftcorner.semiring import real_semiring
from leftcorner.transform import (
    RuleFamily,
    TransformParams,
    glct,
    glct_families,
    glct_filtered,
    glct_filtered_families,
    lct,
    next_transform_id,
    rule_count_bound,
    slct,
    speculate,
    speculate_families,
)

from .conftest import NP, POSS, S, VP, PossP
from .strategies import grammars_with_params

GOLDEN = Path(__file__).parent / "golden"


def family_sizes(families):
    return {family: len(rules) for family, rules in families.items()}


# =============================================================================
# PARAMETERS
# =============================================================================

def test_params_accept_indices(g1):
    params = TransformParams.create(g1, [0, 1, 2], [NP], tid=7)
    assert params.P == frozenset(g1.rules[:3])
    assert params.p_indices() == [0, 1, 2]
    assert params.tid == 7


@pytest.mark.parametrize("P, X", [
    ([Rule(S, (VP,), 1.0)], []),
    ([99], []),
    ([], [terminal("unknown")]),
])
def test_params_reject_foreign_parts(g1, P, X):
    with pytest.raises(InvalidParams):
        TransformParams.create(g1, P, X)


def test_params_reject_nullary_rule():
    nullary = Rule(S, (), 1.0)
    g = WCFG.build(S, [nullary, Rule(S, (terminal("a"),), 1.0)], real_semiring())
    with pytest.raises(InvalidParams, match="nullary"):
        TransformParams.create(g, [nullary], [])
    with pytest.raises(InvalidParams):
        lct(g)


def test_fresh_ids_skip_ids_in_use(g1, p1):
    out = glct(g1, p1)
    assert next_transform_id(out) != 1
    with pytest.raises(InvalidParams, match="already used"):
        TransformParams.create(out, [], [], tid=1)


# =============================================================================
# GLCT
# =============================================================================

def test_glct_family_counts(g1, p1):
    sizes = family_sizes(glct_families(g1, p1))
    assert sizes == {
        RuleFamily.RECOVER_FROZEN: 4,
        RuleFamily.RECOVER_SLASHED: 5,
        RuleFamily.SLASH_BASE: 9,
        RuleFamily.SLASH_RECURSIVE: 15,
        RuleFamily.FROZEN_BASE: 3,
        RuleFamily.FROZEN_RECURSIVE: 1,
    }
    out = glct(g1, p1)
    assert len(out.rules) == 37
    assert rule_count_bound(g1, p1) == 39


def test_glct_trim_matches_golden(g1, p1):
    out = trim(glct(g1, p1))
    golden = load_grammar(GOLDEN / "glct_g1_trimmed.wcfg")
    assert len(out.rules) == 10
    assert canonical(out).rules == canonical(golden).rules
    assert same_grammar(out, golden)


def test_glct_trim_leaves_no_np_rules(g1, p1):
    out = trim(glct(g1, p1))
    assert all(r.lhs not in (NP, PossP) for r in out.rules)
    assert equivalence_check(g1, out, 5).equivalent


def test_glct_empty_params(g1):
    params = TransformParams.create(g1, [], [])
    out = glct(g1, params)
    assert len(out.rules) == 5 + 9 + 6
    assert len(out.rules) == rule_count_bound(g1, params)
    trimmed = trim(out)
    assert all(not r.lhs.is_slashed for r in trimmed.rules)
    assert equivalence_check(g1, trimmed, 5).equivalent


def test_glct_weight_transfer(g1):
    rules = list(g1.rules)
    rules[2] = Rule(PossP, (NP, POSS), 0.25)
    g = WCFG.build(S, rules, g1.semiring)
    params = TransformParams.create(g, g.rules[:3], [NP])
    families = glct_families(g, params)
    from_r3 = [r for r in families[RuleFamily.SLASH_RECURSIVE] if r.rhs[0] == POSS]
    assert len(from_r3) == 5
    assert all(r.weight == 0.25 for r in from_r3)
    for family in (RuleFamily.RECOVER_FROZEN, RuleFamily.RECOVER_SLASHED, RuleFamily.SLASH_BASE):
        assert all(r.weight == 1.0 for r in families[family])


@settings(max_examples=100)
@given(grammars_with_params(max_nonterminals=4, max_rules=8))
def test_glct_preserves_weighted_language(instance):
    g, params = instance
    out = trim(glct(g, params))
    report = equivalence_check(g, out, 4)
    assert report.equivalent, report.mismatch
    assert len(glct(g, params).rules) <= rule_count_bound(g, params)


# =============================================================================
# DECOMPOSITION AND SUBLANGUAGES
# =============================================================================

def _sequence_weight(g, symbols, x):
    """Weight of x as a concatenation of yields of the symbols"""
    s = g.semiring
    if not symbols:
        return s.one if not x else s.zero
    head, rest = symbols[0], symbols[1:]
    total = s.zero
    for cut in range(1, len(x) - len(rest) + 1):
        left = string_weight(g, head, x[:cut])
        if s.is_zero(left):
            continue
        total = s.plus(total, s.times(left, _sequence_weight(g, rest, x[cut:])))
    return total


def _context_weight(g, params, top, bottom, x):
    """Σ over P-paths from ``top`` down to ``bottom`` whose off-path yield is x"""
    s = g.semiring
    total = s.one if top == bottom and not x else s.zero
    for rule in params.p_rules:
        if rule.rhs[0] != bottom:
            continue
        beta = rule.rhs[1:]
        for cut in range(len(x) + 1):
            inner = _sequence_weight(g, beta, x[:cut])
            if s.is_zero(inner):
                continue
            above = _context_weight(g, params, top, rule.lhs, x[cut:])
            total = s.plus(total, s.times(s.times(inner, rule.weight), above))
    return total


@settings(max_examples=25)
@given(grammars_with_params(max_nonterminals=3, max_rules=6))
def test_decomposition_identity(instance):
    g, params = instance
    s = g.semiring
    out = glct(g, params)
    for X, x in itertools.product(g.sorted_nonterminals(), all_strings(sorted(g.terminals), 3)):
        expected = string_weight(g, X, x)
        total = s.zero
        if X not in params.X:
            total = string_weight(out, params.frozen(X), x)
        for alpha in sorted(params.X):
            for cut in range(len(x) + 1):
                total = s.plus(total, s.times(
                    string_weight(out, params.frozen(alpha), x[:cut]),
                    string_weight(out, params.slashed(X, alpha), x[cut:]),
                ))
        assert s.equal(expected, total), (X, x)


@settings(max_examples=25)
@given(grammars_with_params(max_nonterminals=3, max_rules=6))
def test_frozen_and_slashed_sublanguages(instance):
    g, params = instance
    s = g.semiring
    out = glct(g, params)
    strings = list(all_strings(sorted(g.terminals), 3))
    for alpha in g.sorted_nonterminals():
        for x in strings:
            no_corner = s.sum(
                derivation_weight(t, s)
                for t in iter_derivations_with_yield(g, alpha, x)
                if not left_corner(t, params.P, params.X, proper=True).found
            )
            assert s.equal(string_weight(out, params.frozen(alpha), x), no_corner)
    for top, bottom in itertools.product(g.sorted_nonterminals(), g.sorted_symbols()):
        for x in strings:
            assert s.equal(
                string_weight(out, params.slashed(top, bottom), x),
                _context_weight(g, params, top, bottom, x),
            ), (top, bottom, x)


# =============================================================================
# FILTERED GLCT
# =============================================================================

def test_filtered_glct_counts(g1, p1):
    sizes = family_sizes(glct_filtered_families(g1, p1))
    assert sizes == {
        RuleFamily.RECOVER_FROZEN: 3,
        RuleFamily.RECOVER_SLASHED: 1,
        RuleFamily.SLASH_BASE: 1,
        RuleFamily.SLASH_RECURSIVE: 3,
        RuleFamily.FROZEN_BASE: 3,
        RuleFamily.FROZEN_RECURSIVE: 1,
    }
    assert same_grammar(trim(glct_filtered(g1, p1)), trim(glct(g1, p1)))


@given(grammars_with_params(max_nonterminals=4, max_rules=8))
def test_filtered_glct_drops_only_useless_rules(instance):
    g, params = instance
    full, filtered = glct(g, params), glct_filtered(g, params)
    assert len(filtered.rules) <= len(full.rules)
    assert not (Counter(filtered.rules) - Counter(full.rules))
    assert same_grammar(trim(filtered), trim(full))


# =============================================================================
# SPECULATION
# =============================================================================

def test_speculation_families(g1, p1):
    families = speculate_families(g1, p1)
    recursive = families[RuleFamily.SLASH_RECURSIVE]
    assert len(recursive) == 27
    assert Rule(p1.slashed(S, NP), (p1.slashed(NP, NP), VP), 1.0) in recursive
    assert Rule(p1.slashed(PossP, NP), (p1.slashed(NP, NP), POSS), 1.0) in recursive


def test_speculation_without_p_is_glct(g1):
    params = TransformParams.create(g1, [], [NP])
    assert speculate(g1, params).rules == glct(g1, params).rules


def test_restricted_speculation_trims_the_same(g1, p1):
    restricted = speculate(g1, p1, restrict_denominator=True)
    assert len(restricted.rules) < len(speculate(g1, p1).rules)
    assert same_grammar(trim(restricted), trim(speculate(g1, p1)))


@settings(max_examples=25)
@given(grammars_with_params(max_nonterminals=3, max_rules=6))
def test_speculation_matches_glct_on_every_symbol(instance):
    g, params = instance
    s = g.semiring
    spec, full = speculate(g, params), glct(g, params)
    symbols = sorted(full.nonterminals | spec.nonterminals)
    for sym, x in itertools.product(symbols, all_strings(sorted(g.terminals), 3)):
        assert s.equal(string_weight(spec, sym, x), string_weight(full, sym, x)), (sym, x)
    assert equivalence_check(g, trim(spec), 4).equivalent


# =============================================================================
# LCT / SLCT
# =============================================================================

def test_lct_keeps_only_slash_and_terminal_recovery(g1):
    out = trim(lct(g1))
    for rule in out.rules:
        assert rule.lhs.is_slashed or rule.rhs[0].is_terminal
    assert is_acyclic(out)
    assert equivalence_check(g1, out, 5).equivalent


def test_slct_is_not_smaller_than_glct(g1, p1):
    assert trim(slct(g1, p1.P)).size >= trim(glct(g1, p1)).size


def test_slct_without_p_trims_to_frozen_copy(g1):
    out = trim(slct(g1, []))
    frozen_lhs = [r for r in out.rules if r.lhs.is_frozen]
    assert len(frozen_lhs) == len(g1.rules)
    assert equivalence_check(g1, out, 5).equivalent
