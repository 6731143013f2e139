import json

import pytest

from leftcorner.derivmap import phi
from leftcorner.errors import ForeignRule, InvalidParams, ParseError
from leftcorner.formats import (
    ParamsFile,
    load_grammar,
    load_params,
    parse_symbol,
    read_derivation,
    read_grammar,
    save_grammar,
    save_params,
    write_derivation,
    write_grammar,
)
from leftcorner.grammar import WCFG, Derivation, Rule, frozen, nonterminal, slashed, terminal
from leftcorner.semiring import boolean_semiring, real_semiring
from leftcorner.transform import TransformParams, glct

from .conftest import G1_TEXT, NP, S, VP

SISTER_SEXPR = "(S (NP (PossP (NP 'my-sister') ''s') (NN 'diploma')) (VP 'arrived'))"


# =============================================================================
# SYMBOLS
# =============================================================================

@pytest.mark.parametrize("token, expected", [
    ("'a'", terminal("a")),
    ("''s'", terminal("'s")),
    ("NP", NP),
    ('"odd name"', nonterminal("odd name")),
    ("~NP#3", frozen(NP, 3)),
    ("S/NP#3", slashed(S, NP, 3)),
    ("S/['a']#4", slashed(S, terminal("a"), 4)),
    ("[~NP#1]/VP#2", slashed(frozen(NP, 1), VP, 2)),
])
def test_parse_symbol(token, expected):
    assert parse_symbol(token) == expected
    assert parse_symbol(expected.render()) == expected


def test_parse_symbol_default_id():
    assert parse_symbol("S/NP", default_tid=7) == slashed(S, NP, 7)


@pytest.mark.parametrize("token", ["ε", "~", "a'b", "S/"])
def test_parse_symbol_rejects(token):
    with pytest.raises(ValueError):
        parse_symbol(token)


# =============================================================================
# GRAMMARS
# =============================================================================

def test_read_g1(g1):
    g = read_grammar(G1_TEXT)
    assert g.start == S
    assert g.semiring is real_semiring()
    assert g.rules == g1.rules


def test_write_g1_matches_file_text(g1):
    assert write_grammar(g1) == G1_TEXT


def test_weights_and_comments():
    text = "# toy\nstart: S\nsemiring: real\n\n0.25: S -> 'a' S\n3/4: S -> 'a'\n"
    g = read_grammar(text)
    assert [r.weight for r in g.rules] == [0.25, 0.75]
    assert read_grammar(write_grammar(g)).rules == g.rules


def test_semiring_override_and_boolean():
    g = read_grammar("start: S\nsemiring: boolean\nS -> 'a'\n")
    assert g.semiring is boolean_semiring()
    assert g.rules[0].weight is True
    assert read_grammar("S -> 'a'\n", semiring=real_semiring()).semiring is real_semiring()


def test_epsilon_and_declared_symbols():
    text = "start: S\nsemiring: real\ndeclare: Q 'z'\nS -> ε\n"
    g = read_grammar(text)
    assert g.rules == (Rule(S, (), 1.0),)
    assert nonterminal("Q") in g.nonterminals
    assert terminal("z") in g.terminals
    assert read_grammar(write_grammar(g)).symbols == g.symbols


def test_quoted_names_survive_round_trip():
    odd = nonterminal("odd name")
    g = WCFG.build(S, [Rule(S, (odd, terminal("a")), 0.5), Rule(odd, (terminal("b"),), 1.0)], real_semiring())
    text = write_grammar(g)
    assert '"odd name"' in text
    assert read_grammar(text).rules == g.rules


def test_transform_header_restores_ids(g1, p1):
    out = glct(g1, p1)
    text = write_grammar(out)
    assert "transform: 1" in text
    assert "#1" not in text
    assert "S/NP -> ''s' S/PossP" in text
    assert read_grammar(text).rules == out.rules


def test_nested_transforms_show_ids(g1, p1):
    out = glct(g1, p1)
    again = glct(out, TransformParams.create(out, [], [NP], tid=2))
    text = write_grammar(again)
    assert "transform:" not in text
    assert "#1" in text and "#2" in text
    assert read_grammar(text).rules == again.rules


def test_save_and_load(tmp_path, g1):
    path = tmp_path / "out" / "g.wcfg"
    path.parent.mkdir()
    save_grammar(g1, path)
    assert load_grammar(path).rules == g1.rules
    assert [p.name for p in path.parent.iterdir()] == ["g.wcfg"]


@pytest.mark.parametrize("text, line, column", [
    ("start: S\nS -> NP ~\n", 2, 9),
    ("start: S\nS NP\n", 2, 1),
    ("start: S\nabc: S -> NP\n", 2, 1),
    ("start: S\n'a' -> NP\n", 2, 1),
    ("start: S\nsemiring: tropical\nS -> 'a'\n", 2, 1),
])
def test_parse_errors_are_located(text, line, column):
    with pytest.raises(ParseError) as info:
        read_grammar(text, source="bad.wcfg")
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith("bad.wcfg:")


def test_empty_text_needs_start():
    with pytest.raises(ParseError, match="start"):
        read_grammar("# nothing\n")


# =============================================================================
# DERIVATIONS
# =============================================================================

def test_write_and_read_sister_tree(g1, sister_tree):
    assert write_derivation(sister_tree) == SISTER_SEXPR
    assert read_derivation(SISTER_SEXPR, g1) == sister_tree


def test_transformed_derivation_round_trip(g1, p1, sister_tree):
    image = phi(sister_tree, p1)
    text = write_derivation(image)
    assert "(S/S ε)" in text
    assert "#" not in text
    assert read_derivation(text, glct(g1, p1), default_tid=1) == image


def test_read_leaf_derivation(g1):
    assert read_derivation("'arrived'", g1) == Derivation.leaf(terminal("arrived"))
    with pytest.raises(ParseError):
        read_derivation("S", g1)


def test_read_derivation_errors(g1):
    with pytest.raises(ParseError) as info:
        read_derivation("(S (NP 'my-sister')", g1)
    assert (info.value.line, info.value.column) == (1, 1)
    with pytest.raises(ParseError):
        read_derivation("(S (NP 'my-sister')))", g1)
    with pytest.raises(ForeignRule):
        read_derivation("(S (VP 'arrived'))", g1)


# =============================================================================
# PARAMETER FILES
# =============================================================================

def test_params_file_round_trip(tmp_path, g1, p1):
    path = tmp_path / "p.json"
    save_params(p1, path)
    data = json.loads(path.read_text())
    assert data == {"P": [0, 1, 2], "X": ["NP"], "transform_id": 1}
    assert load_params(path).to_params(g1) == p1


def test_params_file_rejects_bad_symbol(g1):
    with pytest.raises(InvalidParams):
        ParamsFile(P=[0], X=["~"], transform_id=1).to_params(g1)
    with pytest.raises(InvalidParams):
        ParamsFile(P=[17], X=[], transform_id=1).to_params(g1)
