"""Hypothesis strategies for random grammars and transformation parameters"""
from hypothesis import strategies as st

from leftcorner.grammar import WCFG, Rule, nonterminal, terminal
from leftcorner.semiring import boolean_semiring, real_semiring
from leftcorner.transform import TransformParams

NAMES = ["S", "A", "B", "C", "D", "E"]
TERMINALS = [terminal("a"), terminal("b")]
REAL_WEIGHTS = [0.25, 0.5, 1.0]


@st.composite
def grammars(draw, semiring=None, max_nonterminals=4, max_rules=8,
             unary=False, nullary=False, weights=REAL_WEIGHTS, max_nullary=None):
    """
    Random grammar with start S. Without ``unary``/``nullary`` every rule
    has a terminal or at least two symbols on the right. ``max_nullary``
    caps the number of nullary rules kept.
    """
    s = semiring or draw(st.sampled_from([boolean_semiring(), real_semiring()]))
    count = draw(st.integers(1, max_nonterminals))
    nts = [nonterminal(n) for n in NAMES[:count]]
    symbols = nts + TERMINALS
    min_len = 0 if nullary else 1

    def rule_strategy():
        return st.tuples(
            st.sampled_from(nts),
            st.lists(st.sampled_from(symbols), min_size=min_len, max_size=3),
            st.sampled_from(weights),
        )

    raw = draw(st.lists(rule_strategy(), min_size=1, max_size=max_rules))
    rules = []
    nullary_count = 0
    for lhs, rhs, w in raw:
        if not unary and len(rhs) == 1 and rhs[0].is_nonterminal:
            continue
        if not rhs and max_nullary is not None and nullary_count >= max_nullary:
            continue
        weight = True if s.name == "boolean" else w
        nullary_count += not rhs
        rules.append(Rule(lhs, tuple(rhs), weight))
    # every grammar derives something from S
    rules.append(Rule(nts[0], (TERMINALS[0],), s.one))
    return WCFG.build(nts[0], rules, s)


@st.composite
def transform_params(draw, g: WCFG):
    """Random valid (P, X) for ``g``"""
    candidates = [r for r in g.rules if not r.is_nullary]
    P = draw(st.lists(st.sampled_from(candidates), unique=True)) if candidates else []
    X = draw(st.lists(st.sampled_from(g.sorted_symbols()), unique=True))
    return TransformParams.create(g, P, X)


@st.composite
def grammars_with_params(draw, **kwargs):
    g = draw(grammars(**kwargs))
    return g, draw(transform_params(g))
