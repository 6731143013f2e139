"""
Shared fixtures: the possessive grammar, its transformation parameters and
the derivation of "my-sister 's diploma arrived".
"""
import pytest
from hypothesis import settings

from leftcorner.grammar import WCFG, Derivation, Rule, nonterminal, terminal
from leftcorner.semiring import boolean_semiring, real_semiring
from leftcorner.transform import TransformParams

settings.register_profile("leftcorner", deadline=None, derandomize=True, max_examples=50)
settings.load_profile("leftcorner")

S, NP, PossP, NN, VP = (nonterminal(n) for n in ("S", "NP", "PossP", "NN", "VP"))
MY_SISTER, POSS, DIPLOMA, ARRIVED = (terminal(t) for t in ("my-sister", "'s", "diploma", "arrived"))

G1_RULES = (
    Rule(S, (NP, VP), 1.0),
    Rule(NP, (PossP, NN), 1.0),
    Rule(PossP, (NP, POSS), 1.0),
    Rule(NP, (MY_SISTER,), 1.0),
    Rule(NN, (DIPLOMA,), 1.0),
    Rule(VP, (ARRIVED,), 1.0),
)

G1_TEXT = """\
start: S
semiring: real
S -> NP VP
NP -> PossP NN
PossP -> NP ''s'
NP -> 'my-sister'
NN -> 'diploma'
VP -> 'arrived'
"""


def make_g1(semiring=None) -> WCFG:
    s = semiring or real_semiring()
    rules = [Rule(r.lhs, r.rhs, s.one) for r in G1_RULES]
    return WCFG.build(S, rules, s)


@pytest.fixture
def g1() -> WCFG:
    return make_g1()


@pytest.fixture
def g1_boolean() -> WCFG:
    return make_g1(boolean_semiring())


@pytest.fixture
def p1(g1) -> TransformParams:
    """P = the three binary rules, X = {NP}, id 1"""
    return TransformParams.create(g1, g1.rules[:3], [NP], tid=1)


@pytest.fixture
def sister_tree(g1) -> Derivation:
    r1, r2, r3, r4, r5, r6 = g1.rules
    lower_np = Derivation.node(r4, [Derivation.leaf(MY_SISTER)])
    possp = Derivation.node(r3, [lower_np, Derivation.leaf(POSS)])
    nn = Derivation.node(r5, [Derivation.leaf(DIPLOMA)])
    upper_np = Derivation.node(r2, [possp, nn])
    vp = Derivation.node(r6, [Derivation.leaf(ARRIVED)])
    return Derivation.node(r1, [upper_np, vp])


@pytest.fixture
def g1_file(tmp_path):
    path = tmp_path / "g1.wcfg"
    path.write_text(G1_TEXT, encoding="utf-8")
    return path
