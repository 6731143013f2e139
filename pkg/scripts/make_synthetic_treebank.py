"""
Sample a synthetic treebank from a grammar, for size-pipeline runs when
no real corpus is at hand.

Trees are drawn top-down, choosing each rule with probability proportional
to its weight; expansions deeper than --max-depth are rejected and redrawn.

Usage:
    python scripts/make_synthetic_treebank.py --grammar g.wcfg --trees 500 --seed 0 -o tb.txt
    python scripts/make_synthetic_treebank.py --trees 500   # built-in left-recursive grammar
"""
import random
import sys
from pathlib import Path
from typing import Optional

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

import typer
from nltk import Tree
from tqdm import tqdm

from leftcorner.formats import load_grammar, read_grammar, write_atomic
from leftcorner.grammar import WCFG, Symbol

DEFAULT_GRAMMAR = """\
start: S
semiring: real
1.0: S -> NP VP
0.5: NP -> NP PP
0.3: NP -> Det N
0.2: NP -> PossP N
1.0: PossP -> NP ''s'
1.0: PP -> P NP
0.6: VP -> V NP
0.2: VP -> VP PP
0.2: VP -> V
1.0: Det -> 'the'
0.5: N -> 'dog'
0.5: N -> 'park'
1.0: P -> 'in'
0.5: V -> 'saw'
0.5: V -> 'ran'
"""


class TooDeep(Exception):
    pass


def sample_tree(g: WCFG, symbol: Symbol, rng: random.Random, depth: int) -> Tree:
    if depth <= 0:
        raise TooDeep()
    rules = [r for r in g.rules_for(symbol) if r.rhs]
    rule = rng.choices(rules, weights=[float(r.weight) for r in rules])[0]
    children = [
        f"'{child.name}'" if child.is_terminal else sample_tree(g, child, rng, depth - 1)
        for child in rule.rhs
    ]
    return Tree(symbol.name, children)


def main(
    grammar: Optional[Path] = typer.Option(None, "--grammar", "-g", exists=True, dir_okay=False),
    trees: int = typer.Option(500, "--trees", min=1),
    seed: int = typer.Option(0, "--seed"),
    max_depth: int = typer.Option(12, "--max-depth", min=1),
    output: Optional[Path] = typer.Option(None, "--output", "-o"),
):
    """Generate a synthetic treebank"""
    print("=" * 60, file=sys.stderr)
    print("Generating Synthetic Treebank", file=sys.stderr)
    print("=" * 60, file=sys.stderr)

    g = load_grammar(grammar) if grammar else read_grammar(DEFAULT_GRAMMAR)
    rng = random.Random(seed)
    lines = []
    rejected = 0
    with tqdm(total=trees, file=sys.stderr) as bar:
        while len(lines) < trees:
            try:
                tree = sample_tree(g, g.start, rng, max_depth)
            except TooDeep:
                rejected += 1
                continue
            lines.append(" ".join(str(tree).split()))
            bar.update(1)

    text = "\n".join(lines) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        write_atomic(output, text)
    print("-" * 60, file=sys.stderr)
    print(f"✓ {trees} trees ({rejected} rejected as too deep)", file=sys.stderr)


if __name__ == "__main__":
    typer.run(main)
