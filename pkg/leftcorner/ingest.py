# leftcorner/ingest.py
"""
Treebank reading and maximum-likelihood grammar extraction.

Trees are s-expressions, one per line or spread over several lines::

    (S (NP 'my-sister') (VP 'arrived'))
    ( (S (NP-SBJ (NNP Kim))
         (VP (VBD left))) )
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from nltk import Tree
from tqdm import tqdm

from .config import get_settings
from .errors import NullaryInTreebank, ParseError
from .grammar import WCFG, Rule, Symbol, nonterminal, terminal
from .semiring import Semiring, real_semiring

logger = logging.getLogger(__name__)


@dataclass
class Treebank:
    """Constituency trees in file order, with the line each one starts on"""
    trees: List[Tree] = field(default_factory=list)
    lines: List[int] = field(default_factory=list)
    source: Optional[str] = None

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)


# =============================================================================
# READING
# =============================================================================

def _blocks(text: str, source: Optional[str]) -> List[Tuple[int, str]]:
    """Split text into balanced top-level s-expressions with start lines"""
    blocks: List[Tuple[int, str]] = []
    depth = 0
    buffer: List[str] = []
    start = (0, 0)
    for lineno, line in enumerate(text.splitlines(), start=1):
        for col, ch in enumerate(line, start=1):
            if depth == 0:
                if ch.isspace():
                    continue
                if ch != "(":
                    raise ParseError(f"unexpected {ch!r} outside a tree", lineno, col, source)
                start = (lineno, col)
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            buffer.append(ch)
            if depth == 0:
                blocks.append((start[0], "".join(buffer)))
                buffer = []
        if depth > 0:
            buffer.append("\n")
    if depth > 0:
        raise ParseError("unclosed '(' at end of input", start[0], start[1], source)
    return blocks


def parse_treebank(text: str, source: Optional[str] = None) -> Treebank:
    """
    Raises:
        ParseError: On unbalanced parentheses or malformed trees
    """
    tb = Treebank(source=source)
    for lineno, block in _blocks(text, source):
        try:
            tree = Tree.fromstring(block)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, 1, source) from None
        # PTB files wrap each tree in an unlabeled bracket
        if tree.label() == "" and len(tree) == 1 and isinstance(tree[0], Tree):
            tree = tree[0]
        tb.trees.append(tree)
        tb.lines.append(lineno)
    logger.debug("read %d trees from %s", len(tb), source or "<input>")
    return tb


def read_treebank(path: Union[str, Path]) -> Treebank:
    path = Path(path)
    return parse_treebank(path.read_text(encoding="utf-8"), source=str(path))


# =============================================================================
# EXTRACTION
# =============================================================================

def strip_label(label: str, delimiters: Sequence[str]) -> str:
    """
    Cut the label at the first delimiter (in priority order) found strictly
    inside it. NP-SBJ=2 -> NP, -NONE- stays.
    """
    for delim in delimiters:
        cut = label.find(delim, 1, len(label) - 1)
        if cut > 0:
            return label[:cut]
    return label


def _leaf_name(leaf: str) -> str:
    if len(leaf) >= 2 and leaf[0] == leaf[-1] == "'":
        return leaf[1:-1]
    return leaf


def _normalize(tree: Tree, delimiters: Optional[Sequence[str]]) -> Tree:
    """Copy with stripped labels and every nonterminal-unary chain spliced"""
    label = strip_label(tree.label(), delimiters) if delimiters else tree.label()
    children = list(tree)
    while len(children) == 1 and isinstance(children[0], Tree):
        children = list(children[0])
    return Tree(label, [
        _normalize(c, delimiters) if isinstance(c, Tree) else _leaf_name(c)
        for c in children
    ])


def _is_nullary(tree: Tree) -> bool:
    return len(tree) == 0 or list(tree) == ["ε"]


def _count(tree: Tree, counts: Counter) -> None:
    stack = [tree]
    while stack:
        node = stack.pop()
        rhs = tuple(
            nonterminal(c.label()) if isinstance(c, Tree) else terminal(c)
            for c in node
        )
        counts[(nonterminal(node.label()), rhs)] += 1
        stack.extend(c for c in node if isinstance(c, Tree))


def extract_grammar(
    tb: Treebank,
    strip_annotations: bool = False,
    delimiter: Optional[str] = None,
    semiring: Optional[Semiring] = None,
    progress: bool = False,
) -> WCFG:
    """
    Relative-frequency grammar from a treebank.

    Args:
        tb: Non-empty treebank
        strip_annotations: Cut label suffixes (NP-SBJ -> NP)
        delimiter: Single delimiter to cut at (default: settings priority list)
        semiring: Weight domain (real by default)
        progress: Show a tqdm bar on stderr

    Raises:
        NullaryInTreebank: If any node has no children or an ε leaf
        ValueError: If the treebank is empty
    """
    if not tb.trees:
        raise ValueError("cannot extract a grammar from an empty treebank")
    s = semiring or real_semiring()
    delimiters: Optional[List[str]] = None
    if strip_annotations:
        delimiters = [delimiter] if delimiter else list(get_settings().STRIP_DELIMITERS)

    counts: Counter = Counter()
    roots: Counter = Counter()
    offending: List[int] = []
    for i, tree in enumerate(tqdm(tb.trees, desc="extract", disable=not progress)):
        if any(_is_nullary(sub) for sub in tree.subtrees()):
            offending.append(i)
            continue
        norm = _normalize(tree, delimiters)
        roots[norm.label()] += 1
        _count(norm, counts)
    if offending:
        raise NullaryInTreebank(
            f"{len(offending)} tree(s) contain nullary nodes: "
            + ", ".join(f"#{i} (line {tb.lines[i] if i < len(tb.lines) else '?'})" for i in offending[:10]),
            details=offending,
        )

    lhs_totals: Dict[Symbol, int] = Counter()
    for (lhs, _), n in counts.items():
        lhs_totals[lhs] += n
    rules = [
        Rule(lhs, rhs, _mle(s, n, lhs_totals[lhs]))
        for (lhs, rhs), n in counts.items()
    ]
    rules.sort(key=lambda r: r.sort_key)

    metadata: Dict[str, object] = {"trees": len(tb)}
    top = max(roots.values())
    tied = sorted(label for label, n in roots.items() if n == top)
    if len(tied) > 1:
        logger.warning("start symbol tie between %s; choosing %s", ", ".join(tied), tied[0])
        metadata["start_tie"] = tied
    start = nonterminal(tied[0])
    logger.info("extracted %d rules over %d nonterminals from %d trees",
                len(rules), len(lhs_totals), len(tb))
    return WCFG.build(start, rules, s, metadata=metadata)


def _mle(s: Semiring, count: int, total: int):
    if s.name == "boolean":
        return True
    return count / total
