# leftcorner/formats.py
"""
Text formats: .wcfg grammars, s-expression derivations, and parameter files.

A grammar file looks like::

    # comment
    start: S
    semiring: real
    transform: 3
    0.5: S -> NP VP
    NP -> 'my-sister'
    S/S -> ε

``transform:`` is written when every frozen/slashed symbol in the file
shares one id; the ``#<id>`` suffixes are then omitted and restored on
reading.
"""

import json
import logging
import os
import re
import tempfile
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from nltk import Tree
from pydantic import BaseModel, Field

from .config import get_settings
from .errors import ForeignRule, InvalidParams, ParseError
from .grammar import (
    WCFG,
    Derivation,
    Rule,
    Symbol,
    frozen,
    nonterminal,
    slashed,
    terminal,
    transform_ids,
)
from .semiring import Semiring, get_semiring
from .transform import TransformParams

logger = logging.getLogger(__name__)

EPSILON = "ε"
_PLAIN = re.compile(r"[^\s'\"/~#\[\]]+")
_WITH_ID = re.compile(r"(.+)#(\d+)")


# =============================================================================
# SYMBOLS
# =============================================================================

def _top_level_slash(text: str) -> Optional[int]:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "/" and depth == 0:
            return i
    return None


def _tokens(text: str) -> List[str]:
    """Split on whitespace outside double quotes and [...] groups"""
    tokens: List[str] = []
    current: List[str] = []
    depth = 0
    quoted = escaped = False
    for ch in text:
        if quoted:
            current.append(ch)
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                quoted = False
            continue
        if ch.isspace() and depth == 0:
            if current:
                tokens.append("".join(current))
                current = []
            continue
        current.append(ch)
        if ch == '"':
            quoted = True
        elif ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
    if current:
        tokens.append("".join(current))
    return tokens


def _is_composite(text: str) -> bool:
    return text.startswith("~") or _top_level_slash(text) is not None


def parse_symbol(token: str, default_tid: int = 0) -> Symbol:
    """
    Parse one symbol token.

    Raises:
        ValueError: If the token is not a well-formed symbol
    """
    if len(token) >= 2 and token[0] == "'" and token[-1] == "'":
        return terminal(token[1:-1])
    if len(token) >= 2 and token[0] == '"' and token[-1] == '"':
        return nonterminal(json.loads(token))

    body, tid = token, default_tid
    match = _WITH_ID.fullmatch(token)
    if match and _is_composite(match.group(1)):
        body, tid = match.group(1), int(match.group(2))

    if body.startswith("~"):
        return frozen(_parse_atom(body[1:], default_tid), tid)
    cut = _top_level_slash(body)
    if cut is not None:
        return slashed(_parse_atom(body[:cut], default_tid), _parse_atom(body[cut + 1:], default_tid), tid)
    if body == EPSILON or not _PLAIN.fullmatch(body):
        raise ValueError(f"not a symbol: {token!r}")
    return nonterminal(body)


def _parse_atom(text: str, default_tid: int) -> Symbol:
    if len(text) >= 2 and text[0] == "[" and text[-1] == "]":
        return parse_symbol(text[1:-1], default_tid)
    if not _PLAIN.fullmatch(text):
        raise ValueError(f"not a symbol component: {text!r}")
    return nonterminal(text)


# =============================================================================
# GRAMMARS
# =============================================================================

def read_grammar(
    text: str,
    semiring: Optional[Semiring] = None,
    source: Optional[str] = None,
) -> WCFG:
    """
    Parse .wcfg text.

    Args:
        text: File contents
        semiring: Overrides the file's ``semiring:`` header
        source: File name used in error messages

    Raises:
        ParseError: On malformed lines, located by line and column
    """
    headers = {}
    body: List[Tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        if sep and key in ("start", "semiring", "transform", "declare") and "->" not in line:
            headers[key] = (lineno, value.strip())
            continue
        body.append((lineno, raw))

    if semiring is None:
        name = headers.get("semiring", (0, get_settings().SEMIRING))[1]
        try:
            semiring = get_semiring(name)
        except ValueError as exc:
            raise ParseError(str(exc), headers.get("semiring", (0,))[0], 1, source) from None

    default_tid = 0
    if "transform" in headers:
        lineno, value = headers["transform"]
        if not value.isdigit():
            raise ParseError(f"bad transform id {value!r}", lineno, 1, source)
        default_tid = int(value)

    def symbol_at(token: str, lineno: int, raw: str) -> Symbol:
        try:
            return parse_symbol(token, default_tid)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, raw.find(token) + 1, source) from None

    rules: List[Rule] = []
    for lineno, raw in body:
        lhs_part, arrow, rhs_part = raw.partition("->")
        if not arrow:
            raise ParseError("expected '<weight>: <lhs> -> <rhs>'", lineno, 1, source)
        left = _tokens(lhs_part)
        weight = semiring.one
        if len(left) == 2 and left[0].endswith(":"):
            try:
                weight = semiring.parse(left[0][:-1])
            except ValueError as exc:
                raise ParseError(str(exc), lineno, raw.find(left[0]) + 1, source) from None
            left = left[1:]
        if len(left) != 1:
            raise ParseError("expected exactly one left-hand symbol", lineno, 1, source)
        lhs = symbol_at(left[0], lineno, raw)
        if lhs.is_terminal:
            raise ParseError(f"terminal {lhs} on the left-hand side", lineno, raw.find(left[0]) + 1, source)
        tokens = _tokens(rhs_part)
        if tokens == [EPSILON]:
            tokens = []
        rules.append(Rule(lhs, tuple(symbol_at(tok, lineno, raw) for tok in tokens), weight))

    if "start" in headers:
        lineno, value = headers["start"]
        start = symbol_at(value, lineno, value)
    elif rules:
        start = rules[0].lhs
    else:
        raise ParseError("missing 'start:' header", 1, 1, source)

    declared: List[Symbol] = []
    if "declare" in headers:
        lineno, value = headers["declare"]
        declared = [symbol_at(tok, lineno, value) for tok in _tokens(value)]

    try:
        g = WCFG.build(start, rules, semiring,
                       nonterminals=[s for s in declared if s.is_nonterminal],
                       terminals=[s for s in declared if s.is_terminal])
    except ValueError as exc:
        raise ParseError(str(exc), headers.get("start", (1,))[0], 1, source) from None
    logger.debug("read %d rules from %s", len(rules), source or "<input>")
    return g


def _shows_ids(symbols: Sequence[Symbol]) -> Tuple[bool, Optional[int]]:
    ids = transform_ids(symbols)
    if len(ids) == 1:
        return False, next(iter(ids))
    return True, None


def write_grammar(g: WCFG) -> str:
    """Render a grammar as .wcfg text (weights omitted when 1̄)"""
    used = {g.start}
    for rule in g.rules:
        used.add(rule.lhs)
        used.update(rule.rhs)
    show_ids, single = _shows_ids(sorted(g.symbols))

    lines = [f"start: {g.start.render(show_ids)}", f"semiring: {g.semiring.name}"]
    if single is not None:
        lines.append(f"transform: {single}")
    unused = sorted(g.symbols - used)
    if unused:
        lines.append("declare: " + " ".join(s.render(show_ids) for s in unused))
    for rule in g.rules:
        text = rule.render(show_ids)
        if not g.semiring.is_one(rule.weight):
            text = f"{g.semiring.format(rule.weight)}: {text}"
        lines.append(text)
    return "\n".join(lines) + "\n"


def load_grammar(path: Union[str, Path], semiring: Optional[Semiring] = None) -> WCFG:
    path = Path(path)
    return read_grammar(path.read_text(encoding="utf-8"), semiring, source=str(path))


def save_grammar(g: WCFG, path: Union[str, Path]) -> None:
    write_atomic(path, write_grammar(g))


# =============================================================================
# DERIVATIONS
# =============================================================================

def locate_unbalanced(text: str) -> Optional[Tuple[int, int, str]]:
    """(line, column, message) of the first parenthesis problem, if any"""
    depth = 0
    opened: List[Tuple[int, int]] = []
    line, col = 1, 0
    for ch in text:
        col += 1
        if ch == "\n":
            line, col = line + 1, 0
        elif ch == "(":
            depth += 1
            opened.append((line, col))
        elif ch == ")":
            if depth == 0:
                return line, col, "unexpected ')'"
            depth -= 1
            opened.pop()
    if opened:
        at_line, at_col = opened[-1]
        return at_line, at_col, "unclosed '('"
    return None


def write_derivation(t: Derivation, show_ids: Optional[bool] = None) -> str:
    """S-expression: (S (NP 'my-sister') ...), (X ε) for nullary nodes"""
    if show_ids is None:
        labels = [node.label for node in _nodes(t)]
        show_ids, _ = _shows_ids(labels)

    def render(node: Derivation) -> str:
        if node.is_leaf:
            return node.label.render(show_ids)
        if not node.children:
            return f"({node.label.render(show_ids)} {EPSILON})"
        return "(" + " ".join([node.label.render(show_ids)] + [render(c) for c in node.children]) + ")"

    return render(t)


def _nodes(t: Derivation):
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(node.children)


def read_derivation(text: str, g: WCFG, default_tid: int = 0, source: Optional[str] = None) -> Derivation:
    """
    Parse an s-expression derivation and resolve each node against the
    rules of ``g`` (first rule with matching lhs and rhs).

    Raises:
        ParseError: On malformed text
        ForeignRule: If a node matches no rule of g
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("empty derivation", 1, 1, source)
    if not stripped.startswith("("):
        try:
            symbol = parse_symbol(stripped, default_tid)
        except ValueError as exc:
            raise ParseError(str(exc), 1, 1, source) from None
        if not symbol.is_terminal:
            raise ParseError(f"bare nonterminal {symbol} is not a derivation", 1, 1, source)
        return Derivation(symbol)

    problem = locate_unbalanced(stripped)
    if problem is not None:
        raise ParseError(problem[2], problem[0], problem[1], source)
    try:
        tree = Tree.fromstring(stripped)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1, source) from None
    return _resolve(tree, g, default_tid, source)


def _resolve(tree: Tree, g: WCFG, default_tid: int, source: Optional[str]) -> Derivation:
    try:
        label = parse_symbol(tree.label(), default_tid)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1, source) from None
    children: List[Derivation] = []
    if list(tree) != [EPSILON]:
        for child in tree:
            if isinstance(child, Tree):
                children.append(_resolve(child, g, default_tid, source))
                continue
            try:
                symbol = parse_symbol(child, default_tid)
            except ValueError as exc:
                raise ParseError(str(exc), 1, 1, source) from None
            if not symbol.is_terminal:
                raise ParseError(f"leaf {symbol} is not a terminal", 1, 1, source)
            children.append(Derivation(symbol))
    rhs = tuple(c.label for c in children)
    for rule in g.rules_for(label):
        if rule.rhs == rhs:
            return Derivation(label, rule, tuple(children))
    shown = " ".join(s.render() for s in rhs) or EPSILON
    raise ForeignRule(f"no rule {label} -> {shown} in the grammar", details=[f"{label} -> {shown}"])


# =============================================================================
# PARAMETER FILES
# =============================================================================

class ParamsFile(BaseModel):
    """Serialized TransformParams: rule indices, symbol tokens, id"""
    P: List[int] = Field(default_factory=list)
    X: List[str] = Field(default_factory=list)
    transform_id: int

    @classmethod
    def from_params(cls, params: TransformParams) -> "ParamsFile":
        return cls(
            P=params.p_indices(),
            X=[s.render() for s in sorted(params.X)],
            transform_id=params.tid,
        )

    def to_params(self, g: WCFG) -> TransformParams:
        """
        Raises:
            InvalidParams: If an index or symbol does not fit ``g``
        """
        symbols = []
        for token in self.X:
            try:
                symbols.append(parse_symbol(token))
            except ValueError as exc:
                raise InvalidParams(str(exc), details=[token]) from None
        return TransformParams.create(g, self.P, symbols, self.transform_id)


def load_params(path: Union[str, Path]) -> ParamsFile:
    return ParamsFile.model_validate_json(Path(path).read_text(encoding="utf-8"))


def save_params(params: TransformParams, path: Union[str, Path]) -> None:
    write_atomic(path, ParamsFile.from_params(params).model_dump_json(indent=2) + "\n")


# =============================================================================
# FILES
# =============================================================================

def write_atomic(path: Union[str, Path], text: str) -> None:
    """Write via a temporary file in the target directory, then rename"""
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
