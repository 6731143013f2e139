# leftcorner/cli.py
"""
Command-line entry point.

stdout carries data (grammars, trees, reports); diagnostics go to stderr.
Exit status: 0 success, 1 toolkit error (``error[<code>]: <message>``),
2 usage error.
"""

import functools
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Callable, List, Optional

import dotenv
import typer
from rich.console import Console
from rich.table import Table

from .config import get_settings
from .errors import LeftCornerError
from .formats import (
    load_grammar,
    load_params,
    parse_symbol,
    read_derivation,
    save_params,
    write_atomic,
    write_derivation,
    write_grammar,
)
from .grammar import WCFG, equivalence_check, grammar_size, trim
from .ingest import extract_grammar, read_treebank
from .leftrec import (
    UNBOUNDED,
    bottoms,
    eliminate_left_recursion,
    left_recursion_graph,
    left_recursive_edges,
    left_recursive_rules,
    lr_depth,
    sccs,
)
from .logs import setup_logging
from .pipeline import STAGES, size_table
from .preprocess import null_weights_fixed_point, null_weights_glct, run_steps
from .semiring import Semiring, get_semiring
from .transform import (
    RuleFamily,
    TransformParams,
    assemble,
    glct,
    glct_families,
    glct_filtered_families,
    lct_params,
    speculate,
    speculate_families,
)
from . import derivmap

dotenv.load_dotenv()

app = typer.Typer(
    name="leftcorner",
    help="Weighted CFG left-corner transformations and left-recursion elimination.",
    no_args_is_help=True,
    add_completion=False,
)
console = Console()
err_console = Console(stderr=True)
logger = logging.getLogger("leftcorner.cli")


class Kind(str, Enum):
    glct = "glct"
    glct_filtered = "glct-filtered"
    slct = "slct"
    lct = "lct"
    speculate = "speculate"


class Recipe(str, Enum):
    left_recursion = "left-recursion"


class Direction(str, Enum):
    forward = "forward"
    inverse = "inverse"
    spec_to_glct = "spec-to-glct"
    glct_to_spec = "glct-to-spec"


class Method(str, Enum):
    fixed_point = "fixed-point"
    glct_fast = "glct-fast"


class Format(str, Enum):
    table = "table"
    jsonl = "jsonl"


class Pipeline(str, Enum):
    table1 = "table1"
    sizes = "sizes"


def handle_errors(func: Callable) -> Callable:
    """Map toolkit errors to exit 1 and plain precondition errors to exit 2"""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except LeftCornerError as exc:
            logger.debug("command failed: %s", exc.to_dict())
            typer.echo(f"error[{exc.code.value}]: {exc.message}", err=True)
            raise typer.Exit(code=1)
        except (ValueError, OSError) as exc:
            typer.echo(f"error: {exc}", err=True)
            raise typer.Exit(code=2)

    return wrapper


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(None, "--log-level", help="DEBUG, INFO, WARNING, ..."),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Shortcut for --log-level INFO"),
):
    level = log_level or ("INFO" if verbose else get_settings().LOG_LEVEL)
    setup_logging(level.upper())


# =============================================================================
# HELPERS
# =============================================================================

def _semiring(name: Optional[str]) -> Optional[Semiring]:
    if name is None:
        return None
    try:
        return get_semiring(name)
    except ValueError as exc:
        raise typer.BadParameter(str(exc), param_hint="--semiring") from None


def _load(path: Path, semiring: Optional[str]) -> WCFG:
    return load_grammar(path, _semiring(semiring))


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        typer.echo(text, nl=False)
    else:
        write_atomic(output, text)
        logger.info("wrote %s", output)


def _parse_indices(text: str) -> List[int]:
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8")
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise typer.BadParameter(f"not a list of rule indices: {text!r}", param_hint="--P") from None


def _parse_symbols(text: str) -> List:
    try:
        return [parse_symbol(tok) for tok in text.replace(",", " ").split()]
    except ValueError as exc:
        raise typer.BadParameter(str(exc), param_hint="--X") from None


def _params(g: WCFG, kind: Kind, P: Optional[str], X: Optional[str],
            recipe: Optional[Recipe], params_file: Optional[Path]) -> TransformParams:
    if params_file is not None:
        return load_params(params_file).to_params(g)
    if kind is Kind.lct:
        return lct_params(g)
    if recipe is Recipe.left_recursion and P is None:
        rules = left_recursive_rules(g)
    else:
        rules = [g.rules[i] if 0 <= i < len(g.rules) else i for i in _parse_indices(P or "")]
    if kind is Kind.slct:
        symbols = list(g.symbols)
    elif recipe is Recipe.left_recursion and X is None:
        symbols = list(bottoms(g, rules))
    else:
        symbols = _parse_symbols(X or "")
    return TransformParams.create(g, rules, symbols)


# =============================================================================
# COMMANDS
# =============================================================================

@app.command("transform")
@handle_errors
def cmd_transform(
    grammar: Path = typer.Option(..., "--grammar", "-g", exists=True, dir_okay=False),
    kind: Kind = typer.Option(Kind.glct, "--kind"),
    p_rules: Optional[str] = typer.Option(None, "--P", help="Rule indices, comma separated, or @file"),
    x_symbols: Optional[str] = typer.Option(None, "--X", help="Symbol tokens, comma or space separated"),
    recipe: Optional[Recipe] = typer.Option(None, "--recipe", help="Default P and X from left-recursion analysis"),
    params_file: Optional[Path] = typer.Option(None, "--params", exists=True, dir_okay=False),
    do_trim: bool = typer.Option(False, "--trim"),
    restrict_denominator: bool = typer.Option(False, "--restrict-denominator"),
    emit_params: Optional[Path] = typer.Option(None, "--emit-params"),
    semiring: Optional[str] = typer.Option(None, "--semiring"),
    output: Optional[Path] = typer.Option(None, "--output", "-o"),
):
    """Apply a left-corner transformation."""
    g = _load(grammar, semiring)
    params = _params(g, kind, p_rules, x_symbols, recipe, params_file)

    if kind is Kind.glct_filtered:
        families = glct_filtered_families(g, params)
    elif kind is Kind.speculate:
        families = speculate_families(g, params, restrict_denominator)
    else:
        families = glct_families(g, params)
    out = assemble(g, params, families, kind.value)
    for family in RuleFamily:
        logger.debug("  %-18s %d", family.value, len(families[family]))
    if do_trim:
        out = trim(out)

    if emit_params is not None:
        save_params(params, emit_params)
    _emit(write_grammar(out), output)


@app.command("eliminate-left-recursion")
@handle_errors
def cmd_eliminate(
    grammar: Path = typer.Option(..., "--grammar", "-g", exists=True, dir_okay=False),
    filtered: bool = typer.Option(False, "--filtered", help="Emit through the filtered GLCT"),
    emit_params: Optional[Path] = typer.Option(None, "--emit-params"),
    semiring: Optional[str] = typer.Option(None, "--semiring"),
    output: Optional[Path] = typer.Option(None, "--output", "-o"),
):
    """Remove left recursion with the left-recursive-rules / bottoms recipe."""
    g = _load(grammar, semiring)
    out, params = eliminate_left_recursion(g, filtered=filtered)
    if emit_params is not None:
        save_params(params, emit_params)
    _emit(write_grammar(out), output)


@app.command("stats")
@handle_errors
def cmd_stats(
    grammar: Path = typer.Option(..., "--grammar", "-g", exists=True, dir_okay=False),
    pipeline: Optional[Pipeline] = typer.Option(None, "--pipeline"),
    fmt: Format = typer.Option(Format.table, "--format"),
    semiring: Optional[str] = typer.Option(None, "--semiring"),
    progress: bool = typer.Option(False, "--progress"),
):
    """Size, rule count, SCC count, left recursion and lr-depth."""
    g = _load(grammar, semiring)
    if pipeline in (Pipeline.table1, Pipeline.sizes):
        _print_size_table(g, fmt, progress)
        return

    graph = left_recursion_graph(g)
    depth = lr_depth(g)
    report = {
        "size": grammar_size(g),
        "rules": len(g.rules),
        "C": sccs(graph).count,
        "left_recursive": [e.index for e in left_recursive_edges(g)],
        "lr_depth": "unbounded" if depth == UNBOUNDED else depth,
        "acyclic": depth != UNBOUNDED,
    }
    if fmt is Format.jsonl:
        typer.echo(json.dumps(report, sort_keys=True))
        return
    table = Table(title=str(grammar))
    table.add_column("measure")
    table.add_column("value", justify="right")
    for key, value in report.items():
        shown = ",".join(map(str, value)) if isinstance(value, list) else str(value).lower()
        table.add_row(key, shown or "-")
    console.print(table)


def _print_size_table(g: WCFG, fmt: Format, progress: bool) -> None:
    err_console.print("=" * 60, markup=False)
    err_console.print("SLCT vs GLCT size pipeline", markup=False)
    err_console.print("=" * 60, markup=False)
    result = size_table(g, progress=progress)
    if fmt is Format.jsonl:
        typer.echo(result.to_jsonl(), nl=False)
        return
    table = Table(title=f"input: size {result.input.size}, rules {result.input.rules}")
    table.add_column("method")
    for stage in STAGES:
        table.add_column(f"{stage} size", justify="right")
        table.add_column(f"{stage} rules", justify="right")
    table.add_column("acyclic")
    for row in result.rows:
        cells = [row.method]
        for stage in STAGES:
            cells += [str(row.stages[stage].size), str(row.stages[stage].rules)]
        table.add_row(*cells, str(row.acyclic).lower())
    ratio_cells = ["slct/glct"]
    for stage in STAGES:
        value = result.ratio(stage)
        ratio_cells += ["-" if value is None else f"{value:.2f}", ""]
    table.add_row(*ratio_cells, "")
    console.print(table)


@app.command("preprocess")
@handle_errors
def cmd_preprocess(
    grammar: Path = typer.Option(..., "--grammar", "-g", exists=True, dir_okay=False),
    steps: str = typer.Option("unary,nullary", "--steps", help="Comma separated: unary, nullary, binarize"),
    semiring: Optional[str] = typer.Option(None, "--semiring"),
    output: Optional[Path] = typer.Option(None, "--output", "-o"),
):
    """Run preprocessing steps in order."""
    g = _load(grammar, semiring)
    names = [name.strip() for name in steps.split(",") if name.strip()]
    out = run_steps(g, names)
    _emit(write_grammar(out), output)


@app.command("null-weights")
@handle_errors
def cmd_null_weights(
    grammar: Path = typer.Option(..., "--grammar", "-g", exists=True, dir_okay=False),
    method: Method = typer.Option(Method.fixed_point, "--method"),
    fmt: Format = typer.Option(Format.table, "--format"),
    semiring: Optional[str] = typer.Option(None, "--semiring"),
):
    """Print the weight of ε under every nonterminal."""
    g = _load(grammar, semiring)
    nulls = null_weights_glct(g) if method is Method.glct_fast else null_weights_fixed_point(g)
    s = g.semiring
    entries = [(x.render(), s.format(nulls[x])) for x in g.sorted_nonterminals() if x in nulls.weights]
    if fmt is Format.jsonl:
        for symbol, weight in entries:
            typer.echo(json.dumps({"symbol": symbol, "weight": weight}))
        return
    table = Table(title=f"null weights ({nulls.method}, {nulls.iterations} iterations)")
    table.add_column("symbol")
    table.add_column("weight", justify="right")
    for symbol, weight in entries:
        table.add_row(symbol, weight)
    console.print(table)


@app.command("extract-grammar")
@handle_errors
def cmd_extract(
    treebank: Path = typer.Option(..., "--treebank", "-t", exists=True, dir_okay=False),
    strip: bool = typer.Option(False, "--strip", help="Remove label annotations"),
    delimiter: Optional[str] = typer.Option(None, "--delimiter"),
    semiring: Optional[str] = typer.Option(None, "--semiring"),
    progress: bool = typer.Option(False, "--progress"),
    output: Optional[Path] = typer.Option(None, "--output", "-o"),
):
    """Maximum-likelihood grammar from a treebank."""
    tb = read_treebank(treebank)
    g = extract_grammar(tb, strip_annotations=strip, delimiter=delimiter,
                        semiring=_semiring(semiring), progress=progress)
    _emit(write_grammar(g), output)


@app.command("map-derivation")
@handle_errors
def cmd_map_derivation(
    grammar: Path = typer.Option(..., "--grammar", "-g", exists=True, dir_okay=False),
    params_file: Path = typer.Option(..., "--params", exists=True, dir_okay=False),
    tree: Path = typer.Option(..., "--tree", exists=True, dir_okay=False),
    direction: Direction = typer.Option(Direction.forward, "--direction"),
    semiring: Optional[str] = typer.Option(None, "--semiring"),
    output: Optional[Path] = typer.Option(None, "--output", "-o"),
):
    """Map a derivation between a grammar and its transformation."""
    g = _load(grammar, semiring)
    params = load_params(params_file).to_params(g)
    source = {
        Direction.forward: lambda: g,
        Direction.inverse: lambda: glct(g, params),
        Direction.glct_to_spec: lambda: glct(g, params),
        Direction.spec_to_glct: lambda: speculate(g, params),
    }[direction]()
    mapping = {
        Direction.forward: derivmap.phi,
        Direction.inverse: derivmap.phi_inverse,
        Direction.glct_to_spec: derivmap.glct_to_spec,
        Direction.spec_to_glct: derivmap.spec_to_glct,
    }[direction]
    t = read_derivation(tree.read_text(encoding="utf-8"), source, default_tid=params.tid, source=str(tree))
    _emit(write_derivation(mapping(t, params)) + "\n", output)


@app.command("check-equivalence")
@handle_errors
def cmd_check_equivalence(
    left: Path = typer.Argument(..., exists=True, dir_okay=False),
    right: Path = typer.Argument(..., exists=True, dir_okay=False),
    max_len: Optional[int] = typer.Option(None, "--max-len", min=0),
    semiring: Optional[str] = typer.Option(None, "--semiring"),
):
    """Compare the weights of all strings up to --max-len."""
    s = _semiring(semiring)
    g, h = load_grammar(left, s), load_grammar(right, s)
    if h.semiring.name != g.semiring.name:
        raise typer.BadParameter(
            f"grammars use different semirings ({g.semiring.name}, {h.semiring.name})"
        )
    bound = get_settings().EQUIVALENCE_MAX_LEN if max_len is None else max_len
    report = equivalence_check(g, h, bound)
    if report.equivalent:
        typer.echo(f"equivalent ({report.strings_checked} strings up to length {bound})")
        return
    typer.echo(f"not equivalent: {report.mismatch}")
    raise typer.Exit(code=1)


if __name__ == "__main__":
    app()
