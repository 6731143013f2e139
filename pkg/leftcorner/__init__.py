# leftcorner/__init__.py
"""
Weighted context-free grammar toolkit built around the generalized
left-corner transformation.

This package provides:
- Semirings: boolean, real, Viterbi; axiom checks; matrix star closure
- Grammars: symbols, rules, derivations, string weights, trimming
- Transformations: GLCT (plain and filtered), speculation, LCT, SLCT
- Derivation mappings between a grammar and its transformation
- Left-recursion analysis and the elimination recipe
- Preprocessing: null weights, nullary/unary elimination, binarization
- Treebank ingestion and the SLCT/GLCT size pipeline
"""

from .semiring import (
    Semiring,
    boolean_semiring,
    real_semiring,
    viterbi_semiring,
    get_semiring,
    check_axioms,
    closure,
)

from .grammar import (
    Symbol,
    SymbolKind,
    Rule,
    WCFG,
    Derivation,
    terminal,
    nonterminal,
    frozen,
    slashed,
    words,
    derivation_yield,
    derivation_weight,
    enumerate_derivations,
    string_weight,
    trim,
    canonical,
    same_grammar,
    grammar_size,
    rule_count,
    equivalence_check,
)

from .transform import (
    TransformParams,
    RuleFamily,
    glct,
    glct_filtered,
    speculate,
    lct,
    slct,
    rule_count_bound,
)

from .derivmap import (
    spine,
    left_corner,
    phi,
    phi_inverse,
    glct_to_spec,
    spec_to_glct,
)

from .leftrec import (
    UNBOUNDED,
    left_recursion_graph,
    sccs,
    left_recursive_rules,
    bottoms,
    eliminate_left_recursion,
    slct_recipe,
    lr_depth,
)

from .preprocess import (
    NullWeightVector,
    null_weights_fixed_point,
    null_weights_glct,
    eliminate_nullary,
    eliminate_unary_cycles,
    binarize,
)

from .ingest import (
    Treebank,
    read_treebank,
    extract_grammar,
)

from .pipeline import size_table

from .formats import (
    read_grammar,
    write_grammar,
    load_grammar,
    save_grammar,
    read_derivation,
    write_derivation,
    ParamsFile,
)

from .errors import (
    ErrorCode,
    LeftCornerError,
)

from .config import (
    get_settings,
    LeftCornerSettings,
)

__all__ = [
    # Semirings
    "Semiring",
    "boolean_semiring",
    "real_semiring",
    "viterbi_semiring",
    "get_semiring",
    "check_axioms",
    "closure",

    # Grammars
    "Symbol",
    "SymbolKind",
    "Rule",
    "WCFG",
    "Derivation",
    "terminal",
    "nonterminal",
    "frozen",
    "slashed",
    "words",
    "derivation_yield",
    "derivation_weight",
    "enumerate_derivations",
    "string_weight",
    "trim",
    "canonical",
    "same_grammar",
    "grammar_size",
    "rule_count",
    "equivalence_check",

    # Transformations
    "TransformParams",
    "RuleFamily",
    "glct",
    "glct_filtered",
    "speculate",
    "lct",
    "slct",
    "rule_count_bound",

    # Derivation mappings
    "spine",
    "left_corner",
    "phi",
    "phi_inverse",
    "glct_to_spec",
    "spec_to_glct",

    # Left recursion
    "UNBOUNDED",
    "left_recursion_graph",
    "sccs",
    "left_recursive_rules",
    "bottoms",
    "eliminate_left_recursion",
    "slct_recipe",
    "lr_depth",

    # Preprocessing
    "NullWeightVector",
    "null_weights_fixed_point",
    "null_weights_glct",
    "eliminate_nullary",
    "eliminate_unary_cycles",
    "binarize",

    # Treebanks
    "Treebank",
    "read_treebank",
    "extract_grammar",
    "size_table",

    # Formats
    "read_grammar",
    "write_grammar",
    "load_grammar",
    "save_grammar",
    "read_derivation",
    "write_derivation",
    "ParamsFile",

    # Errors and configuration
    "ErrorCode",
    "LeftCornerError",
    "get_settings",
    "LeftCornerSettings",
]
