# leftcorner/errors.py
"""
Error codes and exception hierarchy.

Every domain failure raised by the toolkit is a ``LeftCornerError`` carrying a
stable ``ErrorCode``; the CLI maps these to exit status 1.
"""

from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence


class ErrorCode(str, Enum):
    """Stable error codes surfaced by the CLI"""
    UNBOUNDED_DERIVATIONS = "unbounded_derivations"
    INVALID_PARAMS = "invalid_params"
    FOREIGN_RULE = "foreign_rule"
    MALFORMED_SHAPE = "malformed_shape"
    HAS_UNARY_RULES = "has_unary_rules"
    HAS_NULLARY_RULES = "has_nullary_rules"
    NO_CONVERGENCE = "no_convergence"
    NOT_GLCT_SHAPE = "not_glct_shape"
    STAR_DIVERGENCE = "star_divergence"
    PARSE_ERROR = "parse_error"
    NULLARY_IN_TREEBANK = "nullary_in_treebank"


class LeftCornerError(Exception):
    """Base class for toolkit errors"""

    code: ErrorCode = ErrorCode.INVALID_PARAMS

    def __init__(self, message: str, details: Optional[Sequence[Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: List[Any] = list(details or [])
        self.timestamp = datetime.now(timezone.utc)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "code": self.code.value,
            "message": self.message,
            "details": [str(d) for d in self.details],
            "timestamp": self.timestamp.isoformat(),
        }


class UnboundedDerivations(LeftCornerError):
    """A query would sum over infinitely many derivations"""
    code = ErrorCode.UNBOUNDED_DERIVATIONS


class InvalidParams(LeftCornerError):
    """Transformation parameters do not fit the grammar"""
    code = ErrorCode.INVALID_PARAMS


class ForeignRule(LeftCornerError):
    """A derivation uses a rule the grammar does not have"""
    code = ErrorCode.FOREIGN_RULE


class MalformedShape(LeftCornerError):
    """A derivation does not have the shape a mapping expects"""
    code = ErrorCode.MALFORMED_SHAPE


class HasUnaryRules(LeftCornerError):
    code = ErrorCode.HAS_UNARY_RULES


class HasNullaryRules(LeftCornerError):
    code = ErrorCode.HAS_NULLARY_RULES


class NoConvergence(LeftCornerError):
    code = ErrorCode.NO_CONVERGENCE


class NotGLCTShape(LeftCornerError):
    """Grammar has nullary rules outside the slashed X/X family"""
    code = ErrorCode.NOT_GLCT_SHAPE


class StarDivergence(LeftCornerError):
    code = ErrorCode.STAR_DIVERGENCE


class ParseError(LeftCornerError):
    """Malformed input text, located by 1-based line and column"""
    code = ErrorCode.PARSE_ERROR

    def __init__(self, message: str, line: int = 0, column: int = 0,
                 source: Optional[str] = None):
        where = f"{source or '<input>'}:{line}:{column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column
        self.source = source

    def to_dict(self) -> Dict[str, Any]:
        record = super().to_dict()
        record.update(line=self.line, column=self.column)
        return record


class NullaryInTreebank(LeftCornerError):
    """Treebank trees contain childless nodes; details lists tree indices"""
    code = ErrorCode.NULLARY_IN_TREEBANK
