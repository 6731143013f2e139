# leftcorner/pipeline.py
"""
Size comparison of SLCT and GLCT left-recursion elimination.

For a unary-free, nullary-free grammar both transformations are run with
P = the left-recursive rules (SLCT with X = every symbol, GLCT with
X = bottoms(P)) and measured at three points:

- raw:  untrimmed transformation output
- trim: after trimming
- noeps: after binarizing and removing nullary rules (then trimming)
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

from tqdm import tqdm

from .grammar import WCFG, grammar_size, trim
from .leftrec import check_recipe_input, is_acyclic, left_recursive_rules, recipe_params
from .preprocess import binarize, eliminate_nullary, null_weights_glct
from .transform import TransformParams, glct, slct_params

logger = logging.getLogger(__name__)

STAGES = ("raw", "trim", "noeps")


@dataclass
class Measure:
    size: int
    rules: int

    @classmethod
    def of(cls, g: WCFG) -> "Measure":
        return cls(grammar_size(g), len(g.rules))


@dataclass
class SizeRow:
    method: str
    stages: Dict[str, Measure] = field(default_factory=dict)
    acyclic: Optional[bool] = None

    def to_dict(self) -> dict:
        out = {"method": self.method, "acyclic": self.acyclic}
        for stage, m in self.stages.items():
            out[f"{stage}_size"] = m.size
            out[f"{stage}_rules"] = m.rules
        return out


@dataclass
class SizeTable:
    input: Measure
    rows: List[SizeRow]

    def row(self, method: str) -> SizeRow:
        return next(r for r in self.rows if r.method == method)

    def ratio(self, stage: str) -> Optional[float]:
        """SLCT size over GLCT size at a stage"""
        glct_size = self.row("glct").stages[stage].size
        if glct_size == 0:
            return None
        return self.row("slct").stages[stage].size / glct_size

    def ratios(self) -> Dict[str, Optional[float]]:
        return {stage: self.ratio(stage) for stage in STAGES}

    def records(self) -> List[dict]:
        records = [{"method": "input", **asdict(self.input)}]
        records.extend(row.to_dict() for row in self.rows)
        records.append({"method": "ratio", **{f"{k}_size": v for k, v in self.ratios().items()}})
        return records

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records())


def _measure(method: str, g: WCFG, params: TransformParams) -> SizeRow:
    row = SizeRow(method)
    raw = glct(g, params)
    row.stages["raw"] = Measure.of(raw)
    trimmed = trim(raw)
    row.stages["trim"] = Measure.of(trimmed)
    row.acyclic = is_acyclic(trimmed)
    # fold symbols of binarize are never nullable, so the slashed-only
    # null weights of the unbinarized output still apply
    nulls = null_weights_glct(trimmed)
    noeps = trim(eliminate_nullary(binarize(trimmed), nulls))
    row.stages["noeps"] = Measure.of(noeps)
    logger.info(
        "%s: raw %d, trim %d, noeps %d",
        method, row.stages["raw"].size, row.stages["trim"].size, row.stages["noeps"].size,
    )
    return row


def size_table(g: WCFG, progress: bool = False) -> SizeTable:
    """
    Raises:
        HasUnaryRules: If g has a rule X -> Y
        HasNullaryRules: If g has a rule X -> ε
    """
    check_recipe_input(g)
    P = left_recursive_rules(g)
    choices = [
        ("slct", lambda: slct_params(g, P)),
        ("glct", lambda: recipe_params(g)),
    ]
    rows = [
        _measure(method, g, make())
        for method, make in tqdm(choices, desc="size table", disable=not progress)
    ]
    return SizeTable(Measure.of(g), rows)
