"""Result record for a single verified inequality instance."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

CSV_COLUMNS = ("inequality_id", "n", "r", "alpha", "l", "p", "norm", "lhs", "rhs", "margin", "pass")


@dataclass
class BoundRecord:
    """One checked inequality: lhs <= rhs + tol, with the parameters that produced it.

    `margin` is rhs - lhs; `passed` holds iff margin >= -tol.  Probe-type
    records (fitted constants) use rhs = +inf so that `passed` reduces to
    finiteness of the left-hand side.
    """

    inequality_id: str
    lhs: float
    rhs: float
    params: dict = field(default_factory=dict)
    tol: float = 0.0
    margin: float = field(init=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        if math.isinf(self.rhs) and self.rhs > 0:
            self.margin = math.inf
            self.passed = math.isfinite(self.lhs)
        else:
            self.margin = self.rhs - self.lhs
            self.passed = self.lhs <= self.rhs + self.tol

    def csv_row(self) -> list[str]:
        def fmt(x):
            if x is None or x == "":
                return ""
            if isinstance(x, bool):
                return "true" if x else "false"
            if isinstance(x, (int,)):
                return str(x)
            if isinstance(x, float):
                if math.isinf(x):
                    return "inf" if x > 0 else "-inf"
                return repr(x)
            return str(x)

        p = self.params
        return [
            self.inequality_id,
            fmt(p.get("n", "")),
            fmt(p.get("r", "")),
            fmt(p.get("alpha", "")),
            fmt(p.get("l", "")),
            fmt(p.get("p", "")),
            fmt(p.get("norm", "")),
            fmt(self.lhs),
            fmt(self.rhs),
            fmt(self.margin),
            fmt(self.passed),
        ]
