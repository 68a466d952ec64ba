"""Identity reports and their deterministic JSON encoding."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

SCALAR_TOL = 1e-12
OPERATOR_TOL = 1e-10
COUNTEREXAMPLE_TOL = 1e-9

PASS, FAIL, REPORT_ONLY = "pass", "fail", "report-only"


@dataclass
class IdentityReport:
    check: str
    params: dict
    residual: float
    tolerance: float
    report_only: bool = False
    lhs: Any = None
    rhs: Any = None
    counterexamples: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.report_only:
            return REPORT_ONLY
        return PASS if self.residual <= self.tolerance else FAIL

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
            "counterexamples": self.counterexamples,
        }


def residual_of(lhs, rhs) -> float:
    """Frobenius distance for matrices (or stacks, taking the max), |lhs - rhs| for scalars."""
    diff = np.asarray(lhs, dtype=np.complex128) - np.asarray(rhs, dtype=np.complex128)
    if diff.ndim >= 2 and diff.shape[-1] == diff.shape[-2] and diff.shape[-1] in (2, 4):
        norms = np.sqrt(np.sum(np.abs(diff) ** 2, axis=(-2, -1)))
    else:
        norms = np.abs(diff)
    return float(np.max(norms, initial=0.0))


def fmt_float(x: float) -> str:
    """17 significant digits, lowercase exponent."""
    if not math.isfinite(x):
        raise ValueError(f"cannot encode non-finite value {x!r}")
    if x == 0:
        return "0"
    return format(x, ".17g")


def dumps(obj) -> str:
    """Compact JSON with fixed float formatting (``json`` offers no float hook)."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps_lines(rows) -> str:
    """A JSON array with one element per line."""
    rows = list(rows)
    if not rows:
        return "[]\n"
    return "[\n" + ",\n".join(dumps(r) for r in rows) + "\n]\n"


def matrix_json(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    flat = m.reshape(-1)
    return {
        "dim": int(m.shape[-1]),
        "re": [float(z) for z in flat.real],
        "im": [float(z) for z in flat.imag],
    }
