"""Experiment reports: the common result type of every verification."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Any

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class ExperimentReport:
    experiment: str
    params: dict[str, Any]
    status: str
    details: dict[str, Any] = field(default_factory=dict)
    wall_time: float | None = None

    def __post_init__(self):
        if self.status not in (PASS, FAIL, INCONCLUSIVE):
            raise ValueError(f"bad status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self):
        return self.passed

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        out = {
            "experiment": self.experiment,
            "params": jsonable(self.params),
            "status": self.status,
            "details": jsonable(self.details),
        }
        if timing and self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)


def status_of(ok: bool) -> str:
    return PASS if ok else FAIL


def jsonable(value):
    """Convert exact scalars, polynomials and tuples to JSON-safe values."""
    from .exact.mpoly import LaurentPolynomial
    from .exact.scalar import RationalFunction, scalar_str
    from .exact.series import TruncatedSeries

    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, RationalFunction)):
        return scalar_str(value)
    if isinstance(value, float):
        return value
    if isinstance(value, LaurentPolynomial):
        return value.to_text()
    if isinstance(value, TruncatedSeries):
        return value.to_text()
    # mpmath numbers and anything else: a fixed-width decimal string
    try:
        import mpmath

        if isinstance(value, mpmath.mpf):
            return mpmath.nstr(value, 20)
    except ImportError:  # pragma: no cover
        pass
    return str(value)


def report_schema() -> dict:
    text = resources.files("intcomb").joinpath("report_schema.json").read_text()
    return json.loads(text)
