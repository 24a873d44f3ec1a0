"""Verdict reports with byte-stable JSON and CSV serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

PASS, FAIL = "PASS", "FAIL"


def plain(obj):
    """Recursively convert numpy scalars/arrays and tuples to JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return v
    return obj


def _cell(v) -> str:
    v = plain(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


@dataclass
class Report:
    """One experiment outcome: parameters, per-row numbers, verdict and margins.

    ``expected`` is FAIL for negative controls; ``as_expected`` tells whether
    the verdict matched.
    """

    experiment: str
    parameters: dict
    verdict: str
    rows: list = field(default_factory=list)
    margins: dict = field(default_factory=dict)
    rows_key: str = "per_kn"
    expected: str = PASS

    def __post_init__(self):
        if self.verdict not in (PASS, FAIL) or self.expected not in (PASS, FAIL):
            raise ValueError("verdicts are PASS or FAIL")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def as_expected(self) -> bool:
        return self.verdict == self.expected

    def to_dict(self) -> dict:
        return plain({"experiment": self.experiment, "parameters": self.parameters,
                      self.rows_key: self.rows, "verdict": self.verdict,
                      "expected_verdict": self.expected, "margins": self.margins})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        keys = sorted({k for row in self.rows for k in row})
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for row in self.rows:
            w.writerow([_cell(row.get(k, "")) for k in keys])
        return buf.getvalue()

    def summary(self) -> str:
        tag = "" if self.expected == PASS else f" (expected {self.expected})"
        return f"{self.experiment}: {self.verdict}{tag}"
