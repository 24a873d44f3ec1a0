"""Kolmogorov-Smirnov distances with DKW error bars."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.interpolate import PchipInterpolator

DKW_LEVEL = 0.01


def dkw_bound(n: float, level: float = DKW_LEVEL) -> float:
    """Half-width eps with P(sup|F_n - F| > eps) <= level (Massart's constant)."""
    return math.sqrt(math.log(2.0 / level) / (2.0 * n))


@dataclass(frozen=True)
class KsReport:
    statistic: float
    n_samples: int
    reference: str
    n_reference: Optional[int] = None
    extra: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not 0.0 <= self.statistic <= 1.0:
            raise ValueError(f"KS statistic outside [0, 1]: {self.statistic}")

    @property
    def effective_n(self) -> float:
        if self.n_reference is None:
            return float(self.n_samples)
        n, m = self.n_samples, self.n_reference
        return n * m / (n + m)

    @property
    def dkw_99(self) -> float:
        return dkw_bound(self.effective_n)

    def to_dict(self) -> dict:
        out = {"statistic": self.statistic, "n_samples": self.n_samples,
               "dkw_99": self.dkw_99, "reference": self.reference}
        if self.n_reference is not None:
            out["n_reference"] = self.n_reference
        out.update(self.extra)
        return out


def ks_statistic(samples, cdf_values_sorted) -> float:
    """sup_x |F_n(x) - F(x)| given F evaluated at the sorted sample.

    Correct for samples with ties when F is continuous.
    """
    n = len(cdf_values_sorted)
    i = np.arange(1, n + 1)
    upper = np.max(i / n - cdf_values_sorted)
    lower = np.max(cdf_values_sorted - (i - 1) / n)
    return float(min(1.0, max(upper, lower, 0.0)))


def tabulated_cdf(samples_sorted: np.ndarray, cdf_on_grid: Callable[[np.ndarray], np.ndarray],
                  n_nodes: int = 513) -> np.ndarray:
    """Evaluate an expensive CDF at every sorted sample point.

    ``cdf_on_grid`` maps an increasing array of nodes to CDF values.  It is
    called once, on ``n_nodes`` evenly spaced sample quantiles (always
    including the minimum and maximum) plus geometrically spaced order
    statistics toward both ends, where the samples are sparse; the result is
    monotone-cubic interpolated in between.
    """
    n = len(samples_sorted)
    tail = np.geomspace(1, max(n / (n_nodes - 1), 1), max(n_nodes // 8, 2))
    idx = np.concatenate([np.linspace(0, n - 1, n_nodes), tail, n - 1 - tail])
    idx = np.unique(np.clip(np.round(idx), 0, n - 1).astype(int))
    nodes = np.unique(samples_sorted[idx])
    values = np.asarray(cdf_on_grid(nodes), dtype=float)
    if len(nodes) == 1:
        return np.full(n, values[0])
    values = np.maximum.accumulate(np.clip(values, 0.0, 1.0))
    return np.clip(PchipInterpolator(nodes, values)(samples_sorted), 0.0, 1.0)


def ks_one_sample(samples, cdf, reference: str, *, tabulate: bool = False,
                  n_nodes: int = 513) -> KsReport:
    """KS distance between a sample and a continuous reference CDF.

    ``cdf`` takes an increasing array.  With ``tabulate=True`` it is treated
    as expensive and only evaluated on quantile nodes (see
    :func:`tabulated_cdf`).
    """
    x = np.sort(np.asarray(samples, dtype=float))
    if tabulate:
        values = tabulated_cdf(x, cdf, n_nodes)
    else:
        values = np.asarray(cdf(x), dtype=float)
    return KsReport(ks_statistic(x, values), len(x), reference)


def ks_two_sample(a, b, reference: str) -> KsReport:
    """Two-sample KS distance sup_x |F_a(x) - F_b(x)| (ties allowed)."""
    a = np.sort(np.asarray(a, dtype=float))
    b = np.sort(np.asarray(b, dtype=float))
    pooled = np.concatenate([a, b])
    fa = np.searchsorted(a, pooled, side="right") / len(a)
    fb = np.searchsorted(b, pooled, side="right") / len(b)
    stat = float(np.max(np.abs(fa - fb)))
    return KsReport(stat, len(a), reference, n_reference=len(b))
