"""Generalized gamma law GG(nu, kappa, delta).

Density |nu| / (delta^(kappa nu) Gamma(kappa)) x^(kappa nu - 1) exp(-(x/delta)^nu).
kappa = 1 is the Weibull family; nu = 1 the gamma family; nu = -1 the
inverse gamma family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaincc, gammaln


@dataclass(frozen=True)
class GgParams:
    nu: float
    kappa: float = 1.0
    delta: float = 1.0

    def __post_init__(self):
        if self.nu == 0 or not math.isfinite(self.nu):
            raise ValueError("GG power nu must be a nonzero real")
        if not self.kappa > 0:
            raise ValueError(f"GG shape kappa must be > 0, got {self.kappa}")
        if not self.delta > 0:
            raise ValueError(f"GG scale delta must be > 0, got {self.delta}")

    def moment(self, r: float) -> float:
        """E X^r (infinite when kappa + r/nu <= 0)."""
        k = self.kappa + r / self.nu
        if k <= 0:
            return math.inf
        return self.delta ** r * math.exp(math.lgamma(k) - math.lgamma(self.kappa))

    def mean(self) -> float:
        return self.moment(1.0)


def gg_log_density(p: GgParams, x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("GG density is evaluated for x > 0")
    z = x / p.delta
    return (math.log(abs(p.nu)) - math.log(p.delta) - gammaln(p.kappa)
            + (p.kappa * p.nu - 1.0) * np.log(z) - z ** p.nu)


def gg_density(p: GgParams, x):
    """GG density; at x = 0 the right-hand limit is returned (0, finite or inf)."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0):
        raise ValueError("GG density is defined for x >= 0")
    pos = xs > 0
    out = np.zeros_like(xs)
    out[pos] = np.exp(gg_log_density(p, xs[pos]))
    if np.any(~pos):
        out[~pos] = _density_at_zero(p)
    return out if out.ndim else float(out)


def _density_at_zero(p: GgParams) -> float:
    if p.nu < 0:
        return 0.0
    e = p.kappa * p.nu - 1.0
    if e > 0:
        return 0.0
    if e < 0:
        return math.inf
    return abs(p.nu) / (p.delta * math.gamma(p.kappa))


def gg_cdf(p: GgParams, x):
    xs = np.maximum(np.asarray(x, dtype=float), 0.0)
    if p.nu > 0:
        out = gammainc(p.kappa, (xs / p.delta) ** p.nu)
    else:
        with np.errstate(divide="ignore"):
            out = np.where(xs > 0, gammaincc(p.kappa, (np.where(xs > 0, xs, 1.0) / p.delta) ** p.nu), 0.0)
    return out if np.ndim(out) else float(out)


def gg_sample(p: GgParams, rng: np.random.Generator, size=None):
    """delta * G^(1/nu) with G ~ gamma(kappa, 1)."""
    g = rng.gamma(p.kappa, 1.0, size)
    return p.delta * g ** (1.0 / p.nu)
