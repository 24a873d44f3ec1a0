"""Two-route distributional identities between the base families."""

from __future__ import annotations

import math

import numpy as np

from ..ks import KsReport, ks_one_sample, ks_two_sample
from .gg import GgParams, gg_sample
from .stable import StableParams, stable_cdf, stable_sample


def stable_product_check(alpha: float, alpha_prime: float, n_samples: int,
                         rng: np.random.Generator) -> KsReport:
    """KS distance between Z_{a,0} * Z_{a',1}^(1/a) and G_{a a',0}.

    The reference CDF is evaluated in closed form when a a' is 1 or 2 and
    by characteristic-function inversion otherwise.
    """
    if not 0.0 < alpha <= 2.0:
        raise ValueError(f"alpha must lie in (0,2], got {alpha}")
    if not 0.0 < alpha_prime < 1.0:
        raise ValueError(f"alpha_prime must lie in (0,1), got {alpha_prime}")
    z = stable_sample(StableParams(alpha, 0.0), rng, n_samples)
    v = stable_sample(StableParams(alpha_prime, 1.0), rng, n_samples)
    x = z * v ** (1.0 / alpha)
    target = StableParams(alpha * alpha_prime, 0.0)
    closed = target.alpha in (1.0, 2.0)

    def cdf(nodes):
        return np.array([stable_cdf(target, t) for t in nodes])

    rep = ks_one_sample(x, cdf, f"G[{target.alpha:g},0]", tabulate=not closed)
    return KsReport(rep.statistic, rep.n_samples, rep.reference,
                    extra={"alpha": alpha, "alpha_prime": alpha_prime})


def weibull_mixing_sample(nu: float, rng: np.random.Generator, size=None):
    """Draws of M with E exp(-x M) = exp(-x^nu), i.e. M ~ G_{nu,1} (M = 1 at nu = 1)."""
    if not 0.0 < nu <= 1.0:
        raise ValueError(f"Weibull mixing representation needs nu in (0,1], got {nu}")
    if nu == 1.0:
        return 1.0 if size is None else np.ones(size)
    return stable_sample(StableParams(nu, 1.0), rng, size)


def weibull_mixed_exponential_check(nu: float, n_samples: int,
                                    rng: np.random.Generator) -> KsReport:
    """Two-sample KS between Weibull(nu) draws and E / M with E ~ Exp(1).

    P(E/M > x) = E exp(-x M) = exp(-x^nu) when M has Laplace transform
    exp(-z^nu).  ``extra`` holds the largest deviation of the empirical
    Laplace transform of M from exp(-x^nu) on a small grid, with the
    Monte Carlo standard error at that point.
    """
    if not 0.0 < nu <= 1.0:
        raise ValueError(f"Weibull mixed-exponential form needs nu in (0,1], got {nu}")
    w = gg_sample(GgParams(nu, 1.0, 1.0), rng, n_samples)
    m = np.asarray(weibull_mixing_sample(nu, rng, n_samples), dtype=float)
    mixed = rng.standard_exponential(n_samples) / m
    rep = ks_two_sample(w, mixed, f"exp/M mixture, nu={nu:g}")

    grid = np.array([0.25, 0.5, 1.0, 2.0, 4.0])
    terms = np.exp(-np.multiply.outer(grid, m))
    emp = terms.mean(axis=1)
    se = terms.std(axis=1, ddof=1) / math.sqrt(n_samples)
    dev = np.abs(emp - np.exp(-grid ** nu))
    i = int(np.argmax(dev / np.maximum(se, 1e-300)))
    return KsReport(rep.statistic, rep.n_samples, rep.reference, rep.n_reference,
                    extra={"nu": nu, "laplace_max_dev": float(dev[i]),
                           "laplace_se_at_max": float(se[i])})
