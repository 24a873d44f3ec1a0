"""Bundles of (cdf, density, sampler) used as limit laws and test references."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..special import normal_cdf, normal_pdf
from .gg import GgParams, gg_cdf, gg_density, gg_sample
from .gig import GigParams, gig_cdf, gig_density, gig_sample
from .nvmm import NvmmSpec, nvmm_cdf, nvmm_density, nvmm_sample
from .stable import StableParams, stable_cdf, stable_sample


@dataclass(frozen=True)
class DistributionOracle:
    """A reference law. ``cdf`` and ``density`` accept arrays."""

    cdf: Callable[[np.ndarray], np.ndarray]
    sampler: Callable[[np.random.Generator, int], np.ndarray]
    name: str
    density: Optional[Callable[[np.ndarray], np.ndarray]] = None
    expensive: bool = False  # when True KS tests tabulate the CDF


def normal_oracle(scale: float = 1.0) -> DistributionOracle:
    return DistributionOracle(
        cdf=lambda x: normal_cdf(np.asarray(x, dtype=float) / scale),
        sampler=lambda rng, n: scale * rng.standard_normal(n),
        name=f"normal(0,{scale:g}^2)",
        density=lambda x: normal_pdf(np.asarray(x, dtype=float) / scale) / scale)


def cauchy_oracle(scale: float = 1.0) -> DistributionOracle:
    """Centered Cauchy law with CDF 1/2 + arctan(x/scale)/pi."""
    return DistributionOracle(
        cdf=lambda x: 0.5 + np.arctan(np.asarray(x, dtype=float) / scale) / math.pi,
        sampler=lambda rng, n: scale * rng.standard_cauchy(n),
        name=f"cauchy({scale:.12g})",
        density=lambda x: scale / (math.pi * (scale ** 2 + np.asarray(x, dtype=float) ** 2)))


def stable_oracle(p: StableParams) -> DistributionOracle:
    closed = p.alpha in (1.0, 2.0) or (p.alpha == 0.5 and p.theta == 1.0)
    return DistributionOracle(
        cdf=lambda x: np.array([stable_cdf(p, v) for v in np.atleast_1d(x)]),
        sampler=lambda rng, n: stable_sample(p, rng, n),
        name=f"stable({p.alpha:g},{p.theta:g})",
        expensive=not closed)


def gig_oracle(p: GigParams) -> DistributionOracle:
    return DistributionOracle(
        cdf=lambda x: gig_cdf(p, x), sampler=lambda rng, n: gig_sample(p, rng, n),
        name=f"gig({p.nu:g},{p.mu:g},{p.lam:g})",
        density=lambda x: gig_density(p, x), expensive=p.kind == "gig")


def gg_oracle(p: GgParams) -> DistributionOracle:
    return DistributionOracle(
        cdf=lambda x: gg_cdf(p, x), sampler=lambda rng, n: gg_sample(p, rng, n),
        name=f"gg({p.nu:g},{p.kappa:g},{p.delta:g})",
        density=lambda x: gg_density(p, x))


def nvmm_oracle(spec: NvmmSpec) -> DistributionOracle:
    m = spec.mixing
    density = (lambda x: nvmm_density(spec, x)) if m.has_density else None
    return DistributionOracle(
        cdf=lambda x: nvmm_cdf(spec, x), sampler=lambda rng, n: nvmm_sample(spec, rng, n),
        name=f"nvmm(a={spec.a:g},sigma={spec.sigma:g},{m.name})",
        density=density, expensive=True)
