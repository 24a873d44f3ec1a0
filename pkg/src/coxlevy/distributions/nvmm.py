"""Mixing laws on (0, inf) and normal variance-mean mixtures a U + sigma sqrt(U) N.

With GIG mixing the mixture is generalized hyperbolic, with GG mixing it is
generalized variance-gamma, and with one-sided stable mixing and a = 0 it is
a symmetric stable law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..special import (CharacteristicFn, QuadratureSpec, cdf_from_cf, integrate_vec,
                       normal_cdf, normal_pdf)
from .gg import GgParams, gg_cdf, gg_log_density, gg_sample
from .gig import GigParams, gig_cdf, gig_log_density, gig_sample
from .stable import StableParams, stable_cdf, stable_sample


class MixingLaw:
    """A law on (0, inf) with sampler and CDF, and a density when it has one."""

    has_density = False
    name = "mixing"

    def sample(self, rng: np.random.Generator, size=None):
        raise NotImplementedError

    def cdf(self, x):
        raise NotImplementedError

    def log_density(self, x):
        raise TypeError(f"{self.name} mixing law has no density")

    def laplace(self, z):
        """E exp(-z U) for complex z with Re z >= 0, where known in closed form."""
        raise TypeError(f"{self.name} mixing law has no closed-form Laplace transform")

    def describe(self) -> dict:
        return {"law": self.name}


@dataclass(frozen=True)
class GigMixing(MixingLaw):
    params: GigParams
    has_density = True
    name = "gig"

    def sample(self, rng, size=None):
        return gig_sample(self.params, rng, size)

    def cdf(self, x):
        return gig_cdf(self.params, x)

    def log_density(self, x):
        return gig_log_density(self.params, x)

    def describe(self):
        p = self.params
        return {"law": "gig", "nu": p.nu, "mu": p.mu, "lambda": p.lam}


@dataclass(frozen=True)
class GgMixing(MixingLaw):
    params: GgParams
    has_density = True
    name = "gg"

    def sample(self, rng, size=None):
        return gg_sample(self.params, rng, size)

    def cdf(self, x):
        return gg_cdf(self.params, x)

    def log_density(self, x):
        return gg_log_density(self.params, x)

    def describe(self):
        p = self.params
        return {"law": "gg", "nu": p.nu, "kappa": p.kappa, "delta": p.delta}


@dataclass(frozen=True)
class OneSidedStable(MixingLaw):
    alpha: float
    name = "one-sided-stable"

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"one-sided stable mixing needs alpha in (0,1), got {self.alpha}")

    @property
    def params(self) -> StableParams:
        return StableParams(self.alpha, 1.0)

    def sample(self, rng, size=None):
        return stable_sample(self.params, rng, size)

    def cdf(self, x):
        xs = np.asarray(x, dtype=float)
        out = np.array([stable_cdf(self.params, v) for v in xs.ravel()]).reshape(xs.shape)
        return out if out.ndim else float(out)

    def laplace(self, z):
        return np.exp(-np.asarray(z, dtype=complex) ** self.alpha)

    def describe(self):
        return {"law": self.name, "alpha": self.alpha}


@dataclass(frozen=True)
class Degenerate(MixingLaw):
    c: float = 1.0
    name = "degenerate"

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"degenerate mixing point must be > 0, got {self.c}")

    def sample(self, rng, size=None):
        return self.c if size is None else np.full(size, float(self.c))

    def cdf(self, x):
        out = (np.asarray(x, dtype=float) >= self.c).astype(float)
        return out if out.ndim else float(out)

    def laplace(self, z):
        return np.exp(-np.asarray(z, dtype=complex) * self.c)

    def describe(self):
        return {"law": self.name, "c": self.c}


class Empirical(MixingLaw):
    """Uniform law on a finite sample of positive values (e.g. Lambda_n(1)/k_n)."""

    name = "empirical"

    def __init__(self, values):
        values = np.sort(np.asarray(values, dtype=float).ravel())
        if values.size == 0 or not np.all(values > 0):
            raise ValueError("empirical mixing law needs a nonempty sample of positive values")
        self.values = values

    def sample(self, rng, size=None):
        return rng.choice(self.values, size)

    def cdf(self, x):
        out = np.searchsorted(self.values, np.asarray(x, dtype=float), side="right") / self.values.size
        return out if np.ndim(out) else float(out)

    def laplace(self, z):
        z = np.asarray(z, dtype=complex)
        return np.mean(np.exp(-np.multiply.outer(z, self.values)), axis=-1)

    def describe(self):
        return {"law": self.name, "n": int(self.values.size)}


@dataclass(frozen=True)
class NvmmSpec:
    a: float
    sigma: float
    mixing: MixingLaw

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")

    def describe(self) -> dict:
        return {"a": self.a, "sigma": self.sigma, "mixing": self.mixing.describe()}


def gh(a: float, sigma: float, nu: float, mu: float, lam: float) -> NvmmSpec:
    """Generalized hyperbolic law as a GIG-mixed NVMM."""
    return NvmmSpec(a, sigma, GigMixing(GigParams(nu, mu, lam)))


def gvg(a: float, sigma: float, nu: float, kappa: float, delta: float) -> NvmmSpec:
    """Generalized variance-gamma law as a GG-mixed NVMM."""
    return NvmmSpec(a, sigma, GgMixing(GgParams(nu, kappa, delta)))


def nvmm_sample(spec: NvmmSpec, rng: np.random.Generator, size=None):
    u = spec.mixing.sample(rng, size)
    return spec.a * u + spec.sigma * np.sqrt(u) * rng.standard_normal(size)


def nvmm_cf(spec: NvmmSpec) -> CharacteristicFn:
    """s -> L_U(sigma^2 s^2 / 2 - i a s), for mixing laws with a Laplace transform."""
    a, s2 = spec.a, spec.sigma ** 2
    mixing = spec.mixing
    return CharacteristicFn(lambda s: mixing.laplace(0.5 * s2 * s * s - 1j * a * s),
                            f"nvmm[{mixing.name}]")


_MIX_QUAD = QuadratureSpec(rel_tol=1e-10, abs_tol=1e-11, max_subdivisions=2000)
_WINDOW_DROP = 92.0  # e^-92 ~ 1e-40


def _log_window(mixing: MixingLaw) -> tuple[float, float]:
    """Range of w = log u carrying all but ~1e-40 of the mixing mass."""
    w = np.arange(-300.0, 300.0, 0.05)
    with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
        g = mixing.log_density(np.exp(w)) + w
    g = np.where(np.isfinite(g), g, -np.inf)
    keep = np.nonzero(g > g.max() - _WINDOW_DROP)[0]
    lo = w[max(keep[0] - 1, 0)]
    hi = w[min(keep[-1] + 1, len(w) - 1)]
    return float(lo), float(hi)


def _mixture_integral(spec: NvmmSpec, xs: np.ndarray, kernel) -> np.ndarray:
    lo, hi = _log_window(spec.mixing)
    a, sigma = spec.a, spec.sigma
    log_density = spec.mixing.log_density

    def f(w):
        u = math.exp(w)
        weight = math.exp(float(log_density(u)) + w)
        return kernel(xs, u, a, sigma) * weight

    # dense initial partition so narrow mass regions inside a wide window are seen
    out = integrate_vec(f, lo, hi, _MIX_QUAD, points=np.linspace(lo, hi, 65)[1:-1])
    return out


def _cdf_kernel(xs, u, a, sigma):
    return normal_cdf((xs - a * u) / (sigma * math.sqrt(u)))


def _density_kernel(xs, u, a, sigma):
    s = sigma * math.sqrt(u)
    return normal_pdf((xs - a * u) / s) / s


def nvmm_cdf(spec: NvmmSpec, x):
    """P(a U + sigma sqrt(U) N <= x), vectorized over ``x``.

    Exact average for degenerate / empirical mixing, CF inversion for
    one-sided stable mixing, quadrature over log u otherwise.
    """
    xs = np.asarray(x, dtype=float)
    flat = np.atleast_1d(xs).ravel()
    mixing = spec.mixing
    if isinstance(mixing, Degenerate):
        out = _cdf_kernel(flat, mixing.c, spec.a, spec.sigma)
    elif isinstance(mixing, Empirical):
        out = np.empty_like(flat)
        u = mixing.values
        for i in range(0, flat.size, 256):
            chunk = flat[i:i + 256, None]
            out[i:i + 256] = normal_cdf((chunk - spec.a * u) / (spec.sigma * np.sqrt(u))).mean(axis=1)
    elif mixing.has_density:
        out = _mixture_integral(spec, flat, _cdf_kernel)
    else:
        cf = nvmm_cf(spec)
        out = np.array([cdf_from_cf(cf, v) for v in flat])
    out = np.clip(out, 0.0, 1.0).reshape(xs.shape)
    return out if out.ndim else float(out)


def nvmm_density(spec: NvmmSpec, x):
    """Density of the mixture; needs a mixing law with a density (or a point mass)."""
    xs = np.asarray(x, dtype=float)
    flat = np.atleast_1d(xs).ravel()
    mixing = spec.mixing
    if isinstance(mixing, Degenerate):
        out = _density_kernel(flat, mixing.c, spec.a, spec.sigma)
    elif mixing.has_density:
        out = _mixture_integral(spec, flat, _density_kernel)
    else:
        raise TypeError(f"no density available for NVMM with {mixing.name} mixing")
    out = out.reshape(xs.shape)
    return out if out.ndim else float(out)


def mixing_from_dict(d: dict) -> MixingLaw:
    law = d["law"]
    if law == "gig":
        return GigMixing(GigParams(d["nu"], d["mu"], d["lambda"]))
    if law == "gg":
        return GgMixing(GgParams(d["nu"], d.get("kappa", 1.0), d.get("delta", 1.0)))
    if law == "one-sided-stable":
        return OneSidedStable(d["alpha"])
    if law == "degenerate":
        return Degenerate(d.get("c", 1.0))
    if law == "exponential":
        return GgMixing(GgParams(1.0, 1.0, d.get("mean", 1.0)))
    raise ValueError(f"unknown mixing law {law!r}")

