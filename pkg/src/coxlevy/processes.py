"""Grid simulation of subordinators, compound Poisson sums and compound Cox processes.

A compound Cox process is Q(t) = X_1 + ... + X_{N(L(t))} with N a unit-rate
Poisson process, L a subordinator (the random clock) and X_i i.i.d. jumps.
Paths are simulated on a fixed time grid; the jumps falling in one grid cell
are aggregated, which is exact for the values at grid times.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional

import numpy as np

from .distributions.nvmm import MixingLaw
from .distributions.stable import StableParams, one_sided_moment, stable_sample
from .ks import KsReport, ks_one_sample, ks_two_sample
from .special import normal_cdf, normal_pdf

# --------------------------------------------------------------------------- grid / path


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing times from 0 to 1."""

    points: tuple

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        if p.ndim != 1 or p.size < 2:
            raise ValueError("a time grid needs at least the two points 0 and 1")
        if p[0] != 0.0 or p[-1] != 1.0:
            raise ValueError(f"time grid must start at 0 and end at 1, got [{p[0]}, {p[-1]}]")
        if np.any(np.diff(p) <= 0):
            raise ValueError("time grid points must be strictly increasing")
        object.__setattr__(self, "points", tuple(float(v) for v in p))

    @classmethod
    def uniform(cls, cells: int = 1024) -> "TimeGrid":
        if cells < 1:
            raise ValueError(f"grid needs at least one cell, got {cells}")
        return cls(tuple(np.linspace(0.0, 1.0, cells + 1)))

    @classmethod
    def through(cls, times) -> "TimeGrid":
        """Coarsest grid containing 0, 1 and the given times."""
        ts = sorted({0.0, 1.0, *(float(t) for t in times)})
        if ts[0] < 0 or ts[-1] > 1:
            raise ValueError("grid times must lie in [0, 1]")
        return cls(tuple(ts))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.points)

    @property
    def resolution(self) -> int:
        return len(self.points) - 1

    @property
    def steps(self) -> np.ndarray:
        return np.diff(self.array)

    def index(self, t: float) -> int:
        i = int(np.searchsorted(self.array, t))
        if i >= len(self.points) or abs(self.points[i] - t) > 1e-12:
            raise KeyError(f"time {t} is not a grid point")
        return i


@dataclass(frozen=True)
class SamplePath:
    """Values of a cadlag process at grid times; shape (n_grid,) or (n_paths, n_grid)."""

    grid: TimeGrid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape[-1] != len(self.grid.points):
            raise ValueError("path values do not match the grid length")
        if np.any(v[..., 0] != 0.0):
            raise ValueError("paths must start at 0")
        object.__setattr__(self, "values", v)

    @property
    def n_paths(self) -> int:
        return 1 if self.values.ndim == 1 else self.values.shape[0]

    def at(self, t: float) -> np.ndarray:
        return self.values[..., self.grid.index(t)]

    def is_nondecreasing(self) -> bool:
        return bool(np.all(np.diff(self.values, axis=-1) >= 0))

    def to_csv(self, stream=None) -> str:
        """CSV with header ``t,value`` (``path,t,value`` for several paths).

        Floats are written with repr, the shortest round-trip form.
        """
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        t = self.grid.points
        if self.values.ndim == 1:
            w.writerow(["t", "value"])
            w.writerows((repr(a), repr(float(b))) for a, b in zip(t, self.values))
        else:
            w.writerow(["path", "t", "value"])
            for k, row in enumerate(self.values):
                w.writerows((k, repr(a), repr(float(b))) for a, b in zip(t, row))
        text = buf.getvalue()
        if stream is not None:
            stream.write(text)
        return text


# --------------------------------------------------------------------------- Poisson


def poisson_sample(mean, rng: np.random.Generator, size=None):
    """Exact Poisson draws (numpy: inversion below 10, PTRS rejection above)."""
    lam = np.asarray(mean, dtype=float)
    if np.any(~np.isfinite(lam)) or np.any(lam < 0):
        raise ValueError("Poisson mean must be finite and >= 0")
    return rng.poisson(lam, size)


# --------------------------------------------------------------------------- subordinators


@dataclass(frozen=True)
class Certificate:
    """E L^delta(t) <= (c_n t)^delta1 for t in (0, 1]."""

    delta: float
    delta1: float
    c_n: float

    def __post_init__(self):
        if not 0.0 < self.delta <= 1.0:
            raise ValueError(f"certificate delta must lie in (0,1], got {self.delta}")
        if not self.delta1 >= 0.5:
            raise ValueError(f"certificate delta1 must be >= 1/2, got {self.delta1}")
        if not self.c_n > 0:
            raise ValueError(f"certificate C_n must be > 0, got {self.c_n}")

    def bound(self, t):
        return (self.c_n * np.asarray(t, dtype=float)) ** self.delta1


@dataclass(frozen=True)
class StableSub:
    """L(t) = scale * t^(1/alpha) * Z_{alpha,1}."""

    alpha: float
    scale: float = 1.0
    path_capable = True

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"stable subordinator needs alpha in (0,1), got {self.alpha}")
        if not self.scale > 0:
            raise ValueError(f"stable subordinator scale must be > 0, got {self.scale}")

    def increments(self, dt, rng, size):
        z = stable_sample(StableParams(self.alpha, 1.0), rng, size)
        return self.scale * np.asarray(dt) ** (1.0 / self.alpha) * z

    def moment(self, rho: float, t: float = 1.0) -> float:
        return self.scale ** rho * t ** (rho / self.alpha) * one_sided_moment(self.alpha, rho)

    def describe(self):
        return {"kind": "stable", "alpha": self.alpha, "scale": self.scale}


@dataclass(frozen=True)
class GammaSub:
    """L(t) ~ gamma(shape_rate * t, rate)."""

    shape_rate: float = 1.0
    rate: float = 1.0
    path_capable = True

    def __post_init__(self):
        if not (self.shape_rate > 0 and self.rate > 0):
            raise ValueError("gamma subordinator needs shape_rate > 0 and rate > 0")

    def increments(self, dt, rng, size):
        return rng.gamma(self.shape_rate * np.asarray(dt), 1.0 / self.rate, size)

    def moment(self, rho: float, t: float = 1.0) -> float:
        k = self.shape_rate * t
        return math.exp(math.lgamma(k + rho) - math.lgamma(k)) / self.rate ** rho

    def describe(self):
        return {"kind": "gamma", "shape_rate": self.shape_rate, "rate": self.rate}


@dataclass(frozen=True)
class IgSub:
    """Inverse Gaussian subordinator: L(1) ~ IG(mean, shape), L(t) ~ IG(mean t, shape t^2)."""

    mean: float = 1.0
    shape: float = 1.0
    path_capable = True

    def __post_init__(self):
        if not (self.mean > 0 and self.shape > 0):
            raise ValueError("IG subordinator needs mean > 0 and shape > 0")

    def increments(self, dt, rng, size):
        dt = np.asarray(dt, dtype=float)
        return rng.wald(self.mean * dt, self.shape * dt * dt, size)

    def moment(self, rho: float, t: float = 1.0) -> float:
        if rho == 1.0:
            return self.mean * t
        raise NotImplementedError("only the first IG moment is available in closed form")

    def describe(self):
        return {"kind": "ig", "mean": self.mean, "shape": self.shape}


@dataclass(frozen=True)
class Deterministic:
    """L(t) = slope * t."""

    slope: float = 1.0
    path_capable = True

    def __post_init__(self):
        if not self.slope > 0:
            raise ValueError(f"deterministic clock slope must be > 0, got {self.slope}")

    def increments(self, dt, rng, size):
        shape = np.shape(dt) if size is None else size
        return np.broadcast_to(self.slope * np.asarray(dt, dtype=float), shape).copy()

    def moment(self, rho: float, t: float = 1.0) -> float:
        return (self.slope * t) ** rho

    def describe(self):
        return {"kind": "deterministic", "slope": self.slope}


@dataclass(frozen=True)
class ScaledMarginal:
    """Only the unit-time value L(1) = kn * U is modelled (no paths)."""

    kn: float
    mixing: MixingLaw
    path_capable = False

    def __post_init__(self):
        if not self.kn > 0:
            raise ValueError(f"kn must be > 0, got {self.kn}")

    def increments(self, dt, rng, size):
        raise ValueError("ScaledMarginal clocks support only t = 1 (no path simulation)")

    def describe(self):
        return {"kind": "scaled-marginal", "kn": self.kn, "mixing": self.mixing.describe()}


@dataclass(frozen=True)
class SubordinatorScheme:
    kind: object
    certificate: Optional[Certificate] = None

    @property
    def path_capable(self) -> bool:
        return self.kind.path_capable

    def marginal(self, rng: np.random.Generator, size=None, t: float = 1.0):
        """Draws of L(t); ScaledMarginal clocks only allow t = 1."""
        if isinstance(self.kind, ScaledMarginal):
            if t != 1.0:
                raise ValueError("ScaledMarginal clocks support only t = 1")
            return self.kind.kn * np.asarray(self.kind.mixing.sample(rng, size), dtype=float)
        return self.kind.increments(t, rng, size)

    def describe(self) -> dict:
        out = dict(self.kind.describe())
        if self.certificate is not None:
            c = self.certificate
            out["certificate"] = {"delta": c.delta, "delta1": c.delta1, "c_n": c.c_n}
        return out


def stable_certificate(alpha: float, delta: float, scale: float = 1.0) -> Certificate:
    """Certificate of a stable clock, exact: E L^d(t) = (C t)^(d/alpha).

    Self-similarity gives E L^d(t) = t^(d/alpha) E L^d(1), so
    C = (E L^d(1))^(alpha/d) with delta1 = d/alpha.
    """
    if not alpha / 2.0 <= delta < alpha:
        raise ValueError(f"stable certificate needs delta in [alpha/2, alpha), got {delta}")
    m = StableSub(alpha, scale).moment(delta)
    return Certificate(delta, delta / alpha, m ** (alpha / delta))


def stable_scheme(alpha: float, delta: Optional[float] = None, scale: float = 1.0):
    delta = alpha / 2.0 if delta is None else delta
    return SubordinatorScheme(StableSub(alpha, scale), stable_certificate(alpha, delta, scale))


def deterministic_scheme(slope: float = 1.0, delta: float = 1.0):
    # E (c t)^d = (c t)^d: certificate holds with equality for delta1 = d >= 1/2
    return SubordinatorScheme(Deterministic(slope), Certificate(delta, delta, slope))


def gamma_scheme(shape_rate: float = 1.0, rate: float = 1.0):
    # E L(t) = (shape_rate / rate) t
    return SubordinatorScheme(GammaSub(shape_rate, rate),
                              Certificate(1.0, 1.0, shape_rate / rate))


def ig_scheme(mean: float = 1.0, shape: float = 1.0):
    return SubordinatorScheme(IgSub(mean, shape), Certificate(1.0, 1.0, mean))


def scaled_marginal_scheme(kn: float, mixing: MixingLaw):
    return SubordinatorScheme(ScaledMarginal(kn, mixing))


# --------------------------------------------------------------------------- jumps


def _generic_sums(sampler, counts, rng, chunk: int = 1 << 22):
    """Sum counts[i] i.i.d. jumps for every i by drawing them all."""
    counts = np.asarray(counts, dtype=np.int64)
    flat = counts.ravel()
    out = np.zeros(flat.size)
    start = 0
    while start < flat.size:
        # grow the chunk of cells until the number of jumps reaches `chunk`
        csum = np.cumsum(flat[start:])
        stop = start + max(1, int(np.searchsorted(csum, chunk, side="right")))
        c = flat[start:stop]
        total = int(c.sum())
        if total:
            x = sampler(rng, total)
            owner = np.repeat(np.arange(c.size), c)
            out[start:stop] = np.bincount(owner, weights=x, minlength=c.size)
        start = stop
    return out.reshape(counts.shape)


def _rademacher_draw(shift, h, rng, size):
    return shift + h * (2.0 * rng.integers(0, 2, size) - 1.0)


def _rademacher_sums(shift, h, counts, rng):
    counts = np.asarray(counts, dtype=np.int64)
    b = rng.binomial(counts, 0.5)
    return shift * counts + h * (2.0 * b - counts)


def _rademacher_lindeberg(kn, shift, h, eps):
    # kn * E[X^2; |X| >= eps] for the two-point law
    hi, lo = shift + h, shift - h
    return kn * 0.5 * (hi * hi * (abs(hi) >= eps) + lo * lo * (abs(lo) >= eps))


def _normal_draw(m, s, rng, size):
    return rng.normal(m, s, size)


def _normal_sums(m, s, counts, rng):
    counts = np.asarray(counts, dtype=np.int64)
    return m * counts + s * np.sqrt(counts) * rng.standard_normal(counts.shape)


def _normal_tail_second_moment(m, s, eps):
    """E[X^2; X >= eps] for X ~ N(m, s^2)."""
    a = (eps - m) / s
    return (m * m + s * s) * normal_cdf(-a) + s * (m + eps) * normal_pdf(a)


def _normal_lindeberg(kn, m, s, eps):
    return kn * (_normal_tail_second_moment(m, s, eps) + _normal_tail_second_moment(-m, s, eps))


def _laplace_draw(m, b, rng, size):
    return m + b * (rng.standard_exponential(size) - rng.standard_exponential(size))


def _laplace_sums(m, b, counts, rng):
    # a sum of n Laplace(b) jumps is b (G1 - G2) with G1, G2 ~ gamma(n, 1)
    counts = np.asarray(counts, dtype=np.int64)
    n = counts.astype(float)
    pos = counts > 0
    g = np.zeros(counts.shape)
    g[pos] = rng.gamma(n[pos], 1.0) - rng.gamma(n[pos], 1.0)
    return m * n + b * g


def _laplace_lindeberg(kn, b, eps):
    # kn E[X^2; |X| >= eps], |X| ~ Exp(mean b), centered case
    return kn * math.exp(-eps / b) * (eps * eps + 2 * eps * b + 2 * b * b)


def _unit_draw(rng, size):
    return np.ones(size)


def _unit_sums(counts, rng):
    return np.asarray(counts, dtype=float)


def _pareto_draw(scale, gamma, rng, size):
    sign = 2.0 * rng.integers(0, 2, size) - 1.0
    return scale * sign * (1.0 + rng.pareto(gamma, size))


def _infinite(eps):
    return math.inf


@dataclass(frozen=True)
class JumpScheme:
    """Law of one jump X_{n,1} of the n-th row, with its moments and normalizer kn.

    ``abs_moment`` is E|X|^beta.  ``variance`` may be inf.  ``lindeberg``
    maps eps to kn E[X^2; |X| >= eps].  ``sum_sampler(counts, rng)`` returns
    exact sums of counts[i] jumps; schemes without one fall back to drawing
    every jump.
    """

    name: str
    kn: float
    mean: float
    variance: float
    beta: float
    abs_moment: float
    sampler: Callable = field(repr=False)
    sum_sampler: Optional[Callable] = field(default=None, repr=False)
    lindeberg: Optional[Callable] = field(default=None, repr=False)
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not 0.0 < self.beta <= 1.0:
            raise ValueError(f"jump moment order beta must lie in (0,1], got {self.beta}")
        if not 0.0 < self.abs_moment < math.inf:
            raise ValueError("E|X|^beta must be positive and finite")
        if not self.kn >= 1:
            raise ValueError(f"kn must be >= 1, got {self.kn}")

    def sample(self, rng: np.random.Generator, size=None):
        return self.sampler(rng, size)

    def sums(self, counts, rng: np.random.Generator):
        if self.sum_sampler is not None:
            return self.sum_sampler(counts, rng)
        return _generic_sums(self.sampler, counts, rng)

    def verify_moments(self, rng: np.random.Generator, n: int = 100_000) -> dict:
        """Monte Carlo z-scores of the declared mean and E|X|^beta."""
        x = np.asarray(self.sample(rng, n), dtype=float)
        out = {}
        for key, vals, target in (("mean", x, self.mean),
                                  ("abs_moment", np.abs(x) ** self.beta, self.abs_moment)):
            se = vals.std(ddof=1) / math.sqrt(n)
            out[key] = 0.0 if se == 0 else float((vals.mean() - target) / se)
        return out

    def describe(self) -> dict:
        return {"family": self.name, "kn": self.kn, **self.params}


def rademacher_jumps(kn: float = 1.0, shift: float = 0.0) -> JumpScheme:
    """X = shift/kn +- kn^(-1/2) with equal probabilities."""
    s, h = shift / kn, kn ** -0.5
    return JumpScheme(
        "rademacher", kn, mean=s, variance=h * h, beta=1.0,
        abs_moment=0.5 * (abs(s + h) + abs(s - h)),
        sampler=partial(_rademacher_draw, s, h),
        sum_sampler=partial(_rademacher_sums, s, h),
        lindeberg=partial(_rademacher_lindeberg, kn, s, h),
        params={"shift": shift})


def normal_jumps(kn: float = 1.0, shift: float = 0.0) -> JumpScheme:
    """X ~ N(shift/kn, 1/kn)."""
    m, s = shift / kn, kn ** -0.5
    # E|X| for a folded normal
    absm = s * math.sqrt(2.0 / math.pi) * math.exp(-0.5 * (m / s) ** 2) + m * (1 - 2 * normal_cdf(-m / s))
    return JumpScheme(
        "normal", kn, mean=m, variance=s * s, beta=1.0, abs_moment=absm,
        sampler=partial(_normal_draw, m, s), sum_sampler=partial(_normal_sums, m, s),
        lindeberg=partial(_normal_lindeberg, kn, m, s), params={"shift": shift})


def laplace_jumps(kn: float = 1.0) -> JumpScheme:
    """Centered Laplace jumps with variance 1/kn (a non-lattice alternative)."""
    b = (2.0 * kn) ** -0.5
    return JumpScheme(
        "laplace", kn, mean=0.0, variance=2 * b * b, beta=1.0, abs_moment=b,
        sampler=partial(_laplace_draw, 0.0, b), sum_sampler=partial(_laplace_sums, 0.0, b),
        lindeberg=partial(_laplace_lindeberg, kn, b))


def unit_jumps() -> JumpScheme:
    """X = 1: the compound process is the counting process itself."""
    return JumpScheme("unit", 1.0, mean=1.0, variance=0.0, beta=1.0, abs_moment=1.0,
                      sampler=_unit_draw, sum_sampler=_unit_sums)


def pareto_jumps(kn: float = 1.0, gamma: float = 1.5) -> JumpScheme:
    """Symmetric Pareto jumps kn^(-1/gamma) * S * P, P >= 1 with tail x^-gamma.

    For 1 < gamma < 2 the mean exists but the variance does not.
    """
    if not 1.0 < gamma < 2.0:
        raise ValueError(f"heavy-tailed jumps need gamma in (1,2), got {gamma}")
    c = kn ** (-1.0 / gamma)
    return JumpScheme(
        "pareto", kn, mean=0.0, variance=math.inf, beta=1.0,
        abs_moment=c * gamma / (gamma - 1.0),
        sampler=partial(_pareto_draw, c, gamma), lindeberg=_infinite,
        params={"gamma": gamma})


def jumps_from_dict(d: dict, kn: float = 1.0) -> JumpScheme:
    fam = d["family"]
    if fam == "rademacher":
        return rademacher_jumps(kn, d.get("shift", 0.0))
    if fam == "normal":
        return normal_jumps(kn, d.get("shift", 0.0))
    if fam == "laplace":
        return laplace_jumps(kn)
    if fam == "unit":
        return unit_jumps()
    if fam == "pareto":
        return pareto_jumps(kn, d.get("gamma", 1.5))
    raise ValueError(f"unknown jump family {fam!r}")


# --------------------------------------------------------------------------- simulation


def simulate_subordinator(scheme: SubordinatorScheme, grid: TimeGrid,
                          rng: np.random.Generator, n_paths: Optional[int] = None) -> SamplePath:
    """Clock paths on ``grid`` from independent increments."""
    if not scheme.path_capable:
        raise ValueError("ScaledMarginal clocks support only t = 1 (no path simulation)")
    dt = grid.steps
    shape = (dt.size,) if n_paths is None else (n_paths, dt.size)
    inc = scheme.kind.increments(dt, rng, shape)
    values = np.concatenate([np.zeros(shape[:-1] + (1,)), np.cumsum(inc, axis=-1)], axis=-1)
    return SamplePath(grid, values)


def simulate_compound_poisson(jumps: JumpScheme, intensity_path: SamplePath,
                              rng: np.random.Generator) -> SamplePath:
    """Q(t) = Z(L(t)) on the grid of ``intensity_path`` (one path per clock path)."""
    dl = np.diff(intensity_path.values, axis=-1)
    if np.any(dl < 0):
        raise ValueError("the intensity path must be nondecreasing")
    counts = poisson_sample(dl, rng)
    inc = jumps.sums(counts, rng)
    values = np.concatenate([np.zeros(inc.shape[:-1] + (1,)), np.cumsum(inc, axis=-1)], axis=-1)
    return SamplePath(intensity_path.grid, values)


def simulate_cox_path(jumps: JumpScheme, scheme: SubordinatorScheme, grid: TimeGrid,
                      rng: np.random.Generator, n_paths: Optional[int] = None) -> SamplePath:
    return simulate_compound_poisson(jumps, simulate_subordinator(scheme, grid, rng, n_paths), rng)


def simulate_cox_marginal(jumps: JumpScheme, scheme: SubordinatorScheme,
                          rng: np.random.Generator, size=None):
    """Exact draws of Q(1): L(1), then N ~ Poisson(L(1)), then a sum of N jumps."""
    lam = scheme.marginal(rng, size)
    counts = poisson_sample(lam, rng)
    out = jumps.sums(np.atleast_1d(counts), rng)
    return out if size is not None else float(out[0])


def increment_stationarity_check(jumps: JumpScheme, scheme: SubordinatorScheme, t1: float,
                                 t2: float, n_samples: int, rng: np.random.Generator) -> KsReport:
    """Two-sample KS between Q(t2) - Q(t1) and an independent Q(t2 - t1)."""
    if not 0.0 <= t1 < t2 <= 1.0:
        raise ValueError(f"need 0 <= t1 < t2 <= 1, got t1={t1}, t2={t2}")
    grid = TimeGrid.through([t1, t2])
    q = simulate_cox_path(jumps, scheme, grid, rng, n_samples)
    diff = q.at(t2) - q.at(t1)
    h = t2 - t1
    ref = simulate_cox_path(jumps, scheme, TimeGrid.through([h]), rng, n_samples).at(h)
    rep = ks_two_sample(diff, ref, f"Q({h:g})")
    return KsReport(rep.statistic, rep.n_samples, rep.reference, rep.n_reference,
                    extra={"t1": t1, "t2": t2})


def self_similarity_check(scheme: SubordinatorScheme, t: float, n_samples: int,
                          rng: np.random.Generator) -> KsReport:
    """Stable clock: L(t) from simulated paths against t^(1/alpha) L(1), independent draws."""
    kind = scheme.kind
    if not isinstance(kind, StableSub):
        raise TypeError("self-similarity applies to stable clocks")
    lt = simulate_subordinator(scheme, TimeGrid.through([t]), rng, n_samples).at(t)
    ref = t ** (1.0 / kind.alpha) * scheme.marginal(rng, n_samples)
    rep = ks_two_sample(lt, ref, f"t^(1/alpha) L(1), t={t:g}")
    return KsReport(rep.statistic, rep.n_samples, rep.reference, rep.n_reference,
                    extra={"t": t})


def cf_power_check(scheme: SubordinatorScheme, t: float, freqs, n_samples: int,
                   rng: np.random.Generator) -> dict:
    """Compare the empirical CF of L(t) with the t-th power of the empirical CF of L(1).

    Returns per-frequency |difference| and its Monte Carlo standard error
    (delta method for the power).  The principal branch of the power is
    used, so frequencies must keep |arg phi_1| < pi.
    """
    freqs = np.asarray(freqs, dtype=float)
    path = simulate_subordinator(scheme, TimeGrid.through([t]), rng, n_samples)
    lt = path.at(t)
    l1 = scheme.marginal(rng, n_samples)
    phi_t = np.exp(1j * np.multiply.outer(freqs, lt)).mean(axis=1)
    phi_1 = np.exp(1j * np.multiply.outer(freqs, l1)).mean(axis=1)
    if np.any(np.abs(np.angle(phi_1)) > 0.9 * math.pi):
        raise ValueError("frequencies too large for a principal-branch power")
    power = phi_1 ** t
    # E|phi_hat - phi|^2 = (1 - |phi|^2) / n
    var_t = (1.0 - np.abs(phi_t) ** 2) / n_samples
    var_1 = (t * np.abs(phi_1) ** (t - 1.0)) ** 2 * (1.0 - np.abs(phi_1) ** 2) / n_samples
    se = np.sqrt(var_t + var_1)
    diff = np.abs(phi_t - power)
    return {"freqs": freqs.tolist(), "abs_diff": diff.tolist(), "se": se.tolist(),
            "max_z": float(np.max(diff / se))}
