"""Strictly stable laws in the (alpha, theta) parametrization.

The characteristic function is

    g(s) = exp(-|s|^alpha * exp(-i*pi*theta*alpha*sign(s)/2)),

with 0 < alpha <= 2 and |theta| <= min(1, 2/alpha - 1).  theta = 0 gives the
symmetric laws, theta = 1 with alpha <= 1 the laws on the positive half-line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from ..special import CharacteristicFn, QuadratureSpec, integrate_cumulative, normal_cdf

_EDGE = 1e-12
_CONDITIONAL_QUAD = QuadratureSpec(rel_tol=1e-11, abs_tol=1e-10, max_subdivisions=500)


@dataclass(frozen=True)
class StableParams:
    alpha: float
    theta: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 2.0:
            raise ValueError(f"alpha must lie in (0,2], got {self.alpha}")
        if abs(self.theta) > self.theta_max + _EDGE:
            raise ValueError(
                f"|theta| must not exceed min(1, 2/alpha - 1) = {self.theta_max:.6g} "
                f"for alpha={self.alpha}, got theta={self.theta}")

    @property
    def theta_max(self) -> float:
        return min(1.0, 2.0 / self.alpha - 1.0)

    @property
    def one_sided(self) -> bool:
        return self.theta == 1.0 and self.alpha <= 1.0

    @property
    def degenerate(self) -> bool:
        # g_{1,1}(s) = exp(is): point mass at 1
        return self.alpha == 1.0 and abs(self.theta) == 1.0

    def cf(self) -> CharacteristicFn:
        return CharacteristicFn(lambda s: stable_cf(self, s),
                                f"g[{self.alpha:g},{self.theta:g}]")


def stable_cf(p: StableParams, s):
    s = np.asarray(s, dtype=float)
    rot = np.exp(-0.5j * math.pi * p.theta * p.alpha * np.sign(s))
    out = np.exp(-np.abs(s) ** p.alpha * rot)
    return out if out.ndim else complex(out)


def stable_to_s1(p: StableParams) -> tuple[float, float, float]:
    """(beta, scale, location) of the same law in the S1 parametrization.

    S1: log E exp(isX) = -scale^a |s|^a (1 - i beta sign(s) tan(pi a / 2)) + i loc s
    for a != 1.  Strictly 1-stable laws are shifted Cauchy laws.
    """
    a, th = p.alpha, p.theta
    half = 0.5 * math.pi * th * a
    if a == 1.0:
        return 0.0, math.cos(half), math.sin(half)
    if a == 2.0:
        return 0.0, 1.0, 0.0
    beta = math.tan(half) / math.tan(0.5 * math.pi * a)
    return beta, math.cos(half) ** (1.0 / a), 0.0


def stable_sample(p: StableParams, rng: np.random.Generator, size=None):
    """Exact draws from G_{alpha,theta} (Chambers-Mallows-Stuck).

    In the (alpha, theta) parametrization the CMS transform needs no scale
    correction:

        X = sin(a V + c) / cos(V)^(1/a) * (cos((1-a) V - c) / W)^((1-a)/a),

    c = pi*theta*a/2, V ~ U(-pi/2, pi/2), W ~ Exp(1).  At a = 1 this is
    cos(c) tan(V) + sin(c), the strictly 1-stable (shifted Cauchy) law.
    """
    a = p.alpha
    c = 0.5 * math.pi * p.theta * a
    v = rng.uniform(-0.5 * math.pi, 0.5 * math.pi, size)
    w = rng.standard_exponential(size)
    if a == 1.0:
        return math.cos(c) * np.tan(v) + math.sin(c)
    with np.errstate(divide="ignore", over="ignore"):
        out = (np.sin(a * v + c) / np.cos(v) ** (1.0 / a)
               * (np.cos((1.0 - a) * v - c) / w) ** ((1.0 - a) / a))
    return out


def stable_sample_via_mixture(alpha: float, rng: np.random.Generator, size=None):
    """Symmetric stable draws as a normal scale mixture, sqrt(2 V) * N.

    V ~ G_{alpha/2,1} has Laplace transform exp(-lam^(alpha/2)), hence
    E exp(isX) = E exp(-s^2 V) = exp(-|s|^alpha).  (Mixing N(0, V) without
    the factor 2 gives the law of Z_{alpha,0} / sqrt(2).)
    """
    if not 0.0 < alpha < 2.0:
        raise ValueError(f"alpha must lie in (0,2) for the mixture route, got {alpha}")
    v = stable_sample(StableParams(alpha / 2.0, 1.0), rng, size)
    return np.sqrt(2.0 * v) * rng.standard_normal(size)


def one_sided_moment(alpha: float, rho: float) -> float:
    """E Z^rho for Z ~ G_{alpha,1}, 0 < alpha < 1, rho < alpha."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"one-sided stable needs alpha in (0,1), got {alpha}")
    if rho >= alpha:
        return math.inf
    return math.gamma(1.0 - rho / alpha) / math.gamma(1.0 - rho)


def _conditional_cdf(alpha: float, theta: float, x: float) -> float:
    """G_{alpha,theta}(x) for x > 0 and alpha not in {1, 2}.

    Conditioning the CMS transform on V leaves an exponential variable, so

        P(X > x | V = v) = 1 - exp(-h(v) x^(-k))  (alpha < 1)
                         = exp(-h(v) x^(-k))      (alpha > 1)

    on {sin(alpha v + c) > 0}, with k = alpha/(1 - alpha) and
    h = sin(alpha v + c)^k cos((1-alpha) v - c) / cos(v)^(1/(1-alpha)).
    The remaining integral over v is smooth and does not oscillate.
    """
    a = alpha
    c = 0.5 * math.pi * theta * a
    lo = max(-0.5 * math.pi, -c / a)
    hi = min(0.5 * math.pi, (math.pi - c) / a)
    below = (math.pi - max(hi - lo, 0.0)) / math.pi  # P(X <= 0)
    if hi <= lo:
        return 1.0
    k = a / (1.0 - a)
    shift = k * math.log(x)

    def log_exponent(v):
        sv, qv, cv = math.sin(a * v + c), math.cos((1.0 - a) * v - c), math.cos(v)
        if sv <= 0.0 or qv <= 0.0 or cv <= 0.0:
            # rounding at an end of (lo, hi): take the one-sided limit
            if sv <= 0.0:
                return -math.inf if k > 0 else math.inf
            if cv <= 0.0:
                return math.inf if a < 1.0 else -math.inf
            return -math.inf
        return k * math.log(sv) + math.log(qv) - math.log(cv) / (1.0 - a) - shift

    # conditional P(0 < X <= x | v) and P(X > x | v)
    def inside(v):
        e = math.exp(min(log_exponent(v), 700.0))
        return math.exp(-e) if a < 1.0 else -math.expm1(-e)

    def outside(v):
        e = math.exp(min(log_exponent(v), 700.0))
        return -math.expm1(-e) if a < 1.0 else math.exp(-e)

    # panel edges: a coarse partition plus the crossings of the exponent
    # through a few levels, where the integrand changes fastest.  Extreme x
    # push the crossings toward the ends, hence the geometric clustering.
    ends = np.geomspace(1e-13, 1e-2, 12)
    u = np.concatenate([ends, np.linspace(0.0, 1.0, 33)[1:-1], 1.0 - ends[::-1]])
    inner = lo + (hi - lo) * u
    levels = np.array([log_exponent(v) for v in inner])
    edges = list(np.linspace(lo, hi, 9))
    for target in (-4.0, 0.0, 3.0):
        d = levels - target
        for i in np.nonzero(np.sign(d[:-1]) != np.sign(d[1:]))[0]:
            u, w = inner[i], inner[i + 1]
            for _ in range(60):
                mid = 0.5 * (u + w)
                if np.sign(log_exponent(mid) - target) == np.sign(d[i]):
                    u = mid
                else:
                    w = mid
            edges.append(0.5 * (u + w))
    edges = np.unique(edges)
    f = below + integrate_cumulative(inside, edges, _CONDITIONAL_QUAD)[-1] / math.pi
    if f <= 0.5:
        return f
    return 1.0 - integrate_cumulative(outside, edges, _CONDITIONAL_QUAD)[-1] / math.pi


def stable_cdf(p: StableParams, x: float) -> float:
    """G_{alpha,theta}(x); closed forms where they exist, otherwise a
    non-oscillatory integral over the angle of the CMS transform."""
    x = float(x)
    if p.alpha == 2.0:
        return normal_cdf(x / math.sqrt(2.0))
    if p.alpha == 1.0:
        _, scale, loc = stable_to_s1(p)
        if p.degenerate:
            return 1.0 if x >= loc else 0.0
        return 0.5 + math.atan((x - loc) / scale) / math.pi
    if p.alpha == 0.5 and p.theta == 1.0:
        return float(erfc(0.5 / math.sqrt(x))) if x > 0 else 0.0
    if p.one_sided and x <= 0:
        return 0.0
    if x == 0.0:
        return 0.5 * (1.0 - p.theta)
    if x > 0.0:
        return _conditional_cdf(p.alpha, p.theta, x)
    # -X has law G_{alpha,-theta}
    return 1.0 - _conditional_cdf(p.alpha, -p.theta, -x)
