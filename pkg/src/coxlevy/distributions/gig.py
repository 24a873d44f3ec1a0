"""Generalized inverse Gaussian law GIG(nu, mu, lambda).

Density

    lambda^(nu/2) / (2 mu^(nu/2) K_nu(sqrt(mu lambda))) * x^(nu-1)
        * exp(-(mu/x + lambda x)/2),   x > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaincc, gammaln

from ..special import QuadratureSpec, integrate_cumulative, log_bessel_k


@dataclass(frozen=True)
class GigParams:
    nu: float
    mu: float
    lam: float

    def __post_init__(self):
        nu, mu, lam = self.nu, self.mu, self.lam
        if mu < 0 or lam < 0:
            raise ValueError("GIG requires mu >= 0 and lambda >= 0")
        if nu < 0 and not mu > 0:
            raise ValueError("GIG with nu < 0 requires mu > 0")
        if nu == 0 and not (mu > 0 and lam > 0):
            raise ValueError("GIG with nu = 0 requires mu > 0 and lambda > 0")
        if nu > 0 and not lam > 0:
            raise ValueError("GIG with nu > 0 requires lambda > 0")

    @property
    def kind(self) -> str:
        if self.mu == 0:
            return "gamma"
        if self.lam == 0:
            return "inverse-gamma"
        return "gig"

    @property
    def omega(self) -> float:
        return math.sqrt(self.mu * self.lam)

    @property
    def eta(self) -> float:
        return math.sqrt(self.mu / self.lam)

    def mean(self) -> float:
        if self.kind == "gamma":
            return 2.0 * self.nu / self.lam
        if self.kind == "inverse-gamma":
            return self.mu / (2.0 * (-self.nu - 1.0)) if self.nu < -1 else math.inf
        w = self.omega
        return self.eta * math.exp(log_bessel_k(self.nu + 1, w) - log_bessel_k(self.nu, w))


def gig_log_density(p: GigParams, x):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("GIG density is defined for x > 0")
    if p.kind == "gamma":
        # shape nu, rate lambda/2
        rate = 0.5 * p.lam
        return p.nu * math.log(rate) - gammaln(p.nu) + (p.nu - 1) * np.log(x) - rate * x
    if p.kind == "inverse-gamma":
        # 1/X ~ gamma(shape -nu, rate mu/2)
        k, rate = -p.nu, 0.5 * p.mu
        return k * math.log(rate) - gammaln(k) - (k + 1) * np.log(x) - rate / x
    log_norm = (0.5 * p.nu * (math.log(p.lam) - math.log(p.mu)) - math.log(2.0)
                - log_bessel_k(p.nu, p.omega))
    return log_norm + (p.nu - 1) * np.log(x) - 0.5 * (p.mu / x + p.lam * x)


def gig_density(p: GigParams, x):
    out = np.exp(gig_log_density(p, x))
    return out if out.ndim else float(out)


_CDF_QUAD = QuadratureSpec(rel_tol=1e-11, abs_tol=1e-13, max_subdivisions=400)


def gig_cdf(p: GigParams, x):
    """P(X <= x), vectorized over ``x``.

    Incomplete gamma on the gamma / inverse-gamma boundaries; inside the
    domain the density is integrated in log x (mass can spread over many
    decades when omega is small), panel by panel between sorted points.
    """
    xs = np.asarray(x, dtype=float)
    if p.kind == "gamma":
        out = gammainc(p.nu, 0.5 * p.lam * np.maximum(xs, 0.0))
    elif p.kind == "inverse-gamma":
        with np.errstate(divide="ignore"):
            out = np.where(xs > 0, gammaincc(-p.nu, 0.5 * p.mu / np.where(xs > 0, xs, 1.0)), 0.0)
    else:
        out = _gig_cdf_quadrature(p, xs)
    return out if np.ndim(out) else float(out)


def _gig_cdf_quadrature(p: GigParams, xs: np.ndarray) -> np.ndarray:
    log_norm = (0.5 * p.nu * (math.log(p.lam) - math.log(p.mu)) - math.log(2.0)
                - log_bessel_k(p.nu, p.omega))
    nu, mu, lam = p.nu, p.mu, p.lam

    def g(w):
        u = math.exp(w)
        return math.exp(log_norm + nu * w - 0.5 * (mu / u + lam * u))

    flat = xs.ravel()
    order = np.argsort(flat)
    lo = _log_lower_edge(p)
    mode = math.log(gig_mode(p))
    with np.errstate(divide="ignore"):
        w = np.log(np.where(flat[order] > 0, flat[order], 0.0))
    w = np.maximum(w, lo)
    # the mode is an extra panel boundary so no panel straddles the peak
    pts = np.concatenate([[lo], w])
    ins = int(np.searchsorted(pts, mode))
    pts = np.insert(pts, ins, mode)
    cum = integrate_cumulative(g, pts, _CDF_QUAD)
    cum = np.delete(cum, ins)[1:]
    out = np.empty_like(flat)
    out[order] = np.clip(cum, 0.0, 1.0)
    return out.reshape(xs.shape)


def gig_mode(p: GigParams) -> float:
    if p.kind == "gamma":
        return max(2.0 * (p.nu - 1.0) / p.lam, 1e-300) if p.nu > 1 else 1e-300
    if p.kind == "inverse-gamma":
        return p.mu / (2.0 * (1.0 - p.nu))
    return p.eta * _std_mode(p.nu, p.omega)


def _log_lower_edge(p: GigParams) -> float:
    # below this point the log-scale integrand is < 1e-40 of its peak
    mode = math.log(gig_mode(p))
    peak = float(gig_log_density(p, math.exp(mode))) + mode
    w = mode - 1.0
    while float(gig_log_density(p, math.exp(w))) + w - peak > -92.0:
        w -= 2.0 * (mode - w)
    return w


# ---------------------------------------------------------------------------
# sampling: two-parameter form f(y) ~ y^(p-1) exp(-omega (y + 1/y) / 2), p >= 0
# ---------------------------------------------------------------------------

def _std_mode(p: float, omega: float) -> float:
    # root of omega y^2 - 2(p - 1) y - omega, in a cancellation-free form
    if p >= 1.0:
        return ((p - 1.0) + math.sqrt((p - 1.0) ** 2 + omega ** 2)) / omega
    return omega / ((1.0 - p) + math.sqrt((1.0 - p) ** 2 + omega ** 2))


def _log_f(y, p, omega):
    return (p - 1.0) * np.log(y) - 0.5 * omega * (y + 1.0 / y)


def _fill(draw, size: int, rng) -> np.ndarray:
    """Collect ``size`` accepted values from a vectorized rejection step."""
    out = np.empty(size)
    filled = 0
    while filled < size:
        batch = draw(rng, max(64, int(1.25 * (size - filled)) + 16))
        take = min(len(batch), size - filled)
        out[filled:filled + take] = batch[:take]
        filled += take
    return out


def _rou_shifted(p: float, omega: float):
    """Ratio-of-uniforms with mode shift and minimal bounding rectangle."""
    m = _std_mode(p, omega)
    lfm = _log_f(m, p, omega)
    a = -2.0 * (p + 1.0) / omega - m
    b = 2.0 * (p - 1.0) * m / omega - 1.0
    roots = np.roots([1.0, a, b, m])
    roots = np.sort(roots[np.abs(roots.imag) < 1e-9 * (1 + np.abs(roots.real))].real)
    x_minus = roots[(roots > 0) & (roots < m)].max()
    x_plus = roots[roots > m].min()
    u_minus = (x_minus - m) * math.exp(0.5 * (_log_f(x_minus, p, omega) - lfm))
    u_plus = (x_plus - m) * math.exp(0.5 * (_log_f(x_plus, p, omega) - lfm))

    def draw(rng, k):
        u = rng.uniform(u_minus, u_plus, k)
        v = rng.uniform(0.0, 1.0, k)
        ok = v > 0
        x = np.where(ok, u / np.where(ok, v, 1.0) + m, 0.0)
        ok &= x > 0
        ok[ok] = 2.0 * np.log(v[ok]) <= _log_f(x[ok], p, omega) - lfm
        return x[ok]

    return draw


def _rou_plain(p: float, omega: float):
    """Ratio-of-uniforms without shift (0 <= p <= 1, moderate omega)."""
    m = _std_mode(p, omega)
    lfm = _log_f(m, p, omega)
    x_plus = ((p + 1.0) + math.sqrt((p + 1.0) ** 2 + omega ** 2)) / omega
    u_plus = x_plus * math.exp(0.5 * (_log_f(x_plus, p, omega) - lfm))

    def draw(rng, k):
        u = rng.uniform(0.0, u_plus, k)
        v = rng.uniform(0.0, 1.0, k)
        ok = v > 0
        x = np.where(ok, u / np.where(ok, v, 1.0), 0.0)
        ok &= x > 0
        ok[ok] = 2.0 * np.log(v[ok]) <= _log_f(x[ok], p, omega) - lfm
        return x[ok]

    return draw


def _hat_small_omega(p: float, omega: float):
    """Rejection from a three-piece hat for 0 <= p < 1 and small omega.

    Hat: f(m) on (0, x0]; e^-omega y^(p-1) on (x0, 2/omega];
    x*^(p-1) exp(-omega y / 2) beyond x* = max(x0, 2/omega).
    """
    m = _std_mode(p, omega)
    x0 = omega / (1.0 - p)
    x_star = max(x0, 2.0 / omega)
    k1 = math.exp(_log_f(m, p, omega))
    a1 = k1 * x0
    if x0 < 2.0 / omega:
        k2 = math.exp(-omega)
        if p == 0.0:
            a2 = k2 * math.log(2.0 / omega ** 2)
        else:
            a2 = k2 * ((2.0 / omega) ** p - x0 ** p) / p
    else:
        k2, a2 = 0.0, 0.0
    k3 = x_star ** (p - 1.0)
    a3 = 2.0 * k3 * math.exp(-0.5 * x_star * omega) / omega
    total = a1 + a2 + a3

    def draw(rng, k):
        u = rng.uniform(0.0, 1.0, k)
        v = rng.uniform(0.0, total, k)
        x = np.empty(k)
        h = np.empty(k)
        r1 = v <= a1
        r2 = (~r1) & (v <= a1 + a2)
        r3 = ~(r1 | r2)
        x[r1] = x0 * v[r1] / a1
        h[r1] = k1
        if np.any(r2):
            w = v[r2] - a1
            if p == 0.0:
                x[r2] = omega * np.exp(w * math.exp(omega))
            else:
                x[r2] = (x0 ** p + w * p / k2) ** (1.0 / p)
            h[r2] = k2 * x[r2] ** (p - 1.0)
        w = v[r3] - (a1 + a2)
        x[r3] = -2.0 / omega * np.log(math.exp(-0.5 * x_star * omega) - 0.5 * w * omega / k3)
        h[r3] = k3 * np.exp(-0.5 * omega * x[r3])
        ok = (x > 0) & np.isfinite(x)
        ok[ok] = u[ok] * h[ok] <= np.exp(_log_f(x[ok], p, omega))
        return x[ok]

    return draw


def _std_sampler(p: float, omega: float):
    if p > 1.0 or omega > 1.0:
        return _rou_shifted(p, omega)
    if omega >= min(0.5, 2.0 / 3.0 * math.sqrt(1.0 - p)):
        return _rou_plain(p, omega)
    return _hat_small_omega(p, omega)


def gig_sample(p: GigParams, rng: np.random.Generator, size=None):
    """Exact GIG draws.

    Gamma / inverse-gamma boundaries use the gamma sampler.  Inside the
    domain the two-parameter law with index |nu| is sampled by one of three
    rejection schemes (chosen by index and omega = sqrt(mu lambda)), then
    inverted when nu < 0 and scaled by sqrt(mu / lambda).
    """
    n = 1 if size is None else int(np.prod(size))
    if p.kind == "gamma":
        out = rng.gamma(p.nu, 2.0 / p.lam, n)
    elif p.kind == "inverse-gamma":
        out = 1.0 / rng.gamma(-p.nu, 2.0 / p.mu, n)
    else:
        y = _fill(_std_sampler(abs(p.nu), p.omega), n, rng)
        if p.nu < 0:
            y = 1.0 / y
        out = p.eta * y
    if size is None:
        return float(out[0])
    return out.reshape(size)
