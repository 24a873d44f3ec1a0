"""Scalar numerical kernels: normal CDF, log-gamma, Bessel K, quadrature and
characteristic-function inversion.

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate as _sci_integrate
from scipy.special import erfc

_SQRT2 = math.sqrt(2.0)
_LOG_FLOAT_MAX = math.log(np.finfo(float).max)
_LOG_FLOAT_TINY = math.log(np.finfo(float).tiny)


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance.

    The best estimate and its error bound are kept on the exception so the
    caller can decide whether they are good enough anyway.
    """

    def __init__(self, message: str, estimate, error):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 200

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be > 0")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")

    def tolerance(self, value) -> float:
        return max(self.abs_tol, self.rel_tol * float(np.max(np.abs(value))))


DEFAULT_QUADRATURE = QuadratureSpec()


class CharacteristicFn:
    """Characteristic function s -> E exp(isX) of a real random variable.

    ``fn`` must accept numpy arrays of real frequencies and return complex
    arrays of the same shape.
    """

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray], name: str = "cf"):
        self._fn = fn
        self.name = name

    def __call__(self, s):
        return self._fn(np.asarray(s, dtype=float))

    def __repr__(self):
        return f"CharacteristicFn({self.name})"


# ---------------------------------------------------------------------------
# elementary functions
# ---------------------------------------------------------------------------

def normal_cdf(x):
    """Standard normal distribution function, vectorized over ``x``."""
    out = 0.5 * erfc(-np.asarray(x, dtype=float) / _SQRT2)
    return out if np.ndim(out) else float(out)


def normal_pdf(x):
    x = np.asarray(x, dtype=float)
    return np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def log_gamma(x: float) -> float:
    if not x > 0:
        raise ValueError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


# ---------------------------------------------------------------------------
# modified Bessel function of the third kind
# ---------------------------------------------------------------------------

# K_nu(z) = 1/2 int_R exp(-z cosh u + nu u) du  (y = e^u in the y-integral).
# The integrand is entire and decays double-exponentially, so the trapezoidal
# rule around the saddle point converges geometrically in the step size.
_BESSEL_CUTOFF = 50.0


def _bessel_exponent(u, nu, z):
    with np.errstate(over="ignore"):
        return -z * np.cosh(u) + nu * u


def log_bessel_k(nu: float, z: float) -> float:
    """log K_nu(z) for real ``nu`` and ``z > 0``; never overflows."""
    if not z > 0:
        raise ValueError(f"bessel_k requires z > 0, got {z!r}")
    if not (math.isfinite(nu) and math.isfinite(z)):
        raise ValueError("bessel_k requires finite arguments")
    nu = abs(float(nu))
    z = float(z)
    u_star = math.asinh(nu / z)
    peak = float(_bessel_exponent(u_star, nu, z))
    width = 1.0 / math.sqrt(math.hypot(z, nu))

    def reach(direction):
        d = width
        while _bessel_exponent(u_star + direction * d, nu, z) - peak > -_BESSEL_CUTOFF:
            d *= 2.0
        return d

    left, right = reach(-1.0), reach(1.0)
    step = min(width, 1.0) / 8.0
    n_left = int(math.ceil(left / step))
    n_right = int(math.ceil(right / step))
    u = u_star + step * np.arange(-n_left, n_right + 1)
    terms = np.exp(_bessel_exponent(u, nu, z) - peak)
    return peak + math.log(0.5 * step * math.fsum(terms))


def bessel_k(nu: float, z: float) -> float:
    """Modified Bessel function of the third kind K_nu(z).

    Raises ``OverflowError`` when the value is not representable as a
    positive normal double (roughly z > 705 for small orders, or tiny z with
    large order); use :func:`log_bessel_k` there.
    """
    value = log_bessel_k(nu, z)
    if value > _LOG_FLOAT_MAX:
        raise OverflowError(f"K_{nu}({z}) overflows a double; use log_bessel_k")
    if value < _LOG_FLOAT_TINY:
        raise OverflowError(f"K_{nu}({z}) underflows a double; use log_bessel_k")
    return math.exp(value)


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

def integrate(f: Callable[[float], float], lower: float, upper: float,
              spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Adaptive Gauss-Kronrod integral of a scalar function.

    Infinite endpoints are mapped onto (0, 1] by x = a + (1 - t)/t (or the
    two-sided analogue), as in QUADPACK's QAGI.
    """
    value, err, *rest = _sci_integrate.quad(
        f, lower, upper, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
        limit=spec.max_subdivisions, full_output=1)
    if err > spec.tolerance(value):
        raise QuadratureError(
            f"integral over ({lower}, {upper}) did not converge", value, err)
    return value


def integrate_vec(f: Callable[[float], np.ndarray], lower: float, upper: float,
                  spec: QuadratureSpec = DEFAULT_QUADRATURE, points=None) -> np.ndarray:
    """Adaptive integral of a vector-valued function, one shared mesh.

    ``points`` are extra breakpoints for the initial partition.
    """
    value, err = _sci_integrate.quad_vec(
        f, lower, upper, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
        limit=spec.max_subdivisions, norm="max", points=points)
    if err > spec.tolerance(value):
        raise QuadratureError(
            f"vector integral over ({lower}, {upper}) did not converge", value, err)
    return np.asarray(value)


def integrate_cumulative(f: Callable[[float], float], points,
                         spec: QuadratureSpec = DEFAULT_QUADRATURE) -> np.ndarray:
    """Running integrals int_{points[0]}^{points[i]} f for increasing points.

    Each panel between consecutive points is integrated separately, which
    is far cheaper than one integral per point when the points are dense.
    """
    points = np.asarray(points, dtype=float)
    if np.any(np.diff(points) < 0):
        raise ValueError("points must be nondecreasing")
    panels = [integrate(f, lo, hi, spec) if hi > lo else 0.0
              for lo, hi in zip(points[:-1], points[1:])]
    return np.concatenate([[0.0], np.cumsum(panels)])


# ---------------------------------------------------------------------------
# characteristic-function inversion
# ---------------------------------------------------------------------------

CF_QUADRATURE = QuadratureSpec(rel_tol=1e-10, abs_tol=1e-10, max_subdivisions=2000)
_ENVELOPE = 1e-12


def _envelope_cutoff(cf: CharacteristicFn) -> float:
    s = 1.0
    while abs(cf(s)) / s >= _ENVELOPE:
        s *= 2.0
        if s > 1e12:
            raise QuadratureError("characteristic function does not decay", s, np.inf)
    return s


def cdf_from_cf(cf: CharacteristicFn, x: float,
                spec: QuadratureSpec = CF_QUADRATURE) -> float:
    """Distribution function at ``x`` by Gil-Pelaez inversion.

    F(x) = 1/2 - (1/pi) int_0^inf Im[exp(-isx) cf(s)] / s ds.  The
    non-oscillatory head [0, s1] goes to adaptive quadrature (which copes
    with the integrable s^(alpha-1) singularity at 0); the oscillatory tail
    is summed cycle by cycle with epsilon-algorithm extrapolation (QAWF).
    """
    x = float(x)
    cutoff = _envelope_cutoff(cf)
    head_end = cutoff if x == 0.0 else min(cutoff, 10.0 * math.pi / abs(x))

    def head(s):
        v = complex(cf(s)) * complex(math.cos(s * x), -math.sin(s * x))
        return v.imag / s

    total = integrate(head, 0.0, head_end, spec)
    if head_end < cutoff:
        im_part = _quad_fourier(lambda s: complex(cf(s)).imag / s, head_end, "cos", x, spec)
        re_part = _quad_fourier(lambda s: complex(cf(s)).real / s, head_end, "sin", x, spec)
        total += im_part - re_part
    return min(1.0, max(0.0, 0.5 - total / math.pi))


def _quad_fourier(g, lower, weight, omega, spec):
    value, err, *rest = _sci_integrate.quad(
        g, lower, np.inf, weight=weight, wvar=omega, epsabs=spec.abs_tol,
        limlst=200, limit=spec.max_subdivisions, full_output=1)
    if err > max(spec.abs_tol, spec.rel_tol * abs(value)) * 100:
        raise QuadratureError(f"Fourier tail ({weight}) did not converge", value, err)
    return value
