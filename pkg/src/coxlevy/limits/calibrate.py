"""Regenerate ``_constants.py``: scale calibrations of limit laws, by quadrature.

Run ``python -m coxlevy.limits.calibrate`` to rewrite the file.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from ..special import QuadratureSpec, integrate

_SPEC = QuadratureSpec(rel_tol=1e-13, abs_tol=1e-15, max_subdivisions=500)
FREQS = (0.25, 0.5, 1.0, 2.0, 4.0)


def levy_density(u: float) -> float:
    """Density of the one-sided 1/2-stable law (Laplace transform exp(-sqrt(z)))."""
    return u ** -1.5 * math.exp(-0.25 / u) / (2.0 * math.sqrt(math.pi))


def rademacher_mixture_cf(s: float) -> float:
    """E exp(-U s^2 / 2), U one-sided 1/2-stable, by quadrature over w = log u.

    This is the unit-time CF of the limit of sums of +-kn^(-1/2) jumps counted
    by Poisson(kn U): the jump variance times kn is 1, hence the s^2/2.
    """
    def f(w):
        u = math.exp(w)
        return math.exp(-0.5 * u * s * s) * levy_density(u) * u
    return integrate(f, -40.0, 60.0, _SPEC)


def cauchy_arctan_factor() -> tuple[float, float]:
    """c with E exp(isX) = exp(-|s|/c); returns (mean over FREQS, max deviation)."""
    cs = np.array([s / -math.log(rademacher_mixture_cf(s)) for s in FREQS])
    return float(cs.mean()), float(np.max(np.abs(cs - cs.mean())))


def render() -> str:
    c, spread = cauchy_arctan_factor()
    return (
        '"""Generated by coxlevy.limits.calibrate; do not edit by hand."""\n\n'
        "# Rademacher -> Cauchy experiment: the limit CDF is 1/2 + arctan(c x)/pi.\n"
        "# c = |s| / -log E exp(-U s^2/2), U one-sided 1/2-stable, evaluated by\n"
        f"# quadrature at s in {FREQS}; spread across s: {spread:.3e}.\n"
        f"CAUCHY_ARCTAN_FACTOR = {c!r}\n"
        f"CAUCHY_ARCTAN_FACTOR_SPREAD = {spread!r}\n")


def main(path=None) -> Path:
    path = Path(path) if path else Path(__file__).with_name("_constants.py")
    path.write_text(render())
    return path


if __name__ == "__main__":
    print(main())
