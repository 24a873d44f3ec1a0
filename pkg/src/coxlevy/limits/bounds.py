"""Monte Carlo verification of the small-increment and tightness inequalities.

Empirical probabilities come from direct path simulation; the bounds come
from arithmetic on the declared certificate and jump moments only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import partial
from typing import Sequence

import numpy as np
from scipy.stats import binom, poisson

from ..processes import (Deterministic, JumpScheme, SubordinatorScheme, TimeGrid,
                         simulate_cox_path)
from .conditions import condition_18_constant
from .parallel import sample_blocks, seed_of
from .reports import FAIL, PASS, Report

N_SE = 3.0
REL_SLACK = 1e-12  # float rounding on bounds attained with equality


def moment_tail_bound(jumps: JumpScheme, scheme: SubordinatorScheme, eps: float, t: float) -> float:
    """(eps^-beta m^beta)^delta (C_n t)^delta1."""
    c = scheme.certificate
    return (eps ** -jumps.beta * jumps.abs_moment) ** c.delta * (c.c_n * t) ** c.delta1


def rademacher_tail_exact(rate: float, step: float, eps: float, max_count: int = 50) -> float:
    """P(|step * (2B - N)| >= eps) for N ~ Poisson(rate), B ~ Bin(N, 1/2).

    Enumerates N = 0..max_count; the omitted Poisson tail mass is returned
    as part of the error budget by :func:`rademacher_tail_error`.
    """
    k = math.ceil(eps / step - 1e-12)
    total = 0.0
    for n in range(max_count + 1):
        b = np.arange(n + 1)
        hit = np.abs(2 * b - n) >= k
        total += poisson.pmf(n, rate) * binom.pmf(b[hit], n, 0.5).sum()
    return float(total)


def rademacher_tail_error(rate: float, max_count: int = 50) -> float:
    return float(poisson.sf(max_count, rate))


def _q_at(jumps, scheme, ts, rng, size):
    grid = TimeGrid.through(ts)
    path = simulate_cox_path(jumps, scheme, grid, rng, size)
    return np.stack([path.at(t) for t in ts], axis=1)


def _exact_cell(jumps: JumpScheme, scheme: SubordinatorScheme):
    """Exact tail function when the clock is deterministic and jumps are symmetric +-h."""
    if isinstance(scheme.kind, Deterministic) and jumps.name == "rademacher" and jumps.mean == 0:
        h = math.sqrt(jumps.variance)
        slope = scheme.kind.slope
        return lambda eps, t: rademacher_tail_exact(slope * t, h, eps)
    return None


def check_lemma3_bound(jumps: JumpScheme, scheme: SubordinatorScheme, eps_grid: Sequence[float],
                       t_grid: Sequence[float], n_samples: int, rng, *, workers: int = 1,
                       name: str = "moment-bound") -> Report:
    """P(|Q(t)| >= eps) against the moment bound on an (eps, t) grid.

    PASS iff empirical probability - 3 binomial SE <= bound in every cell.
    With a deterministic clock and symmetric two-point jumps the exact
    probability is enumerated and reported per cell as a cross-check.
    """
    if scheme.certificate is None:
        raise ValueError("the clock carries no (delta, delta1, C_n) certificate")
    ts = sorted(float(t) for t in t_grid)
    if any(not 0.0 < t <= 1.0 for t in ts):
        raise ValueError("times must lie in (0, 1]")
    seed = seed_of(rng)
    q = sample_blocks(partial(_q_at, jumps, scheme, ts), n_samples, seed, (0,), workers)
    exact = _exact_cell(jumps, scheme)
    rows, ok = [], True
    for eps in eps_grid:
        for j, t in enumerate(ts):
            hit = np.abs(q[:, j]) >= eps
            p = float(hit.mean())
            se = math.sqrt(p * (1.0 - p) / n_samples)
            bound = moment_tail_bound(jumps, scheme, eps, t)
            cell_ok = bool(p - N_SE * se <= bound * (1 + REL_SLACK))
            ok &= cell_ok
            row = {"eps": float(eps), "t": t, "probability": p, "se": se, "bound": bound,
                   "margin": bound - (p - N_SE * se), "pass": cell_ok}
            if exact is not None:
                row["exact"] = exact(eps, t)
                row["exact_z"] = (p - row["exact"]) / se if se > 0 else 0.0
            rows.append(row)
    margins = {"min_margin": min(r["margin"] for r in rows)}
    if exact is not None:
        margins["max_abs_exact_z"] = max(abs(r["exact_z"]) for r in rows)
    params = {"jumps": jumps.describe(), "clock": scheme.describe(), "eps_grid": list(eps_grid),
              "t_grid": ts, "n_samples": n_samples, "seed": seed}
    return Report(name, params, PASS if ok else FAIL, rows, margins, rows_key="cells")


@dataclass(frozen=True)
class TightnessParams:
    """Constants of the quadratic-increment bound.

    K is the stabilizing constant (see :func:`condition_18_constant`).
    ``delta`` and ``gamma`` (= delta1) come from the clock certificate and
    ``beta_delta`` is beta * delta.
    """

    K: float
    delta: float
    beta_delta: float
    gamma: float

    def __post_init__(self):
        if not self.gamma > 0.5:
            raise ValueError(f"tightness exponent gamma must exceed 1/2, got {self.gamma}")
        if not self.K >= 0:
            raise ValueError(f"K must be >= 0, got {self.K}")
        if not 0.0 < self.delta <= 1.0 or not self.beta_delta > 0:
            raise ValueError("need delta in (0,1] and beta*delta > 0")

    @classmethod
    def from_schemes(cls, jumps: JumpScheme, scheme: SubordinatorScheme) -> "TightnessParams":
        c = scheme.certificate
        return cls(condition_18_constant(jumps, scheme), c.delta, jumps.beta * c.delta, c.delta1)

    def modulus(self, t):
        return 0.5 * self.K * np.asarray(t, dtype=float)

    def bound(self, eps: float, t1: float, t2: float) -> float:
        """(K eps^-beta)^(2 delta) ((t2 - t1)/2)^(2 gamma).

        Product of the two one-interval bounds with (t - t1)(t2 - t) <= (t2 - t1)^2 / 4.
        """
        return (self.K ** (2 * self.delta) * eps ** (-2 * self.beta_delta)
                * (0.5 * (t2 - t1)) ** (2 * self.gamma))

    def modulus_bound(self, eps: float, t1: float, t2: float) -> float:
        """eps^(-2 beta delta) F(t2 - t1)^(2 gamma) with F(t) = K t / 2.

        Agrees with :meth:`bound` when K = 1 or delta = gamma.
        """
        return eps ** (-2 * self.beta_delta) * float(self.modulus(t2 - t1)) ** (2 * self.gamma)


def _increments(jumps, scheme, triples, rng, size):
    ts = sorted({t for tr in triples for t in tr if t > 0})
    grid = TimeGrid.through(ts)
    path = simulate_cox_path(jumps, scheme, grid, rng, size)
    cols = []
    for t1, t, t2 in triples:
        q1 = path.at(t1) if t1 > 0 else 0.0
        cols.append(path.at(t) - q1)
        cols.append(path.at(t2) - path.at(t))
    return np.stack(cols, axis=1)


def check_tightness_bound(jumps: JumpScheme, scheme: SubordinatorScheme, tp: TightnessParams,
                          triples: Sequence[tuple], eps: float, n_samples: int, rng, *,
                          workers: int = 1, name: str = "tightness") -> Report:
    """Joint increment probability against the tightness bound, plus independence.

    For each (t1, t, t2): J = P(|Q(t)-Q(t1)| >= eps, |Q(t2)-Q(t)| >= eps).
    PASS iff J - 3 SE <= bound for every triple and J agrees with the
    product of the two marginal probabilities within 3 SE (delta method).
    """
    triples = [tuple(float(v) for v in tr) for tr in triples]
    for t1, t, t2 in triples:
        if not 0.0 <= t1 <= t <= t2 <= 1.0:
            raise ValueError(f"need 0 <= t1 <= t <= t2 <= 1, got {(t1, t, t2)}")
    seed = seed_of(rng)
    inc = sample_blocks(partial(_increments, jumps, scheme, triples), n_samples, seed, (0,),
                        workers)
    exact = _exact_cell(jumps, scheme)
    rows, ok_bound, ok_fact = [], True, True
    for i, (t1, t, t2) in enumerate(triples):
        a = (np.abs(inc[:, 2 * i]) >= eps).astype(float)
        b = (np.abs(inc[:, 2 * i + 1]) >= eps).astype(float)
        pa, pb = a.mean(), b.mean()
        joint = float((a * b).mean())
        se = math.sqrt(joint * (1.0 - joint) / n_samples)
        bound = tp.bound(eps, t1, t2)
        # influence function of mean(ab) - mean(a) mean(b)
        infl = a * b - pb * a - pa * b
        se_fact = float(infl.std(ddof=1) / math.sqrt(n_samples))
        gap = joint - pa * pb
        b_ok = bool(joint - N_SE * se <= bound * (1 + REL_SLACK))
        f_ok = bool(abs(gap) <= N_SE * se_fact if se_fact > 0 else gap == 0)
        ok_bound &= b_ok
        ok_fact &= f_ok
        row = {"t1": t1, "t": t, "t2": t2, "joint": joint, "se": se, "bound": bound,
               "modulus_bound": tp.modulus_bound(eps, t1, t2),
               "margin": bound - (joint - N_SE * se), "product": float(pa * pb),
               "factorization_gap": float(gap), "factorization_se": se_fact,
               "pass": b_ok and f_ok}
        if exact is not None:
            row["exact"] = exact(eps, t - t1) * exact(eps, t2 - t) if t > t1 and t2 > t else 0.0
        rows.append(row)
    verdict = PASS if ok_bound and ok_fact else FAIL
    margins = {"min_margin": min(r["margin"] for r in rows), "bound_ok": ok_bound,
               "factorization_ok": ok_fact}
    params = {"jumps": jumps.describe(), "clock": scheme.describe(), "eps": eps,
              "triples": [list(tr) for tr in triples], "K": tp.K, "delta": tp.delta,
              "beta_delta": tp.beta_delta, "gamma": tp.gamma, "n_samples": n_samples,
              "seed": seed}
    return Report(name, params, verdict, rows, margins, rows_key="cells")
