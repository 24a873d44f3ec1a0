"""Checkable forms of the moment conditions on the clock and the jump array."""

from __future__ import annotations

import math
from functools import partial
from typing import Callable, Sequence

import numpy as np

from ..processes import (JumpScheme, ScaledMarginal, SubordinatorScheme, TimeGrid,
                         simulate_subordinator)
from .parallel import sample_blocks, seed_of
from .reports import FAIL, PASS, Report

N_SE = 3.0
REL_SLACK = 1e-12  # float rounding on bounds attained with equality


def _clock_draw(scheme: SubordinatorScheme, delta: float, ts, rng, size):
    """Columns L(t)^delta for each t in ts, one row per draw."""
    if isinstance(scheme.kind, ScaledMarginal):
        return (scheme.marginal(rng, size) ** delta)[:, None]
    path = simulate_subordinator(scheme, TimeGrid.through(ts), rng, size)
    return np.stack([path.at(t) ** delta for t in ts], axis=1)


def check_condition_6(scheme: SubordinatorScheme, t_grid: Sequence[float], n_samples: int,
                      rng, *, workers: int = 1, name: str = "clock-moment") -> Report:
    """Monte Carlo test of E L^delta(t) <= (C_n t)^delta1 on ``t_grid``.

    PASS iff estimate - 3 SE <= bound at every t.  For clocks with a known
    moment the exact value is reported next to the estimate.  ScaledMarginal
    clocks are only checked at t = 1.
    """
    cert = scheme.certificate
    if cert is None:
        raise ValueError("the clock carries no (delta, delta1, C_n) certificate")
    ts = [float(t) for t in t_grid]
    if any(not 0.0 < t <= 1.0 for t in ts):
        raise ValueError("condition times must lie in (0, 1]")
    if isinstance(scheme.kind, ScaledMarginal):
        ts = [1.0]
    seed = seed_of(rng)
    draws = sample_blocks(partial(_clock_draw, scheme, cert.delta, ts), n_samples, seed,
                          (0,), workers)
    rows, ok = [], True
    for j, t in enumerate(ts):
        v = draws[:, j]
        est, se = float(v.mean()), float(v.std(ddof=1) / math.sqrt(len(v)))
        bound = float(cert.bound(t))
        try:
            exact = float(scheme.kind.moment(cert.delta, t))
        except (AttributeError, NotImplementedError):
            exact = None
        cell_ok = bool(est - N_SE * se <= bound * (1 + REL_SLACK))
        ok &= cell_ok
        rows.append({"t": t, "estimate": est, "se": se, "bound": bound, "exact": exact,
                     "margin": bound - (est - N_SE * se), "pass": cell_ok})
    return Report(name, {"clock": scheme.describe(), "n_samples": n_samples, "seed": seed,
                         "t_grid": ts},
                  PASS if ok else FAIL, rows, {"min_margin": min(r["margin"] for r in rows)},
                  rows_key="cells")


def check_condition_24(jump_family: Callable[[float], JumpScheme], kn_values: Sequence[float],
                       eps: float, a: float, sigma2: float, *, rtol: float = 1e-6,
                       lindeberg_tol: float = 1e-6, name: str = "jump-moments",
                       expected: str = PASS) -> Report:
    """kn a_n -> a, kn sigma_n^2 -> sigma^2 and the Lindeberg term -> 0.

    Convergence is judged on the last two kn values, each of which must be
    within ``rtol`` (relative) of the targets, with Lindeberg term at most
    ``lindeberg_tol``.  An infinite variance fails outright.
    """
    rows = []
    for kn in kn_values:
        j = jump_family(kn)
        lind = j.lindeberg(eps) if j.lindeberg is not None else math.nan
        rows.append({"kn": kn, "kn_a_n": kn * j.mean, "kn_sigma2_n": kn * j.variance,
                     "lindeberg": lind})

    def close(x, target):
        return math.isfinite(x) and abs(x - target) <= rtol * max(1.0, abs(target))

    tail = rows[-2:]
    ok_a = all(close(r["kn_a_n"], a) for r in tail)
    ok_s = all(close(r["kn_sigma2_n"], sigma2) for r in tail)
    ok_l = all(math.isfinite(r["lindeberg"]) and r["lindeberg"] <= lindeberg_tol for r in tail)
    verdict = PASS if ok_a and ok_s and ok_l else FAIL
    last = rows[-1]
    margins = {"a_error": abs(last["kn_a_n"] - a), "sigma2_error": abs(last["kn_sigma2_n"] - sigma2),
               "lindeberg_last": last["lindeberg"], "mean_ok": ok_a, "variance_ok": ok_s,
               "lindeberg_ok": ok_l}
    params = {"eps": eps, "a": a, "sigma2": sigma2, "rtol": rtol, "lindeberg_tol": lindeberg_tol,
              "jumps": jump_family(kn_values[0]).describe()["family"],
              "kn_values": list(kn_values)}
    return Report(name, params, verdict, rows, margins, expected=expected)


def condition_18_constant(jumps: JumpScheme, scheme: SubordinatorScheme,
                          variant: str = "18") -> float:
    """C_n^(delta1/delta) times m_n^beta (variant "18") or sigma_n + |a_n| (variant "26")."""
    cert = scheme.certificate
    if cert is None:
        raise ValueError("the clock carries no (delta, delta1, C_n) certificate")
    if variant == "18":
        factor = jumps.abs_moment
    elif variant == "26":
        factor = math.sqrt(jumps.variance) + abs(jumps.mean)
    else:
        raise ValueError(f"variant must be '18' or '26', got {variant!r}")
    return cert.c_n ** (cert.delta1 / cert.delta) * factor


def check_condition_18_26(family: Callable, kn_values: Sequence[float], *, variant: str = "18",
                          rel_slack: float = 1e-6, name: str = "stabilizing-constant",
                          expected: str = PASS) -> Report:
    """Running supremum of the stabilizing-constant sequence across ``kn_values``.

    ``family(kn)`` returns (JumpScheme, SubordinatorScheme).  PASS iff every
    value is finite and the supremum over the second half of the schedule
    does not exceed the supremum over the first half by more than
    ``rel_slack`` (the sequence has stopped growing); K is that supremum.
    """
    if len(kn_values) < 2:
        raise ValueError("need at least two kn values to judge stabilization")
    rows, running = [], -math.inf
    for kn in kn_values:
        jumps, scheme = family(kn)
        v = condition_18_constant(jumps, scheme, variant)
        running = max(running, v)
        rows.append({"kn": kn, "value": v, "running_sup": running})
    vals = [r["value"] for r in rows]
    half = len(vals) // 2
    head, tail = max(vals[:half]), max(vals[half:])
    ok = all(math.isfinite(v) for v in vals) and tail <= (1.0 + rel_slack) * head
    margins = {"K": running if ok else math.inf, "head_sup": head, "tail_sup": tail,
               "growth_ratio": tail / head if head > 0 else math.inf}
    return Report(name, {"variant": variant, "kn_values": list(kn_values),
                         "rel_slack": rel_slack},
                  PASS if ok else FAIL, rows, margins, expected=expected)
