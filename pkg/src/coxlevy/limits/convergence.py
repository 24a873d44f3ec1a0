"""Convergence experiments: KS distance to a limit law along a kn schedule."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional, Sequence

import numpy as np

from ..distributions.gg import GgParams
from ..distributions.nvmm import Degenerate, GgMixing, MixingLaw, NvmmSpec
from ..distributions.oracles import DistributionOracle, nvmm_oracle
from ..ks import KsReport, dkw_bound, ks_one_sample
from ..processes import (JumpScheme, SubordinatorScheme, laplace_jumps, normal_jumps,
                         poisson_sample, rademacher_jumps, scaled_marginal_scheme, simulate_cox_marginal)
from .parallel import BLOCK, block_tasks, run_tasks, seed_of
from .reports import FAIL, PASS, Report

DEFAULT_KN = (16, 64, 256, 1024, 4096)
DEFAULT_TOL = 0.02
DEGENERATE_WINDOW = 0.05  # relative half-width excluded around a point mass


def rademacher_family(shift: float, kn: float) -> JumpScheme:
    return rademacher_jumps(kn, shift)


def normal_family(shift: float, kn: float) -> JumpScheme:
    return normal_jumps(kn, shift)


def laplace_family(shift: float, kn: float) -> JumpScheme:
    if shift:
        raise ValueError("Laplace jumps are centered")
    return laplace_jumps(kn)


def scaled_clock(mixing: MixingLaw, kn: float) -> SubordinatorScheme:
    return scaled_marginal_scheme(kn, mixing)


@dataclass(frozen=True)
class ConvergenceSchedule:
    """kn values, draws per kn, and the kn -> (jumps, clock) families.

    The families must be picklable (module-level functions or partials of
    them) when experiments run with several workers.
    """

    kn_values: tuple
    n_samples: int
    jumps: Callable[[float], JumpScheme]
    clock: Callable[[float], SubordinatorScheme]
    block: int = BLOCK
    description: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        kn = tuple(self.kn_values)
        if len(kn) < 2 or any(b <= a for a, b in zip(kn, kn[1:])):
            raise ValueError("kn values must be strictly increasing (at least two)")
        if kn[0] < 1:
            raise ValueError("kn values must be >= 1")
        if self.n_samples < 1 or self.block < 1:
            raise ValueError("n_samples and block must be >= 1")
        object.__setattr__(self, "kn_values", kn)
        for k in kn:  # constructing each row validates its moment declarations
            self.jumps(k)


def _cox_block(jumps_family, clock_family, kn, rng, size):
    return simulate_cox_marginal(jumps_family(kn), clock_family(kn), rng, size)


def _sample_schedule(schedule: ConvergenceSchedule, sampler_for, seed: int, workers: int):
    """Draws for every kn; streams keyed by (kn index, block)."""
    tasks, owners = [], []
    for i, kn in enumerate(schedule.kn_values):
        ts = block_tasks(sampler_for(kn), schedule.n_samples, seed, (i,), schedule.block)
        tasks += ts
        owners += [i] * len(ts)
    parts = run_tasks(tasks, workers)
    return [np.concatenate([p for p, o in zip(parts, owners) if o == i])
            for i in range(len(schedule.kn_values))]


def trend_verdict(ks: Sequence[float], dkw: Sequence[float], tol: float) -> tuple[bool, dict]:
    """Nonincreasing up to DKW bands, last <= first up to bands, last <= tol."""
    steps = [ks[i + 1] - ks[i] - dkw[i] - dkw[i + 1] for i in range(len(ks) - 1)]
    end = ks[-1] - ks[0] - dkw[0] - dkw[-1]
    ok_steps = all(s <= 0 for s in steps)
    ok_end = end <= 0
    ok_final = ks[-1] <= tol
    margins = {"final_ks": ks[-1], "tolerance": tol, "final_margin": tol - ks[-1],
               "worst_step_excess": max(steps), "end_excess": end,
               "trend_ok": ok_steps and ok_end, "final_ok": ok_final}
    return ok_steps and ok_end and ok_final, margins


def _trend_report(name, params, reports: list[KsReport], kn_values, tol, expected=PASS):
    ks = [r.statistic for r in reports]
    dkw = [r.dkw_99 for r in reports]
    ok, margins = trend_verdict(ks, dkw, tol)
    rows = [{"kn": k, "ks": r.statistic, "dkw_99": r.dkw_99, "n_samples": r.n_samples}
            for k, r in zip(kn_values, reports)]
    return Report(name, params, PASS if ok else FAIL, rows, margins, expected=expected)


def run_convergence_experiment(schedule: ConvergenceSchedule, limit: DistributionOracle, rng, *,
                               tol: float = DEFAULT_TOL, workers: int = 1,
                               name: str = "convergence", parameters: Optional[dict] = None
                               ) -> Report:
    """KS distance between draws of Q_n(1) and the limit CDF for each kn."""
    seed = seed_of(rng)
    draws = _sample_schedule(schedule, lambda kn: partial(_cox_block, schedule.jumps,
                                                          schedule.clock, kn), seed, workers)
    reports = [ks_one_sample(x, limit.cdf, limit.name, tabulate=limit.expensive) for x in draws]
    params = {"limit": limit.name, "n_samples": schedule.n_samples, "seed": seed,
              "kn_values": list(schedule.kn_values), "block": schedule.block,
              **schedule.description, **(parameters or {})}
    return _trend_report(name, params, reports, schedule.kn_values, tol)


# ---------------------------------------------------------------- mixed Poisson


def _mixed_poisson_block(mixing: MixingLaw, kn, rng, size):
    lam = kn * np.asarray(mixing.sample(rng, size), dtype=float)
    return poisson_sample(lam, rng) / kn


def point_mass_distance(x, c: float, window: float = DEGENERATE_WINDOW) -> float:
    """sup |F_n - 1{. >= c}| over x outside (c - window c, c + window c).

    The step CDF of a point mass is discontinuous at c, so weak convergence
    only controls the distance at continuity points.
    """
    x = np.asarray(x, dtype=float)
    eta = window * c
    return float(max(np.mean(x <= c - eta), np.mean(x >= c + eta)))


def check_lemma4_equivalence(mixing: MixingLaw, kn_values: Sequence[float], n_samples: int, rng, *,
                             tol: float = DEFAULT_TOL, workers: int = 1, block: int = BLOCK,
                             name: str = "mixed-poisson") -> Report:
    """N / kn with N ~ Poisson(kn U) against the law of U, across kn.

    For a point-mass U the distance is taken at continuity points only
    (see :func:`point_mass_distance`).
    """
    schedule = ConvergenceSchedule(tuple(kn_values), n_samples, partial(rademacher_family, 0.0),
                                   partial(scaled_clock, mixing), block)
    seed = seed_of(rng)
    draws = _sample_schedule(schedule, lambda kn: partial(_mixed_poisson_block, mixing, kn),
                             seed, workers)
    reference = f"U ~ {mixing.name}"
    if isinstance(mixing, Degenerate):
        reports = [KsReport(point_mass_distance(x, mixing.c), len(x), reference,
                            extra={"window": DEGENERATE_WINDOW}) for x in draws]
    else:
        reports = [ks_one_sample(x, mixing.cdf, reference, tabulate=True) for x in draws]
    params = {"mixing": mixing.describe(), "n_samples": n_samples, "seed": seed,
              "kn_values": list(schedule.kn_values), "block": block}
    return _trend_report(name, params, reports, schedule.kn_values, tol)


# ---------------------------------------------------------------- GVG limits


def gvg_schedule(nu: float, kn_values=DEFAULT_KN, n_samples: int = 100_000,
                        jumps: str = "laplace", block: int = BLOCK) -> ConvergenceSchedule:
    """Centered jumps with kn sigma_n^2 = 1 and clock kn * Weibull(nu).

    Laplace jumps are the default: lattice jumps such as +-kn^(-1/2) put an
    atom at 0 of size ~ P(2B = N) that decays slowly when the clock has
    mass near 0 (Weibull with nu < 1).
    """
    if not 0.0 < nu <= 1.0:
        raise ValueError(f"the Weibull clock needs nu in (0,1], got {nu}")
    families = {"rademacher": rademacher_family, "normal": normal_family,
                "laplace": laplace_family}
    if jumps not in families:
        raise ValueError(f"unknown jump family {jumps!r}; choose from {sorted(families)}")
    fam = families[jumps]
    mixing = GgMixing(GgParams(nu, 1.0, 1.0))
    return ConvergenceSchedule(tuple(kn_values), n_samples, partial(fam, 0.0),
                               partial(scaled_clock, mixing), block,
                               {"jumps": jumps, "clock": f"kn * weibull({nu:g})"})


def run_corollary3_experiment(nu: float, schedule: Optional[ConvergenceSchedule] = None,
                              rng=0, *, tol: float = DEFAULT_TOL, workers: int = 1,
                              name: Optional[str] = None) -> Report:
    """Convergence of Q_n(1) to the GVG law a=0, sigma=1, GG(nu, 1, 1) mixing."""
    if not 0.0 < nu <= 1.0:
        raise ValueError(f"the Weibull clock needs nu in (0,1], got {nu}")
    schedule = schedule or gvg_schedule(nu)
    limit = nvmm_oracle(NvmmSpec(0.0, 1.0, GgMixing(GgParams(nu, 1.0, 1.0))))
    return run_convergence_experiment(schedule, limit, rng, tol=tol, workers=workers,
                                      name=name or f"cor3-gvg-nu{nu:g}",
                                      parameters={"nu": nu})
