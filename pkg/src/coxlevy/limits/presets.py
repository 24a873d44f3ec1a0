"""Named experiments with fixed presets, as run by the command line."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Optional

from ..distributions.gg import GgParams
from ..distributions.gig import GigParams
from ..distributions.nvmm import Degenerate, GgMixing, GigMixing, NvmmSpec, OneSidedStable
from ..distributions.oracles import cauchy_oracle, normal_oracle, nvmm_oracle
from ..processes import (Certificate, SubordinatorScheme, ScaledMarginal, deterministic_scheme,
                         gamma_scheme, pareto_jumps, rademacher_jumps, stable_scheme)
from ._constants import CAUCHY_ARCTAN_FACTOR
from .bounds import TightnessParams, check_lemma3_bound, check_tightness_bound
from .conditions import check_condition_6, check_condition_18_26, check_condition_24
from .convergence import (DEFAULT_KN, ConvergenceSchedule, check_lemma4_equivalence,
                          gvg_schedule, rademacher_family, run_convergence_experiment,
                          run_corollary3_experiment, scaled_clock)
from .reports import FAIL, PASS, Report

DEFAULT_SEED = 42
DEFAULT_N = 100_000


@dataclass(frozen=True)
class RunSettings:
    """What every experiment receives: seed, sizes, schedule, workers, preset."""

    seed: int = DEFAULT_SEED
    n_samples: int = DEFAULT_N
    kn_values: tuple = DEFAULT_KN
    workers: int = 1
    block: int = 25_000
    preset: Optional[str] = None
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Experiment:
    name: str
    summary: str
    run: Callable[[RunSettings], Report]
    presets: tuple = ()
    expected: str = PASS

    def preset(self, settings: RunSettings) -> Optional[str]:
        if not self.presets:
            if settings.preset is not None:
                raise ValueError(f"experiment {self.name!r} takes no preset")
            return None
        p = settings.preset or self.presets[0]
        if p not in self.presets:
            raise ValueError(f"unknown preset {p!r} for {self.name!r}; choose from "
                             f"{', '.join(self.presets)}")
        return p


REGISTRY: dict[str, Experiment] = {}


def register(name, summary, presets=(), expected=PASS):
    def deco(fn):
        REGISTRY[name] = Experiment(name, summary, fn, tuple(presets), expected)
        return fn
    return deco


def get_experiment(name: str) -> Experiment:
    if name not in REGISTRY:
        raise KeyError(f"unknown experiment {name!r}; available: {', '.join(sorted(REGISTRY))}")
    return REGISTRY[name]


def run_experiment(name: str, settings: RunSettings) -> Report:
    exp = get_experiment(name)
    exp.preset(settings)  # validate
    report = exp.run(settings)
    report.expected = exp.expected
    return report


# ---------------------------------------------------------------- bound presets

STABLE_ALPHA = 0.5
LEMMA3_EPS = (1.0, 2.0, 4.0)
LEMMA3_T = (0.1, 0.5, 1.0)
TIGHTNESS_TRIPLES = ((0.0, 0.5, 1.0), (0.5, 0.5, 0.5), (0.0, 0.25, 0.5), (0.2, 0.3, 0.9),
                     (0.1, 0.6, 0.7))
TIGHTNESS_EPS = 2.0


def _bound_schemes(preset: str, tightness: bool):
    jumps = rademacher_jumps(1.0)
    if preset == "rademacher-deterministic":
        return jumps, deterministic_scheme(1.0, 1.0)
    # stable clock with delta = alpha/2 gives delta1 = 1/2; the tightness
    # exponent must exceed 1/2, so that check uses an interior delta
    delta = 0.3 if tightness else STABLE_ALPHA / 2
    return jumps, stable_scheme(STABLE_ALPHA, delta)


BOUND_PRESETS = ("rademacher-deterministic", "paper-stable-subordinator")


@register("lemma3", "P(|Q(t)| >= eps) against the moment bound on a 3x3 (eps, t) grid",
          BOUND_PRESETS)
def _lemma3(s: RunSettings) -> Report:
    preset = REGISTRY["lemma3"].preset(s)
    jumps, scheme = _bound_schemes(preset, False)
    eps = tuple(s.params.get("eps", LEMMA3_EPS))
    ts = tuple(s.params.get("t", LEMMA3_T))
    r = check_lemma3_bound(jumps, scheme, eps, ts, s.n_samples, s.seed, workers=s.workers,
                           name="lemma3")
    r.parameters["preset"] = preset
    return r


@register("tightness", "joint increment probability against the tightness bound on 5 triples",
          BOUND_PRESETS)
def _tightness(s: RunSettings) -> Report:
    preset = REGISTRY["tightness"].preset(s)
    jumps, scheme = _bound_schemes(preset, True)
    tp = TightnessParams.from_schemes(jumps, scheme)
    triples = tuple(tuple(t) for t in s.params.get("triples", TIGHTNESS_TRIPLES))
    r = check_tightness_bound(jumps, scheme, tp, triples, float(s.params.get("eps", TIGHTNESS_EPS)),
                              s.n_samples, s.seed, workers=s.workers, name="tightness")
    r.parameters["preset"] = preset
    return r


# ---------------------------------------------------------------- conditions

COND6_PRESETS = ("paper-stable-subordinator", "deterministic", "gamma")


@register("cond6", "Monte Carlo check of E L^delta(t) <= (C_n t)^delta1", COND6_PRESETS)
def _cond6(s: RunSettings) -> Report:
    preset = REGISTRY["cond6"].preset(s)
    scheme = {"paper-stable-subordinator": lambda: stable_scheme(STABLE_ALPHA, 0.25),
              "deterministic": lambda: deterministic_scheme(2.0, 1.0),
              "gamma": gamma_scheme}[preset]()
    r = check_condition_6(scheme, s.params.get("t", (0.1, 0.25, 0.5, 1.0)), s.n_samples, s.seed,
                          workers=s.workers, name="cond6")
    r.parameters["preset"] = preset
    return r


def _cond24(name, family, a, expected=PASS):
    def run(s: RunSettings) -> Report:
        return check_condition_24(family, s.kn_values, float(s.params.get("eps", 0.1)), a, 1.0,
                                  name=name, expected=expected)
    return run


register("cond24", "kn a_n -> 0, kn sigma_n^2 -> 1, Lindeberg -> 0 for +-kn^(-1/2) jumps")(
    _cond24("cond24", partial(rademacher_family, 0.0), 0.0))
register("cond24-shifted", "kn a_n -> 1 for jumps 1/kn +- kn^(-1/2)")(
    _cond24("cond24-shifted", partial(rademacher_family, 1.0), 1.0))
register("cond24-negative-control", "heavy-tailed jumps without variance must FAIL",
         expected=FAIL)(_cond24("cond24-negative-control", pareto_jumps, 0.0, FAIL))


def _deterministic_family(kn):
    # clock L(t) = kn t: certificate C_n = kn with delta = delta1 = 1
    return rademacher_jumps(kn), deterministic_scheme(kn, 1.0)


def _absorbed_family(kn):
    # kn moved into the clock's mixing law; the certificate is taken as C_n = 1
    return (rademacher_jumps(kn),
            SubordinatorScheme(ScaledMarginal(kn, Degenerate(1.0)), Certificate(1.0, 1.0, 1.0)))


def _fixed_stable_family(kn):
    return rademacher_jumps(1.0), stable_scheme(STABLE_ALPHA, 0.25)


def _stable_coupling_family(kn):
    # L_n(1) = kn Z with Z one-sided 1/2-stable is a stable clock with scale kn
    return rademacher_jumps(kn), stable_scheme(STABLE_ALPHA, 0.25, scale=kn)


def _cond18(name, family, variant="18", expected=PASS):
    def run(s: RunSettings) -> Report:
        return check_condition_18_26(family, s.kn_values, variant=variant, name=name,
                                     expected=expected)
    return run


register("cond18", "K = limsup C_n^(delta1/delta) m_n^beta for a fixed stable clock")(
    _cond18("cond18", _fixed_stable_family))
register("cond18-absorbed", "K for +-kn^(-1/2) jumps with kn absorbed into the clock")(
    _cond18("cond18-absorbed", _absorbed_family))
register("cond26", "K with sigma_n + |a_n| for a fixed stable clock")(
    _cond18("cond26", _fixed_stable_family, "26"))
register("cond18-negative-control", "deterministic clock kn t with +-kn^(-1/2) jumps must FAIL",
         expected=FAIL)(_cond18("cond18-negative-control", _deterministic_family, "18", FAIL))
register("cond18-stable-coupling",
         "clock kn t^2 Z with +-kn^(-1/2) jumps: K diverges (expected FAIL)",
         expected=FAIL)(_cond18("cond18-stable-coupling", _stable_coupling_family, "18", FAIL))


# ---------------------------------------------------------------- convergence

LEMMA4_MIXING = {"exponential": GgMixing(GgParams(1.0, 1.0, 1.0)),
                 "gig": GigMixing(GigParams(-0.5, 1.0, 1.0)),
                 "degenerate": Degenerate(1.0)}


def _lemma4(kind):
    def run(s: RunSettings) -> Report:
        return check_lemma4_equivalence(LEMMA4_MIXING[kind], s.kn_values, s.n_samples, s.seed,
                                        workers=s.workers, block=s.block, name=f"lemma4-{kind}")
    return run


for _kind in LEMMA4_MIXING:
    register(f"lemma4-{_kind}", f"N/kn with N ~ Poisson(kn U), U {_kind}, against the law of U")(
        _lemma4(_kind))


def _schedule(s: RunSettings, shift, mixing, description):
    return ConvergenceSchedule(tuple(s.kn_values), s.n_samples, partial(rademacher_family, shift),
                               partial(scaled_clock, mixing), s.block, description)


@register("cor1-rademacher-cauchy", "+-kn^(-1/2) jumps, clock kn Z_{1/2,1}: limit Cauchy")
def _cor1(s: RunSettings) -> Report:
    sch = _schedule(s, 0.0, OneSidedStable(0.5), {"jumps": "rademacher", "clock": "kn * Z(1/2,1)"})
    limit = cauchy_oracle(1.0 / CAUCHY_ARCTAN_FACTOR)
    return run_convergence_experiment(sch, limit, s.seed, workers=s.workers,
                                      name="cor1-rademacher-cauchy",
                                      parameters={"arctan_factor": CAUCHY_ARCTAN_FACTOR})


@register("clt-normal", "+-kn^(-1/2) jumps, clock kn t: limit standard normal")
def _clt(s: RunSettings) -> Report:
    sch = _schedule(s, 0.0, Degenerate(1.0), {"jumps": "rademacher", "clock": "kn"})
    return run_convergence_experiment(sch, normal_oracle(), s.seed, workers=s.workers,
                                      name="clt-normal")


@register("thm2-nig", "1/kn +- kn^(-1/2) jumps, clock kn GIG(-1/2,1,1): limit NIG (a=1)")
def _nig(s: RunSettings) -> Report:
    mixing = GigMixing(GigParams(-0.5, 1.0, 1.0))
    sch = _schedule(s, 1.0, mixing, {"jumps": "rademacher+shift", "clock": "kn * GIG(-1/2,1,1)"})
    return run_convergence_experiment(sch, nvmm_oracle(NvmmSpec(1.0, 1.0, mixing)), s.seed,
                                      workers=s.workers, name="thm2-nig")


def _cor3(nu, jumps):
    def run(s: RunSettings) -> Report:
        sch = gvg_schedule(nu, s.kn_values, s.n_samples, jumps, s.block)
        suffix = "" if jumps == "laplace" else f"-{jumps}"
        return run_corollary3_experiment(nu, sch, s.seed, workers=s.workers,
                                         name=f"cor3-gvg-nu{nu:g}{suffix}")
    return run


for _nu in (1.0, 0.5):
    register(f"cor3-gvg-nu{_nu:g}", f"Laplace jumps, clock kn Weibull({_nu:g}): limit GVG")(
        _cor3(_nu, "laplace"))
    register(f"cor3-gvg-nu{_nu:g}-rademacher",
             f"+-kn^(-1/2) jumps, clock kn Weibull({_nu:g}): limit GVG (lattice jumps)")(
        _cor3(_nu, "rademacher"))
register("cor3-gvg-nu1-normal", "normal jumps, clock kn Exp(1): limit Laplace-type GVG")(
    _cor3(1.0, "normal"))
