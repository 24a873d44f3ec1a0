"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s``; the lines are also
collected into the terminal summary of any pytest run.
"""

import json
import math
import time
from pathlib import Path

import numpy as np
import pytest
from scipy import stats

from coxlevy import cli
from coxlevy.distributions import (GgParams, GigParams, StableParams, gg_oracle, gig_oracle,
                                   stable_cf, stable_oracle, stable_product_check,
                                   stable_sample, stable_sample_via_mixture)
from coxlevy.ks import dkw_bound, ks_one_sample, ks_two_sample
from coxlevy.limits import RunSettings, rademacher_tail_exact, run_experiment
from coxlevy.processes import (cf_power_check, gamma_scheme, increment_stationarity_check,
                               rademacher_jumps, self_similarity_check, stable_scheme)
from coxlevy.seeding import stream
from coxlevy.special import CharacteristicFn, bessel_k, cdf_from_cf, erfc

N = 100_000


class Criterion:
    """Collects named checks and emits one verdict line."""

    def __init__(self, number, title, limit_s, log):
        self.number, self.title, self.limit_s, self.log = number, title, limit_s, log
        self.checks = []
        self.t0 = time.perf_counter()

    def check(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    def finish(self):
        elapsed = time.perf_counter() - self.t0
        self.check("runtime", elapsed < self.limit_s, f"{elapsed:.1f}s < {self.limit_s:.0f}s")
        failed = [c for c in self.checks if not c[1]]
        verdict = "FAIL" if failed else "PASS"
        line = (f"criterion {self.number} ({self.title}): {verdict}  "
                f"[{len(self.checks) - len(failed)}/{len(self.checks)} checks, {elapsed:.1f}s]")
        print(line)
        self.log.append(line)
        for name, ok, detail in self.checks:
            print(f"    {'ok ' if ok else 'BAD'} {name}: {detail}")
        assert not failed, "; ".join(f"{n}: {d}" for n, _, d in failed)


def test_criterion_1_special_function_oracles(acceptance_log):
    c = Criterion(1, "special-function oracles", 10, acceptance_log)

    def half_integer_k(nu, z):
        base = math.sqrt(math.pi / (2 * z)) * math.exp(-z)
        return {0.5: base, 1.5: base * (1 + 1 / z), 2.5: base * (1 + 3 / z + 3 / z ** 2)}[nu]

    worst = 0.0
    for nu in (0.5, 1.5, 2.5):
        for z in (0.1, 1.0, 10.0, 100.0):
            exact = half_integer_k(nu, z)
            worst = max(worst, abs(bessel_k(nu, z) - exact) / exact)
    c.check("bessel_k half-integer grid (12 points)", worst <= 1e-8, f"max rel err {worst:.2e}")

    cauchy = CharacteristicFn(lambda s: np.exp(-np.abs(s)), "cauchy")
    xs = np.linspace(-10, 10, 21)
    err = max(abs(cdf_from_cf(cauchy, x) - (0.5 + math.atan(x) / math.pi)) for x in xs)
    c.check("cdf_from_cf vs Cauchy (21 points)", err <= 1e-6, f"max abs err {err:.2e}")

    levy_p = StableParams(0.5, 1.0)
    levy = CharacteristicFn(lambda s: stable_cf(levy_p, s), "levy")
    xs = np.geomspace(0.02, 50, 21)
    err = max(abs(cdf_from_cf(levy, x) - erfc(1 / (2 * math.sqrt(x)))) for x in xs)
    c.check("cdf_from_cf vs Levy (21 points)", err <= 1e-6, f"max abs err {err:.2e}")
    c.finish()


def test_criterion_2_sampler_fidelity(acceptance_log):
    c = Criterion(2, "sampler fidelity", 120, acceptance_log)
    oracles = [
        stable_oracle(StableParams(0.5, 1.0)),
        stable_oracle(StableParams(1.0, 0.0)),
        stable_oracle(StableParams(1.5, 0.0)),
        stable_oracle(StableParams(2.0, 0.0)),
        gig_oracle(GigParams(-0.5, 2.0, 1.5)),  # inverse Gaussian
        gig_oracle(GigParams(2.0, 0.0, 3.0)),  # gamma boundary
        gig_oracle(GigParams(0.3, 1.0, 4.0)),
        gg_oracle(GgParams(0.5, 1.0, 1.0)),
        gg_oracle(GgParams(2.0, 1.5, 0.7)),
        gg_oracle(GgParams(-1.0, 2.0, 1.0)),
    ]
    for i, o in enumerate(oracles):
        x = o.sampler(stream(42, 2, i), N)
        rep = ks_one_sample(x, o.cdf, o.name, tabulate=o.expensive)
        c.check(f"KS {o.name}", rep.statistic <= 0.01, f"{rep.statistic:.4f} <= 0.01")
    c.finish()


def test_criterion_3_identity_suite(acceptance_log):
    c = Criterion(3, "identity suite", 180, acceptance_log)
    for alpha in (1.0, 1.5):
        direct = stable_sample(StableParams(alpha, 0.0), stream(42, 3, 0, int(alpha * 10)), N)
        mixed = stable_sample_via_mixture(alpha, stream(42, 3, 1, int(alpha * 10)), N)
        rep = ks_two_sample(direct, mixed, "direct sampler")
        c.check(f"scale-mixture route alpha={alpha:g}", rep.statistic <= 0.01,
                f"two-sample KS {rep.statistic:.4f} <= 0.01")

    for i, (a, ap) in enumerate([(2.0, 0.5), (1.0, 0.5), (1.5, 0.8)]):
        rep = stable_product_check(a, ap, N, stream(42, 3, 2, i))
        c.check(f"stable product alpha={a:g}, alpha'={ap:g}", rep.statistic <= 0.015,
                f"KS {rep.statistic:.4f} <= 0.015")

    clock = stable_scheme(0.5)
    for i, t in enumerate((0.25, 0.5)):
        rep = self_similarity_check(clock, t, N, stream(42, 3, 3, i))
        c.check(f"self-similarity t={t:g}", rep.statistic <= 0.01, f"KS {rep.statistic:.4f} <= 0.01")

    rep = increment_stationarity_check(rademacher_jumps(1.0), stable_scheme(0.5), 0.25, 0.75, N,
                                       stream(42, 3, 4))
    c.check("increment stationarity", rep.statistic <= 0.015, f"KS {rep.statistic:.4f} <= 0.015")

    res = cf_power_check(gamma_scheme(2.0, 1.0), 0.5, [0.25, 0.5, 1.0, 2.0], N, stream(42, 3, 5))
    c.check("CF power, gamma subordinator", res["max_z"] <= 3.5,
            f"max |diff|/SE {res['max_z']:.2f} <= 3.5 (4 frequencies)")
    c.finish()


def _cell(report, **where):
    return next(r for r in report.rows if all(r[k] == v for k, v in where.items()))


def test_criterion_4_bound_suite(acceptance_log):
    c = Criterion(4, "bound suite", 120, acceptance_log)
    for preset in ("rademacher-deterministic", "paper-stable-subordinator"):
        r = run_experiment("lemma3", RunSettings(seed=42, n_samples=N, preset=preset))
        c.check(f"single-time bound, {preset}", r.passed and len(r.rows) == 9,
                f"{r.verdict}, 9 cells, min 3-SE margin {r.margins['min_margin']:.4g}")
        if preset == "rademacher-deterministic":
            cell = _cell(r, eps=2.0, t=0.5)
            skellam = 2 * stats.skellam.sf(1, 0.25, 0.25)
            enum = rademacher_tail_exact(0.5, 1.0, 2.0)
            c.check("exact enumeration at eps=2, t=1/2",
                    abs(cell["bound"] - 0.25) < 1e-15 and abs(enum - skellam) < 1e-12
                    and abs(cell["exact"] - enum) < 1e-15 and abs(cell["exact_z"]) < 3,
                    f"bound {cell['bound']:.4g}, enumerated {enum:.6f} (skellam {skellam:.6f}), "
                    f"estimate {cell['probability']:.5f}")

    for preset in ("rademacher-deterministic", "paper-stable-subordinator"):
        r = run_experiment("tightness", RunSettings(seed=42, n_samples=N, preset=preset))
        c.check(f"quadratic-increment bound, {preset}",
                r.passed and len(r.rows) == 5 and r.margins["bound_ok"]
                and r.margins["factorization_ok"],
                f"{r.verdict}, 5 triples, factorization within 3 SE")
        if preset == "rademacher-deterministic":
            cell = _cell(r, t1=0.0, t=0.5, t2=1.0)
            c.check("tightness cell (0, 1/2, 1)",
                    abs(cell["bound"] - 0.0625) < 1e-15
                    and abs(cell["joint"] - cell["exact"]) <= 3 * cell["se"],
                    f"bound {cell['bound']:.4g}, joint {cell['joint']:.5f}, "
                    f"exact {cell['exact']:.5f}")
    c.finish()


CONVERGENCE = ("lemma4-exponential", "lemma4-gig", "cor1-rademacher-cauchy", "clt-normal",
               "thm2-nig", "cor3-gvg-nu0.5", "cor3-gvg-nu1")


def test_criterion_5_convergence_suite(acceptance_log):
    c = Criterion(5, "convergence suite", 600, acceptance_log)
    for name in CONVERGENCE:
        r = run_experiment(name, RunSettings(seed=42, n_samples=N))
        ks = [row["ks"] for row in r.rows]
        c.check(name, r.passed and r.rows[-1]["kn"] == 4096,
                f"{r.verdict}: KS " + ", ".join(f"{v:.4f}" for v in ks)
                + f"; final <= 0.02, DKW(99%) {dkw_bound(N):.4f}")
    # lattice-jump variants are reported but not part of the verdict
    for name in ("cor3-gvg-nu0.5-rademacher", "cor3-gvg-nu1-rademacher"):
        r = run_experiment(name, RunSettings(seed=42, n_samples=N))
        print(f"    info {name}: {r.verdict}, final KS {r.rows[-1]['ks']:.4f}")
    c.finish()


def test_criterion_6_negative_controls(acceptance_log, tmp_path, monkeypatch, capsys):
    c = Criterion(6, "negative controls and exit codes", 120, acceptance_log)
    for name in ("cond18-negative-control", "cond24-negative-control"):
        r = run_experiment(name, RunSettings(seed=42))
        c.check(f"{name} reports FAIL", r.verdict == "FAIL" and r.as_expected, r.verdict)
        code = cli.main(["experiment", name, "--output-dir", str(tmp_path)])
        c.check(f"{name} expected FAIL exits 0", code == cli.EXIT_OK, f"exit {code}")
    code = cli.main(["experiment", "cond18", "--output-dir", str(tmp_path)])
    c.check("passing experiment exits 0", code == cli.EXIT_OK, f"exit {code}")
    code = cli.main(["experiment", "cor1-rademacher-cauchy", "-n", "300", "--output-dir",
                     str(tmp_path)])
    c.check("unexpected FAIL exits 1", code == cli.EXIT_VERDICT, f"exit {code}")
    code = cli.main(["sample", "stable", "--alpha", "3", "-n", "5"])
    c.check("invalid parameter exits 2", code == cli.EXIT_USAGE, f"exit {code}")
    code = cli.main(["experiment", "no-such-experiment", "--output-dir", str(tmp_path)])
    c.check("unknown experiment exits 2", code == cli.EXIT_USAGE, f"exit {code}")
    with pytest.raises(SystemExit) as exc:
        cli.main(["sample", "stable", "--alpha"])
    c.check("argparse error exits 2", exc.value.code == cli.EXIT_USAGE, f"exit {exc.value.code}")

    from coxlevy.special import QuadratureError

    def broken(*args, **kwargs):
        raise QuadratureError("tolerance not met", 0.5, 1.0)

    monkeypatch.setattr(cli, "stable_cdf", broken)
    code = cli.main(["cdf", "stable", "--alpha", "1.5", "--x", "0.3"])
    c.check("quadrature failure exits 3", code == cli.EXIT_NUMERIC, f"exit {code}")
    capsys.readouterr()
    c.finish()


def _run_cli(out, *extra):
    code = cli.main(["experiment", "--output-dir", str(out), *extra])
    return code, {p.name: p.read_bytes() for p in sorted(out.iterdir())
                  if not p.name.endswith(".meta.json")}


def test_criterion_7_reproducibility(acceptance_log, tmp_path):
    c = Criterion(7, "reproducibility", 300, acceptance_log)
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"seed": 7, "n_samples": 60000, "kn": [16, 256, 4096],
                               "streams": {"block_size": 10000},
                               "experiment": {"name": "thm2-nig"}}))
    code_a, a = _run_cli(tmp_path / "a", "--config", str(cfg))
    code_b, b = _run_cli(tmp_path / "b", "--config", str(cfg))
    c.check("identical config, identical bytes", code_a == code_b == 0 and a == b and a,
            f"{sorted(a)}")
    code_c, w4 = _run_cli(tmp_path / "c", "--config", str(cfg), "--workers", "4")
    c.check("1 vs 4 workers, identical bytes", code_c == 0 and w4 == a, "thm2-nig json/csv")

    args = ["tightness", "--preset", "paper-stable-subordinator", "-n", "50000", "--block", "8000"]
    _, t1 = _run_cli(tmp_path / "d", *args, "--workers", "1")
    _, t4 = _run_cli(tmp_path / "e", *args, "--workers", "4")
    c.check("1 vs 4 workers, tightness report", t1 == t4 and t1, f"{sorted(t1)}")

    _, other = _run_cli(tmp_path / "f", "--config", str(cfg), "--seed", "8")
    c.check("different seed changes the report", other != a, "seed 7 vs 8")
    c.finish()
