import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from coxlevy.distributions import GgMixing, GgParams, one_sided_moment
from coxlevy.ks import ks_one_sample, ks_two_sample
from coxlevy.processes import (Certificate, SamplePath, StableSub, SubordinatorScheme, TimeGrid,
                               cf_power_check, deterministic_scheme, gamma_scheme, ig_scheme,
                               increment_stationarity_check, jumps_from_dict, laplace_jumps,
                               normal_jumps, pareto_jumps, poisson_sample, rademacher_jumps,
                               scaled_marginal_scheme, self_similarity_check, simulate_compound_poisson,
                               simulate_cox_marginal, simulate_cox_path, simulate_subordinator,
                               stable_certificate, stable_scheme, unit_jumps)

N = 40_000


# ---------------------------------------------------------------- grids and paths


def test_time_grid_constructors():
    g = TimeGrid.uniform(4)
    assert g.points == (0.0, 0.25, 0.5, 0.75, 1.0)
    assert g.resolution == 4 and np.allclose(g.steps, 0.25)
    h = TimeGrid.through([0.3, 0.1, 0.3])
    assert h.points == (0.0, 0.1, 0.3, 1.0)
    assert h.index(0.3) == 2
    with pytest.raises(KeyError):
        h.index(0.2)


@pytest.mark.parametrize("points", [(0.0,), (0.1, 1.0), (0.0, 0.5, 0.5, 1.0), (0.0, 0.9)])
def test_time_grid_validation(points):
    with pytest.raises(ValueError):
        TimeGrid(points)


def test_sample_path_must_start_at_zero():
    g = TimeGrid.uniform(2)
    with pytest.raises(ValueError):
        SamplePath(g, np.array([1.0, 2.0, 3.0]))
    with pytest.raises(ValueError):
        SamplePath(g, np.array([0.0, 1.0]))


def test_path_csv_round_trip(rng):
    path = simulate_subordinator(gamma_scheme(), TimeGrid.uniform(8), rng)
    text = path.to_csv()
    lines = text.splitlines()
    assert lines[0] == "t,value" and len(lines) == 10
    back = np.array([float(line.split(",")[1]) for line in lines[1:]])
    assert np.array_equal(back, path.values)
    buf = io.StringIO()
    many = simulate_subordinator(gamma_scheme(), TimeGrid.uniform(2), rng, 3)
    many.to_csv(buf)
    assert buf.getvalue().splitlines()[0] == "path,t,value"
    assert len(buf.getvalue().splitlines()) == 1 + 3 * 3


# ---------------------------------------------------------------- Poisson


def test_poisson_small_mean_pmf(rng):
    k = poisson_sample(3.5, rng, 200_000)
    counts = np.bincount(k, minlength=16)[:16]
    expected = stats.poisson(3.5).pmf(np.arange(16)) * len(k)
    chi2 = np.sum((counts - expected) ** 2 / expected)
    assert chi2 < stats.chi2(15).ppf(0.999)


@pytest.mark.parametrize("mean", [0.0, 1e-9, 50.0, 1e6, 1e13])
def test_poisson_mean_and_variance(mean, rng):
    k = poisson_sample(np.full(20_000, mean), rng)
    assert k.dtype.kind in "iu"
    if mean == 0.0:
        assert np.all(k == 0)
        return
    se = math.sqrt(mean / len(k))
    assert abs(k.mean() - mean) < 5 * se
    if mean > 1:
        assert k.var() / mean == pytest.approx(1.0, abs=0.05)


@pytest.mark.parametrize("mean", [-1.0, math.inf, math.nan])
def test_poisson_rejects_bad_mean(mean, rng):
    with pytest.raises(ValueError):
        poisson_sample(mean, rng)


# ---------------------------------------------------------------- clocks


SCHEMES = [stable_scheme(0.5), stable_scheme(0.8, 0.5), gamma_scheme(2.0, 3.0),
           ig_scheme(1.5, 0.7), deterministic_scheme(2.0)]


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(range(len(SCHEMES))), st.integers(0, 2 ** 32 - 1), st.integers(1, 64))
def test_clock_paths_nondecreasing(which, seed, cells):
    path = simulate_subordinator(SCHEMES[which], TimeGrid.uniform(cells),
                                 np.random.default_rng(seed), 20)
    assert path.is_nondecreasing()
    assert np.all(path.values[:, 0] == 0.0)


def test_deterministic_clock_is_linear(rng):
    path = simulate_subordinator(deterministic_scheme(2.0), TimeGrid.uniform(16), rng)
    assert np.allclose(path.values, 2.0 * path.grid.array)


def test_gamma_clock_marginal(rng):
    t = 0.4
    path = simulate_subordinator(gamma_scheme(2.0, 3.0), TimeGrid.through([t]), rng, N)
    rep = ks_one_sample(path.at(t), stats.gamma(2.0 * t, scale=1 / 3.0).cdf, "gamma")
    assert rep.statistic < 1.5 * rep.dkw_99


def test_ig_clock_marginal(rng):
    # L(t) is inverse Gaussian with mean m t and shape s t^2
    m, s, t = 1.5, 0.7, 0.6
    path = simulate_subordinator(ig_scheme(m, s), TimeGrid.uniform(5), rng, N)
    mean, shape = m * t, s * t * t
    rep = ks_one_sample(path.at(t), stats.invgauss(mean / shape, scale=shape).cdf, "ig")
    assert rep.statistic < 1.5 * rep.dkw_99


def test_stable_clock_marginal_and_scale(rng):
    clock = SubordinatorScheme(StableSub(0.5, 2.0))
    x = clock.marginal(rng, N)
    # scale 2 means L(1) = 2 Z with Z ~ G_{1/2,1}
    rep = ks_one_sample(x / 2.0, lambda v: stats.levy(scale=0.5).cdf(v), "levy")
    assert rep.statistic < 1.5 * rep.dkw_99


@pytest.mark.parametrize("alpha, delta", [(0.5, 0.25), (0.5, 0.3), (0.8, 0.6)])
def test_stable_certificate_is_exact(alpha, delta):
    sch = stable_scheme(alpha, delta)
    for t in (0.1, 0.5, 1.0):
        assert sch.kind.moment(delta, t) == pytest.approx(float(sch.certificate.bound(t)), rel=1e-12)
    assert sch.kind.moment(delta, 1.0) == pytest.approx(one_sided_moment(alpha, delta))


def test_stable_certificate_known_constant():
    # alpha = 1/2, delta = 1/4: C = (E Z^(1/4))^2
    assert stable_certificate(0.5, 0.25).c_n == pytest.approx(1.4464088 ** 2, rel=1e-6)
    with pytest.raises(ValueError):
        stable_certificate(0.5, 0.2)


@pytest.mark.parametrize("args", [(0.0, 0.5, 1.0), (1.2, 0.5, 1.0), (0.5, 0.4, 1.0), (0.5, 0.5, 0.0)])
def test_certificate_validation(args):
    with pytest.raises(ValueError):
        Certificate(*args)


def test_scaled_marginal_clock(rng):
    sch = scaled_marginal_scheme(10.0, GgMixing(GgParams(1.0, 1.0, 1.0)))
    x = sch.marginal(rng, N)
    rep = ks_one_sample(x / 10.0, stats.expon.cdf, "exp")
    assert rep.statistic < 1.5 * rep.dkw_99
    with pytest.raises(ValueError):
        simulate_subordinator(sch, TimeGrid.uniform(4), rng)


# ---------------------------------------------------------------- jumps


JUMPS = [rademacher_jumps(4.0), rademacher_jumps(9.0, 0.5), normal_jumps(16.0, -1.0),
         laplace_jumps(8.0), unit_jumps(), pareto_jumps(4.0, 1.5)]


@pytest.mark.parametrize("jumps", JUMPS, ids=lambda j: j.name)
def test_declared_jump_moments(jumps, rng):
    z = jumps.verify_moments(rng, 200_000)
    assert abs(z["mean"]) < 4.5 and abs(z["abs_moment"]) < 4.5
    if math.isfinite(jumps.variance):
        x = jumps.sample(rng, 200_000)
        assert x.var() == pytest.approx(jumps.variance, rel=0.03, abs=1e-12)


@pytest.mark.parametrize("jumps", JUMPS[:5], ids=lambda j: j.name)
def test_exact_sums_match_drawn_sums(jumps, rng):
    counts = rng.poisson(6.0, N)
    # lattice laws: exact and drawn sums differ by rounding, which splits atoms
    fast = np.round(jumps.sums(counts, rng), 9)
    slow = np.round([jumps.sample(rng, c).sum() for c in counts[:8000]], 9)
    assert ks_two_sample(fast, slow, "drawn").statistic < 0.03


def test_lindeberg_terms():
    assert rademacher_jumps(100.0).lindeberg(0.2) == 0.0
    assert rademacher_jumps(4.0).lindeberg(0.2) == pytest.approx(1.0)
    # kn E[X^2; |X| >= eps] for N(0, 1/kn) at eps = 1/sqrt(kn): 2 (phi(1) + 1 - Phi(1))
    exact = 2 * (stats.norm.pdf(1.0) + stats.norm.sf(1.0))
    assert normal_jumps(25.0).lindeberg(0.2) == pytest.approx(exact, rel=1e-10)
    assert pareto_jumps(4.0).lindeberg(0.5) == math.inf


def test_jump_validation_and_dicts():
    with pytest.raises(ValueError):
        pareto_jumps(4.0, 2.5)
    with pytest.raises(ValueError):
        rademacher_jumps(0.5)
    with pytest.raises(ValueError):
        jumps_from_dict({"family": "cauchy"})
    j = jumps_from_dict({"family": "rademacher", "shift": 0.3}, kn=16)
    assert j.describe() == {"family": "rademacher", "kn": 16, "shift": 0.3}
    assert j.mean == pytest.approx(0.3 / 16)


# ---------------------------------------------------------------- Cox processes


def test_cox_wald_and_variance_identities(rng):
    # E Q(t) = E L(t) E X,  Var Q(t) = E L(t) E X^2 + Var L(t) (E X)^2
    jumps, clock, t = normal_jumps(1.0, 0.7), gamma_scheme(3.0, 2.0), 0.5
    q = simulate_cox_path(jumps, clock, TimeGrid.through([t]), rng, 200_000).at(t)
    el, vl = 1.5 * t / 1.0, 3.0 * t / 4.0
    ex, ex2 = jumps.mean, jumps.variance + jumps.mean ** 2
    assert abs(q.mean() - el * ex) < 4 * q.std() / math.sqrt(len(q))
    assert q.var() == pytest.approx(el * ex2 + vl * ex * ex, rel=0.02)


def test_unit_jumps_count_events(rng):
    q = simulate_cox_marginal(unit_jumps(), deterministic_scheme(3.0), rng, N)
    assert np.array_equal(q, np.round(q))
    assert ks_two_sample(q, rng.poisson(3.0, N), "poisson").statistic < 0.02


def test_path_and_marginal_routes_agree(rng):
    jumps, clock = rademacher_jumps(4.0), stable_scheme(0.5)
    via_path = simulate_cox_path(jumps, clock, TimeGrid.uniform(8), rng, N).at(1.0)
    direct = simulate_cox_marginal(jumps, clock, rng, N)
    assert ks_two_sample(via_path, direct, "marginal").statistic < 0.02


def test_cox_increments_uncorrelated(rng):
    path = simulate_cox_path(normal_jumps(1.0, 1.0), gamma_scheme(2.0, 1.0), TimeGrid.uniform(4),
                             rng, 100_000)
    inc = np.diff(path.values, axis=-1)
    r = np.corrcoef(inc[:, 0], inc[:, 2])[0, 1]
    assert abs(r) < 4 / math.sqrt(len(inc))


def test_compound_poisson_rejects_decreasing_intensity(rng):
    bad = SamplePath(TimeGrid.uniform(2), np.array([0.0, 2.0, 1.0]))
    with pytest.raises(ValueError):
        simulate_compound_poisson(unit_jumps(), bad, rng)


def test_scalar_marginal(rng):
    assert isinstance(simulate_cox_marginal(unit_jumps(), deterministic_scheme(), rng), float)


# ---------------------------------------------------------------- structural checks


@pytest.mark.parametrize("t1, t2", [(0.0, 0.5), (0.25, 0.75), (0.6, 0.7)])
def test_increment_stationarity(t1, t2, rng):
    rep = increment_stationarity_check(rademacher_jumps(1.0), stable_scheme(0.5), t1, t2, N, rng)
    assert rep.statistic < 0.02


def test_increment_stationarity_validation(rng):
    with pytest.raises(ValueError):
        increment_stationarity_check(unit_jumps(), gamma_scheme(), 0.5, 0.5, 10, rng)


@pytest.mark.parametrize("t", [0.25, 0.5, 0.9])
def test_self_similarity(t, rng):
    assert self_similarity_check(stable_scheme(0.5), t, N, rng).statistic < 0.02
    with pytest.raises(TypeError):
        self_similarity_check(gamma_scheme(), t, 10, rng)


@pytest.mark.parametrize("scheme", [gamma_scheme(2.0, 1.0), ig_scheme(1.0, 2.0),
                                    stable_scheme(0.6)])
def test_cf_power(scheme, rng):
    res = cf_power_check(scheme, 0.3, [0.1, 0.5, 1.0], N, rng)
    assert res["max_z"] < 4.0


def test_cf_power_detects_non_levy_clock(rng):
    # a clock that is L(t) = t * L(1) is not a Levy process
    class Frozen(StableSub):
        def increments(self, dt, rng, size):
            dt = np.asarray(dt, dtype=float)
            if dt.ndim == 0:
                return super().increments(dt, rng, size)
            return super().increments(1.0, rng, size[:-1] + (1,)) * dt

    res = cf_power_check(SubordinatorScheme(Frozen(0.5)), 0.3, [0.5, 1.0], N, rng)
    assert res["max_z"] > 6.0
