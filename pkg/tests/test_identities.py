import math

import numpy as np
import pytest
from scipy import stats

from coxlevy.distributions import (StableParams, stable_product_check, stable_sample,
                                   stable_sample_via_mixture, weibull_mixed_exponential_check,
                                   weibull_mixing_sample)
from coxlevy.ks import ks_one_sample, ks_two_sample

N = 50_000


@pytest.mark.parametrize("alpha", [0.6, 1.0, 1.5, 1.9])
def test_scale_mixture_route(alpha, rng):
    direct = stable_sample(StableParams(alpha, 0.0), rng, N)
    mixed = stable_sample_via_mixture(alpha, rng, N)
    assert ks_two_sample(direct, mixed, "direct").statistic < 0.015


def test_mixture_without_factor_two_is_off(rng):
    # N(0, V) alone has the law of Z / sqrt(2): detectably different at this N
    v = stable_sample(StableParams(0.75, 1.0), rng, N)
    naive = np.sqrt(v) * rng.standard_normal(N)
    assert ks_two_sample(naive, stable_sample(StableParams(1.5, 0.0), rng, N), "z").statistic > 0.03


def test_mixture_route_rejects_alpha_two(rng):
    with pytest.raises(ValueError):
        stable_sample_via_mixture(2.0, rng, 10)


@pytest.mark.parametrize("alpha, alpha_prime", [(2.0, 0.5), (1.0, 0.5), (1.5, 0.8), (0.8, 0.6)])
def test_stable_product_identity(alpha, alpha_prime, rng):
    rep = stable_product_check(alpha, alpha_prime, N, rng)
    assert rep.statistic < 0.015


def test_product_identity_detects_wrong_exponent(rng):
    # Z_{2,0} Z_{0.5,1}^(1/2) is Cauchy; pairing with the wrong power is not
    z = stable_sample(StableParams(2.0, 0.0), rng, N)
    u = stable_sample(StableParams(0.5, 1.0), rng, N)
    wrong = z * u ** 0.25
    rep = ks_one_sample(wrong, stats.cauchy.cdf, "cauchy")
    assert rep.statistic > 4 * rep.dkw_99


def test_weibull_mixing_law(rng):
    # Laplace transform of the mixing variable is exp(-z^nu)
    nu = 0.6
    m = weibull_mixing_sample(nu, rng, 200_000)
    for z in (0.3, 1.0, 2.5):
        emp = np.exp(-z * m)
        assert abs(emp.mean() - math.exp(-z ** nu)) < 4 * emp.std() / math.sqrt(len(m))
    assert np.all(weibull_mixing_sample(1.0, rng, 10) == 1.0)


@pytest.mark.parametrize("nu", [1.0, 0.5, 0.8])
def test_weibull_mixed_exponential(nu, rng):
    rep = weibull_mixed_exponential_check(nu, N, rng)
    assert rep.statistic < 0.015


def test_weibull_rejects_bad_power(rng):
    with pytest.raises(ValueError):
        weibull_mixing_sample(1.5, rng, 10)
