import itertools
import math

import pytest
from scipy import integrate, optimize, special

from qnnpr.errors import RejectedInput
from qnnpr.fdist import betainc, f_cdf, f_quantile


def f_density(x, d1, d2):
    logc = (math.lgamma((d1 + d2) / 2) - math.lgamma(d1 / 2) - math.lgamma(d2 / 2)
            + (d1 / 2) * math.log(d1 / d2))
    return math.exp(logc + (d1 / 2 - 1) * math.log(x) - (d1 + d2) / 2 * math.log1p(d1 * x / d2))


def upper_tail_by_quadrature(q, d1, d2):
    return integrate.quad(f_density, q, math.inf, args=(d1, d2), epsabs=1e-12, epsrel=1e-10, limit=200)[0]


def quantile_by_quadrature(alpha, d1, d2):
    """Independent oracle: quadrature of the density plus bracketing root find."""
    return optimize.brentq(lambda q: upper_tail_by_quadrature(q, d1, d2) - alpha, 1e-9, 1e4, xtol=1e-12)


def test_median_of_symmetric_f_is_one():
    for d in range(1, 11):
        assert abs(f_quantile(0.5, d, d) - 1.0) < 1e-8


@pytest.mark.parametrize("d1, d2, expected", [(1, 10, 4.9646), (2, 10, 4.1028)])
def test_critical_values_against_quadrature(d1, d2, expected):
    oracle = quantile_by_quadrature(0.05, d1, d2)
    assert oracle == pytest.approx(expected, abs=1e-4)
    assert abs(f_quantile(0.05, d1, d2) - oracle) < 1e-3
    assert abs(f_quantile(0.05, d1, d2) - oracle) < 1e-8


def test_quantile_inverts_cdf():
    for a, d1, d2 in itertools.product((0.01, 0.05, 0.5, 0.9), range(1, 11), range(1, 11)):
        q = f_quantile(a, d1, d2)
        assert abs(f_cdf(q, d1, d2) - (1 - a)) < 1e-8


def test_betainc_against_scipy():
    for a, b, x in itertools.product((0.5, 1, 2.5, 7), (0.5, 3, 12), (0.01, 0.3, 0.5, 0.8, 0.999)):
        assert betainc(a, b, x) == pytest.approx(special.betainc(a, b, x), abs=1e-13)


def test_cdf_against_quadrature():
    for d1, d2, x in [(1, 1, 0.5), (3, 7, 2.0), (10, 4, 0.3), (2, 30, 5.0)]:
        assert f_cdf(x, d1, d2) == pytest.approx(1 - upper_tail_by_quadrature(x, d1, d2), abs=1e-9)


def test_edges_and_errors():
    assert f_cdf(0, 3, 4) == 0.0 and f_cdf(-1, 3, 4) == 0.0
    assert betainc(2, 3, 0.0) == 0.0 and betainc(2, 3, 1.0) == 1.0
    for bad in (0, 1, -0.1, 1.5):
        with pytest.raises(RejectedInput):
            f_quantile(bad, 2, 3)
    with pytest.raises(RejectedInput):
        f_quantile(0.05, 0, 3)
