import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from imgrand.special import (binomial_tail, inv_norm_cdf, norm_cdf, pass_count_moments,
                             type_one_error_bound)
from oracles import bisect_quantile, exact_binomial_cdf

QUANTILES = [1e-6, 1e-4, 0.001, 0.025, 0.1, 0.3, 0.5, 0.77, 0.975, 1 - 1e-6]


def test_median_is_zero():
    assert inv_norm_cdf(0.5) == 0.0


def test_two_sided_five_percent():
    # Bisection oracle: -1.959963984540...
    assert inv_norm_cdf(0.025) == pytest.approx(bisect_quantile(0.025), abs=1e-9)
    assert round(inv_norm_cdf(0.025), 6) == -1.959964
    assert round(inv_norm_cdf(0.975), 6) == 1.959964


@pytest.mark.parametrize("q", QUANTILES)
def test_matches_bisection(q):
    assert abs(inv_norm_cdf(q) - bisect_quantile(q)) <= 1e-9


@pytest.mark.parametrize("q", [0.001, 0.025, 0.3])
def test_antisymmetric(q):
    assert inv_norm_cdf(q) == pytest.approx(-inv_norm_cdf(1 - q), abs=1e-9)


@given(st.floats(min_value=1e-10, max_value=1 - 1e-10))
def test_round_trip_through_cdf(q):
    assert norm_cdf(inv_norm_cdf(q)) == pytest.approx(q, rel=1e-9, abs=1e-15)


@pytest.mark.parametrize("q", [0.0, 1.0, -0.1, 1.5, float("nan")])
def test_rejects_out_of_range(q):
    with pytest.raises(ValueError):
        inv_norm_cdf(q)


def test_binomial_tail_constant():
    assert binomial_tail(1000, 0.95, 949) == pytest.approx(0.4625, abs=1e-4)


def test_binomial_full_support():
    assert binomial_tail(1, 0.5, 1) == 1.0


@pytest.mark.parametrize("n,p,k", [(10, 0.3, 3), (20, 0.95, 17), (50, 0.5, 0), (200, 0.05, 9)])
def test_binomial_against_exact_rationals(n, p, k):
    assert binomial_tail(n, p, k) == pytest.approx(exact_binomial_cdf(n, p, k), abs=1e-12)


@given(st.integers(1, 300), st.floats(0.01, 0.99), st.data())
def test_binomial_tail_is_a_cdf(n, p, data):
    k = data.draw(st.integers(0, n - 1))
    lo, hi = binomial_tail(n, p, k), binomial_tail(n, p, k + 1)
    assert 0.0 <= lo <= hi <= 1.0


def test_pass_count_moments():
    assert pass_count_moments(0.05, 1000) == pytest.approx((950, 47.5))
    assert pass_count_moments(0.5, 2) == pytest.approx((1, 0.5))
    assert pass_count_moments(0.05, 1) == pytest.approx((0.95, 0.0475))


def test_type_one_error():
    single = binomial_tail(1000, 0.95, 949)
    assert type_one_error_bound(0.05, 1000, 1) == pytest.approx(single)
    assert type_one_error_bound(0.05, 1000, 2) == pytest.approx(0.4625**2, abs=1e-4)
    assert round(type_one_error_bound(0.05, 1000, 2), 4) == 0.2139
    assert type_one_error_bound(0.05, 1000, 10) < 5e-4


def test_type_one_error_shrinks_with_rounds():
    vals = [type_one_error_bound(0.05, 1000, t) for t in (1, 5, 10, 50)]
    assert vals == sorted(vals, reverse=True)
    assert vals[-1] < 1e-15
