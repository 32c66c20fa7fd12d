# Licensed under a 3-clause BSD style license - see LICENSE.rst
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.special import comb, gammaln, gammasgn

from ..coeffs import (FracOrder, convolve, frac_coeffs, inverse_coeffs,
                      tail_sum_bound)
from ..exceptions import PoleError, UsageError


def _closed_form(alpha, n):
    """(-1)^i Gamma(alpha + 1) / (i! Gamma(alpha - i + 1)) via log-Gamma."""
    i = np.arange(n, dtype=float)
    arg = alpha - i + 1
    logs = gammaln(alpha + 1) - gammaln(i + 1) - gammaln(arg)
    signs = (-1.0) ** i * gammasgn(alpha + 1) * gammasgn(arg)
    return signs * np.exp(logs)


@pytest.mark.parametrize(('alpha', 'expected'), [
    ('1/2', [1, -1 / 2, -1 / 8, -1 / 16, -5 / 128]),
    ('-1/2', [1, 1 / 2, 3 / 8, 5 / 16, 35 / 128]),
    ('2/3', [1, -2 / 3, -1 / 9, -4 / 81, -7 / 243]),
])
def test_coefficient_expansions(alpha, expected):
    assert_allclose(frac_coeffs(alpha, 5).terms, expected, rtol=1e-12)


def test_doctest_values():
    assert frac_coeffs(0.5, 5).tolist() == [1.0, -0.5, -0.125, -0.0625,
                                            -0.0390625]


@pytest.mark.parametrize('alpha', [0.5, -0.5, 2 / 3, 1.7, -1.3, 0.01])
def test_against_log_gamma(alpha):
    assert_allclose(frac_coeffs(alpha, 40).terms, _closed_form(alpha, 40),
                    rtol=1e-10, atol=1e-14)


def test_zero_order_is_identity():
    terms = frac_coeffs(0, 10).terms
    assert terms[0] == 1
    assert np.all(terms[1:] == 0)


@pytest.mark.parametrize('alpha', [1, 2, 3])
def test_integer_order_terminates(alpha):
    terms = frac_coeffs(alpha, 12).terms
    assert np.all(terms[alpha + 1:] == 0)
    assert np.count_nonzero(terms) == alpha + 1
    i = np.arange(alpha + 1)
    expected = (-1.0) ** i * comb(alpha, i, exact=False)
    assert_allclose(terms[:alpha + 1], expected, rtol=1e-12, atol=0)


def test_first_difference():
    assert frac_coeffs(1, 4).tolist() == [1.0, -1.0, 0.0, 0.0]
    assert inverse_coeffs(1, 4).tolist() == [1.0, 1.0, 1.0, 1.0]


@pytest.mark.parametrize('alpha', [-1, -2, -7])
def test_pole_names_order(alpha):
    with pytest.raises(PoleError, match=str(alpha)):
        frac_coeffs(alpha, 5)


@pytest.mark.parametrize('value', [math.inf, math.nan])
def test_non_finite_order(value):
    with pytest.raises(PoleError):
        FracOrder(value)


def test_order_parsing():
    assert FracOrder.parse('2/3').value == pytest.approx(2 / 3)
    assert FracOrder.parse(' 0.25 ').value == 0.25
    with pytest.raises(UsageError):
        FracOrder.parse('two')
    with pytest.raises(UsageError):
        FracOrder('0.5')


def test_order_sum_hits_pole():
    with pytest.raises(PoleError):
        FracOrder(-0.5) + FracOrder(-0.5)


def test_series_is_read_only():
    series = frac_coeffs(0.5, 5)
    with pytest.raises(ValueError):
        series.terms[0] = 2.0


def test_length_validation():
    with pytest.raises(UsageError):
        frac_coeffs(0.5, 0)
    with pytest.raises(UsageError):
        convolve([1, 2], [1, 2, 3])


def test_semigroup_and_inverse_pairs(rng):
    n = 64
    unit = np.zeros(n)
    unit[0] = 1.0
    checked = 0
    while checked < 100:
        a, b = rng.uniform(-2, 2, size=2)
        if any(v < 0 and abs(v - round(v)) < 1e-3 for v in (a, b, a + b)):
            continue
        ca, cb = frac_coeffs(a, n), frac_coeffs(b, n)
        scale = max(1.0, np.abs(frac_coeffs(a + b, n).terms).max())
        assert_allclose(convolve(ca, cb), frac_coeffs(a + b, n).terms,
                        rtol=0, atol=1e-10 * scale)
        assert_allclose(convolve(ca, inverse_coeffs(a, n)), unit,
                        rtol=0, atol=1e-10 * max(1.0, np.abs(ca.terms).max()
                                                 * n))
        checked += 1


def test_inverse_accepts_positive_integers():
    terms = inverse_coeffs(2, 6).terms
    assert_allclose(terms, np.arange(1, 7))


def test_tail_sum_exact_for_integer_order():
    bound = tail_sum_bound(frac_coeffs(2, 10))
    assert bound.settled and not bound.unbounded
    assert bound.tail == 0
    assert bound.total == 4


def test_tail_sum_convergent():
    bound = tail_sum_bound(frac_coeffs(0.5, 128))
    assert not bound.unbounded
    assert bound.exponent == pytest.approx(1.5)
    assert 0 < bound.tail < 1
    # sum_i |c_i(1/2)| = 2
    assert bound.total == pytest.approx(2.0, rel=1e-3)


def test_tail_sum_divergent():
    bound = tail_sum_bound(frac_coeffs(-0.5, 128))
    assert bound.unbounded
    assert bound.exponent == pytest.approx(0.5)
    assert math.isinf(bound.total)
