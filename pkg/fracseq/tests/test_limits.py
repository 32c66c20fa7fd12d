# Licensed under a 3-clause BSD style license - see LICENSE.rst
import math

import pytest

from ..limits import LimitEstimate, LimitStatus

EPS = 1e-8


def test_converged_samples():
    est = LimitEstimate.from_samples([0.9, 1.0, 1.0 + 1e-10, 1.0], EPS)
    assert est.converged
    assert est.value == 1.0
    assert est.residual == pytest.approx(1e-10)


def test_diverging_samples():
    est = LimitEstimate.from_samples([1.0, 2.0, 4.0], EPS)
    assert est.status is LimitStatus.DIVERGING


def test_slow_growth_is_undetermined():
    est = LimitEstimate.from_samples([1.0, 1.1, 1.2], EPS)
    assert est.status is LimitStatus.UNDETERMINED


def test_oscillation_is_undetermined():
    est = LimitEstimate.from_samples([1.0, -1.0, 1.0], EPS)
    assert est.status is LimitStatus.UNDETERMINED


def test_too_few_samples():
    est = LimitEstimate.from_samples([1.0, 1.0], EPS)
    assert est.status is LimitStatus.UNDETERMINED
    assert math.isinf(est.residual)


def test_infinite_sample_diverges():
    est = LimitEstimate.from_samples([1.0, 2.0, math.inf], EPS)
    assert est.status is LimitStatus.DIVERGING


def test_bounded_uses_relative_tolerance():
    sups = [1e6, 1e6 + 1e-3, 1e6 + 2e-3]
    assert LimitEstimate.bounded(sups, EPS).converged
    assert not LimitEstimate.from_samples(sups, EPS).converged


def test_bounded_growth():
    est = LimitEstimate.bounded([1.0, 3.0, 9.0], EPS)
    assert est.status is LimitStatus.DIVERGING


def test_exact():
    est = LimitEstimate.exact(2)
    assert est.converged and est.residual == 0 and est.samples == (2.0,)


@pytest.mark.parametrize(('statuses', 'expected'), [
    ((), LimitStatus.CONVERGED),
    ((LimitStatus.CONVERGED, LimitStatus.UNDETERMINED),
     LimitStatus.UNDETERMINED),
    ((LimitStatus.UNDETERMINED, LimitStatus.DIVERGING),
     LimitStatus.DIVERGING),
])
def test_combine(statuses, expected):
    assert LimitStatus.combine(*statuses) is expected


def test_with_status_degrades():
    est = LimitEstimate.exact(1.0).with_status(LimitStatus.UNDETERMINED)
    assert est.status is LimitStatus.UNDETERMINED
    assert math.isinf(est.residual)
    same = LimitEstimate.exact(1.0)
    assert same.with_status(LimitStatus.CONVERGED) is same


def test_is_zero():
    assert LimitEstimate.exact(1e-12).is_zero(EPS)
    assert not LimitEstimate.exact(1e-3).is_zero(EPS)
    assert not LimitEstimate.undetermined((0.0,), 0.0).is_zero(EPS)
