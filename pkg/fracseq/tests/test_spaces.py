# Licensed under a 3-clause BSD style license - see LICENSE.rst
import numpy as np
import pytest
from numpy.testing import assert_allclose

from ..exceptions import UnsupportedSpaceError, UsageError
from ..fracop import apply_inverse
from ..spaces import (MembershipStatus, SpaceId, as_codomain, as_domain,
                      basis_sequences, classify_sequence, delta_norm,
                      schauder_reconstruct)


@pytest.mark.parametrize(('alpha', 'x', 'expected'), [
    (0, [1.0, -7.0, 2.0], 7.0),
    (1, [3.0, 4.0, 4.0, 4.0], 3.0),
    (0.5, [1.0] * 5, 1.0),
])
def test_delta_norm(alpha, x, expected):
    assert delta_norm(alpha, x) == pytest.approx(expected)


def test_space_tags():
    assert SpaceId.from_tag('C0D') is SpaceId.C0_DELTA
    assert SpaceId.C_DELTA.classical is SpaceId.C
    with pytest.raises(UsageError):
        SpaceId.from_tag('l2')
    with pytest.raises(UnsupportedSpaceError):
        as_domain('c0')
    with pytest.raises(UnsupportedSpaceError):
        as_codomain('linfd')


def test_convergent_differences():
    verdict = classify_sequence(1, np.arange(64.0))
    assert verdict.space is SpaceId.C_DELTA
    assert verdict.is_member
    assert verdict.limit == pytest.approx(1.0)


def test_null_sequence():
    verdict = classify_sequence(0, 0.5 ** np.arange(64))
    assert verdict.space is SpaceId.C0_DELTA
    assert verdict.is_member
    assert verdict.limit is None


def test_geometric_growth_is_undetermined():
    verdict = classify_sequence(0.5, 2.0 ** np.arange(64))
    assert verdict.space is SpaceId.LINF_DELTA
    assert verdict.status is MembershipStatus.UNDETERMINED
    assert verdict.diagnostics['growing']


def test_bounded_oscillation():
    x = apply_inverse(0.5, np.cos(np.arange(64.0))).terms
    verdict = classify_sequence(0.5, x)
    assert verdict.space is SpaceId.LINF_DELTA
    assert verdict.is_member


def test_requested_space():
    x = np.arange(64.0)
    assert classify_sequence(1, x, space='linfd').is_member
    assert classify_sequence(1, x, space='c0d').status is \
        MembershipStatus.NON_MEMBER_EVIDENCE
    null = classify_sequence(0, 0.5 ** np.arange(64), space='cd')
    assert null.is_member and null.limit == 0.0
    grows = classify_sequence(0.5, 2.0 ** np.arange(64), space='linfd')
    assert grows.status is MembershipStatus.NON_MEMBER_EVIDENCE


def test_classify_preconditions(tol):
    with pytest.raises(UsageError):
        classify_sequence(0.5, np.ones(2 * tol.window - 1), tol)
    with pytest.raises(UsageError):
        classify_sequence(0.5, np.ones(64), tol, space='c0')


def test_basis_at_zero_order():
    basis = basis_sequences(0, 6)
    assert_allclose(basis.columns, np.eye(6))
    assert_allclose(basis.element(2), np.eye(6)[2])


def test_constant_basis_element():
    assert_allclose(basis_sequences(1, 6).constant, np.arange(1, 7))


def test_reconstruct_null(rng):
    for alpha in (0.5, 2 / 3, 1.5):
        x = rng.normal(size=40)
        rebuilt = schauder_reconstruct(alpha, x, 'c0d')
        assert_allclose(rebuilt.terms, x, rtol=0, atol=1e-9)


def test_reconstruct_convergent():
    y = 2.0 + 0.5 ** np.arange(64)
    x = apply_inverse(0.5, y).terms
    rebuilt = schauder_reconstruct(0.5, x, SpaceId.C_DELTA)
    assert_allclose(rebuilt.terms, x, rtol=1e-9)


def test_reconstruct_rejects():
    with pytest.raises(UnsupportedSpaceError):
        schauder_reconstruct(0.5, np.ones(40), 'linfd')
    with pytest.raises(UnsupportedSpaceError):
        schauder_reconstruct(0.5, np.ones(40), 'c0')
    with pytest.raises(UsageError):
        schauder_reconstruct(0.5, 2.0 ** np.arange(64), 'cd')


@pytest.mark.parametrize('alpha', [0, 0.5, 2 / 3, 1.5, -0.5])
def test_delta_norm_is_a_norm(rng, alpha):
    for _ in range(20):
        x = rng.normal(size=30)
        y = rng.normal(size=30)
        scale = rng.uniform(-5, 5)
        assert delta_norm(alpha, scale * x) == pytest.approx(
            abs(scale) * delta_norm(alpha, x), rel=1e-12)
        assert delta_norm(alpha, x + y) <= \
            (delta_norm(alpha, x) + delta_norm(alpha, y)) * (1 + 1e-12)
        assert delta_norm(alpha, x) > 0
    assert delta_norm(alpha, np.zeros(30)) == 0.0


def test_growth_flag_needs_window_steps(tol):
    y = np.full(64, 100.0)
    y[-tol.window:] = np.arange(2.0, tol.window + 2)
    assert not classify_sequence(0, y, tol).diagnostics['growing']
    y[-tol.window - 1] = 1.5
    assert classify_sequence(0, y, tol).diagnostics['growing']


@pytest.mark.parametrize(('alpha', 'make'), [
    (1, lambda n: np.arange(float(n))),
    (0, lambda n: 0.5 ** np.arange(n)),
    (0.5, lambda n: apply_inverse(0.5, np.cos(np.arange(float(n)))).terms),
    (0.5, lambda n: 2.0 ** np.arange(n)),
])
def test_verdict_stable_on_doubled_truncation(alpha, make):
    short = classify_sequence(alpha, make(64))
    long = classify_sequence(alpha, make(128))
    assert (short.space, short.status) == (long.space, long.status)
    if short.limit is None:
        assert long.limit is None
    else:
        assert long.limit == pytest.approx(short.limit)
