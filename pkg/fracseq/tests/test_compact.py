# Licensed under a 3-clause BSD style license - see LICENSE.rst
import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from astropy.utils.data import get_pkg_data_filename

from ..classify import group_norm, sup_norm
from ..compact import (HMNC_ROWS, CompactnessStatus, _trail_limit,
                       hmnc_bounds, is_compact, report_notes)
from ..config import ToleranceConfig
from ..exceptions import UnsupportedSpaceError
from ..limits import LimitStatus
from ..matrix import MatrixSpec
from ..spaces import CODOMAINS, DOMAINS

PAIRS = [(frm.value, to.value) for frm in DOMAINS for to in CODOMAINS]


def _bundled(name):
    with open(get_pkg_data_filename('data/' + name,
                                    package='fracseq')) as handle:
        return MatrixSpec.from_dict(json.load(handle))


def _assert_nonincreasing(trail):
    values = [t for _, t in trail]
    assert all(b <= a for a, b in zip(values, values[1:]))


@pytest.mark.parametrize(('from_space', 'to_space'), PAIRS)
def test_finite_rank_is_compact(rng, from_space, to_space):
    specs = [_bundled('finite_rank.json')]
    for _ in range(3):
        rows = [rng.normal(size=rng.integers(1, 6)).tolist()
                for _ in range(rng.integers(1, 13))]
        specs.append(MatrixSpec.finite_rank(rows))
    for spec in specs:
        for alpha in (0, 0.5):
            verdict = is_compact(alpha, spec, from_space, to_space)
            assert verdict.verdict is CompactnessStatus.COMPACT
            _assert_nonincreasing(verdict.trail)


def test_identity_is_not_compact():
    bounds = hmnc_bounds(0, MatrixSpec.identity(), 'c0d', 'c0')
    assert bounds.formula_row == 3
    assert bounds.lower == pytest.approx(1, abs=1e-9)
    assert bounds.upper == pytest.approx(1, abs=1e-9)
    verdict = is_compact(0, MatrixSpec.identity(), 'c0d', 'c0')
    assert verdict.verdict is CompactnessStatus.NOT_COMPACT
    assert verdict.clause == 'iff'
    _assert_nonincreasing(verdict.trail)


def test_geometric_diagonal_is_compact():
    spec = _bundled('geometric_diagonal.json')
    verdict = is_compact(0, spec, 'c0d', 'c0')
    assert verdict.verdict is CompactnessStatus.COMPACT
    radii = np.array([r for r, _ in verdict.trail], dtype=float)
    values = [t for _, t in verdict.trail]
    assert_allclose(values, 2.0 ** -(radii + 1), rtol=0, atol=1e-9)
    _assert_nonincreasing(verdict.trail)


def test_geometric_generator_diagonal():
    spec = MatrixSpec.diagonal(lambda n: 2.0 ** -n)
    verdict = is_compact(0, spec, 'c0d', 'c0')
    assert verdict.verdict is CompactnessStatus.COMPACT
    radii = np.array([r for r, _ in verdict.trail], dtype=float)
    assert radii[0] == 8
    values = [t for _, t in verdict.trail]
    assert_allclose(values, 2.0 ** -(radii + 1), rtol=0, atol=1e-9)
    bounds = hmnc_bounds(0, spec, 'c0d', 'c0')
    assert bounds.upper <= 1e-9


def test_short_truncation_keeps_cut_points():
    tol = ToleranceConfig(window=2, rows=4)
    bounds = hmnc_bounds(0, MatrixSpec.identity(), 'c0d', 'c0', tol)
    assert [r for r, _ in bounds.trail] == [1, 2, 3]
    assert bounds.upper == pytest.approx(1.0)
    verdict = is_compact(0, MatrixSpec.identity(), 'c0d', 'c0', tol)
    assert verdict.verdict is CompactnessStatus.NOT_COMPACT
    finite = MatrixSpec.finite_rank([[1.0, 2.0]])
    assert is_compact(0, finite, 'c0d', 'c0', tol).verdict is \
        CompactnessStatus.COMPACT


def test_empty_trail_is_undetermined(tol):
    estimate = _trail_limit((), LimitStatus.CONVERGED, tol)
    assert estimate.status is LimitStatus.UNDETERMINED


@pytest.mark.parametrize(('from_space', 'to_space'), PAIRS)
def test_bounds_never_exceed_operator_norm(rng, from_space, to_space):
    specs = [_bundled('finite_rank.json')]
    if to_space != 'l1':
        specs.append(_bundled('geometric_diagonal.json'))
    for _ in range(3):
        rows = [rng.normal(size=rng.integers(1, 6)).tolist()
                for _ in range(rng.integers(1, 10))]
        specs.append(MatrixSpec.finite_rank(rows))
    for spec in specs:
        for alpha in (0, 0.5):
            bounds = hmnc_bounds(alpha, spec, from_space, to_space)
            if to_space == 'l1':
                norm = group_norm(alpha, spec, from_space)
            else:
                norm = sup_norm(alpha, spec, from_space)
            assert bounds.upper <= norm.upper * (1 + 1e-12) + 1e-12


def test_zero_matrix_bounds():
    bounds = hmnc_bounds(0.5, MatrixSpec.zero(), 'cd', 'c')
    assert (bounds.lower, bounds.upper) == (0.0, 0.0)
    assert bounds.formula_row == 6


def test_one_sided_clause():
    verdict = is_compact(0, MatrixSpec.identity(), 'linfd', 'linf')
    assert verdict.clause == 'if'
    assert verdict.verdict is CompactnessStatus.UNDETERMINED


@pytest.mark.parametrize(('from_space', 'to_space'), PAIRS)
def test_verdict_agrees_with_upper_bound(from_space, to_space):
    for spec in (MatrixSpec.identity(), _bundled('geometric_diagonal.json'),
                 MatrixSpec.zero()):
        bounds = hmnc_bounds(0, spec, from_space, to_space)
        verdict = is_compact(0, spec, from_space, to_space)
        _assert_nonincreasing(bounds.trail)
        assert bounds.lower <= bounds.upper
        if verdict.verdict is CompactnessStatus.COMPACT:
            assert bounds.upper <= bounds.factors[1] * 1e-8
        if verdict.clause == 'iff' and bounds.upper <= 1e-12:
            assert verdict.verdict is CompactnessStatus.COMPACT


def test_row_table():
    rows = sorted(row for row, _, _, _ in HMNC_ROWS.values())
    assert rows == list(range(1, 9))
    assert hmnc_bounds(0, MatrixSpec.zero(), 'c0d', 'l1').factors == (1.0,
                                                                       4.0)


def test_subset_rows_use_group_sums():
    spec = MatrixSpec.diagonal([0.0] * 9 + [1.0, -1.0])
    bounds = hmnc_bounds(0, spec, 'c0d', 'l1')
    # rows 9 and 10 lie beyond r = 8; their best subset sums to 2
    assert bounds.trail[0] == (8, 2.0)


def test_rejects_classical_domain():
    with pytest.raises(UnsupportedSpaceError):
        is_compact(0, MatrixSpec.zero(), 'c0', 'c0')


def test_notes():
    assert set(report_notes('c')) == {'hmnc-row-norm', 'beta-sign'}
    assert set(report_notes('l1')) == {'hmnc-row-norm'}
