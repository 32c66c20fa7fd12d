# Licensed under a 3-clause BSD style license - see LICENSE.rst
import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from astropy.utils.data import get_pkg_data_filename

from ..config import ToleranceConfig
from ..exceptions import UsageError
from ..limits import LimitStatus
from ..matrix import MatrixKind, MatrixSpec, PlanKind, RowPlan, TermSource


def test_term_source():
    src = TermSource.coerce({'terms': [1, 2], 'fill': 0.5})
    assert src.value(1) == 2.0 and src.value(10) == 0.5
    assert_allclose(src.values(1, 4), [2.0, 0.5, 0.5])
    assert src.support is None
    assert TermSource([0, 3, 0]).support == 2
    squares = TermSource.coerce(lambda i: i * i)
    assert_allclose(squares.values(2, 5), [4, 9, 16])
    with pytest.raises(UsageError):
        TermSource.coerce({'values': []})


def test_explicit_rows_repeat():
    m = MatrixSpec.explicit([[1.0], [-1.0]])
    assert m.entry(4, 0) == 1.0 and m.entry(5, 0) == -1.0
    assert m.row_plan(64).kind is PlanKind.PERIODIC


def test_finite_rank_vanishes():
    m = MatrixSpec.finite_rank([[1, 2], [3]])
    assert m.vanishes_from == 2
    assert m.row(5, 3).tolist() == [0, 0, 0]
    plan = m.row_plan(64)
    assert plan.kind is PlanKind.VANISHING and plan.indices == (0, 1)


def test_band_entries():
    m = MatrixSpec.band([0, 1], [1.0, -1.0])
    assert m.row(2, 5).tolist() == [0, 0, 1, -1, 0]
    assert m.row_support(2) == 4
    assert m.row_plan(64).kind is PlanKind.OPEN


def test_band_negative_offset():
    m = MatrixSpec.band([-1], [2.0])
    assert m.row(0, 3).tolist() == [0, 0, 0]
    assert m.row(1, 3).tolist() == [2, 0, 0]


def test_rank_one():
    m = MatrixSpec.rank_one([1, 2], {'terms': [1], 'fill': 1})
    assert m.row(1, 3).tolist() == [2, 2, 2]
    assert m.row_support(1) is None
    assert m.vanishes_from == 2


def test_identity_and_diagonal():
    ident = MatrixSpec.identity()
    assert ident.entry(7, 7) == 1.0 and ident.entry(7, 6) == 0.0
    assert ident.vanishes_from is None
    diag = MatrixSpec.diagonal([1.0, 0.5])
    assert diag.vanishes_from == 2


def test_specs_are_hashable():
    a = MatrixSpec.finite_rank([[1, 2]])
    b = MatrixSpec.from_dict({'kind': 'finite_rank', 'rows': [[1, 2]]})
    assert a == b and hash(a) == hash(b)


@pytest.mark.parametrize('name', ['finite_rank.json', 'identity.json',
                                  'geometric_diagonal.json',
                                  'alternating.json'])
def test_bundled_matrices(name):
    with open(get_pkg_data_filename('data/' + name,
                                    package='fracseq')) as handle:
        data = json.load(handle)
    spec = MatrixSpec.from_dict(data)
    assert MatrixSpec.from_dict(spec.to_dict()) == spec


@pytest.mark.parametrize('data', [
    [1, 2],
    {'rows': [[1]]},
    {'kind': 'sparse'},
    {'kind': 'band', 'offsets': [0]},
    {'kind': 'diagonal', 'terms': [1], 'extra': 1},
    {'kind': 'band', 'offsets': [0, 0], 'values': [1, 2]},
    {'kind': 'explicit', 'rows': []},
    {'kind': 'zero', 'truncate': {'depth': 3}},
])
def test_malformed_specs(data):
    with pytest.raises(UsageError):
        MatrixSpec.from_dict(data)


def test_truncation_entry():
    m = MatrixSpec.from_dict({'kind': 'zero',
                              'truncate': {'rows': 64, 'cols': 16}})
    assert m.truncation == {'cols': 16, 'rows': 64}
    assert m.kind is MatrixKind.ZERO


def test_vanishing_plan():
    tol = ToleranceConfig()
    plan = RowPlan(PlanKind.VANISHING, (0, 1, 2), 3)
    values = [3.0, 1.0, 2.0]
    assert plan.limit(values, tol).value == 0.0
    assert plan.sup(values, tol).value == 3.0
    assert plan.series(values, tol).value == 6.0
    assert plan.series(values, tol, beyond=1.0).status is \
        LimitStatus.DIVERGING
    trail = plan.tail_trail(values, tol)
    assert [r for r, _ in trail] == [8, 16, 32, 64]
    assert all(t == 0.0 for _, t in trail)


def test_periodic_plan():
    tol = ToleranceConfig()
    plan = RowPlan(PlanKind.PERIODIC, (0, 1), 2)
    assert plan.limit([1.0, -1.0], tol).status is LimitStatus.UNDETERMINED
    assert plan.limit([2.0, 2.0], tol).value == 2.0
    assert math.isinf(plan.series([1.0, -1.0], tol).value)


def test_open_plan_checkpoints():
    tol = ToleranceConfig()
    rows = tol.rows
    plan = MatrixSpec.identity().row_plan(rows)
    assert plan.indices[-2:] == (2 * rows, 4 * rows)
    assert plan.checkpoints == (rows // 4, rows // 2, rows - 1, rows,
                                rows + 1)
    values = np.ones(len(plan.indices))
    assert plan.limit(values, tol).converged
    growing = np.append(np.arange(rows, dtype=float), [2 * rows, 4 * rows])
    assert plan.limit(growing, tol).status is LimitStatus.DIVERGING
    assert plan.sup(growing, tol).status is LimitStatus.DIVERGING
    decaying = 1.0 / (1.0 + np.asarray(plan.indices, dtype=float))
    trail = [t for _, t in plan.tail_trail(decaying, tol)]
    assert trail == sorted(trail, reverse=True)
