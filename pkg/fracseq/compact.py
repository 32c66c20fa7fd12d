# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""
Hausdorff measure of noncompactness of matrix operators.

Every bound has the form ``f_low T <= ||L_A||_chi <= f_up T`` where ``T``
is the limit as ``r -> inf`` of a tail supremum over rows ``n > r`` of the
hat matrix. ``T(r)`` is sampled at the cut points of the row plan
(``r = 8, 16, 32, ...`` for long truncations); it is nonincreasing in
``r``, so its last sample bounds the limit from above. Without samples
nothing is known and the upper bound is infinite.
"""
import enum
import math
from dataclasses import dataclass

import numpy as np

from astropy import log

from .classify import subset_sup
from .limits import LimitEstimate, LimitStatus
from .matrix import PlanKind
from .notes import notes_for
from .spaces import SpaceId, as_codomain, as_domain
from .transform import analyze

__all__ = ['HMNC_ROWS', 'HmncBounds', 'CompactnessStatus',
           'CompactnessVerdict', 'hmnc_bounds', 'is_compact', 'report_notes']

# (codomain, c-domain?) -> (table row, lower factor, upper factor, criterion)
HMNC_ROWS = {
    (SpaceId.LINF, False): (1, 0.0, 1.0,
                            'lim_r sup_(n>r) sum_k |a^_nk|'),
    (SpaceId.LINF, True): (2, 0.0, 1.0,
                           'lim_r sup_(n>r) (sum_k |a^_nk| + |gamma_n|)'),
    (SpaceId.C0, False): (3, 1.0, 1.0,
                          'lim_r sup_(n>r) sum_k |a^_nk|'),
    (SpaceId.C0, True): (4, 1.0, 1.0,
                         'lim_r sup_(n>r) (sum_k |a^_nk| + |gamma_n|)'),
    (SpaceId.C, False): (5, 0.5, 1.0,
                         'lim_r sup_(n>r) sum_k |a^_nk - alpha^_k|'),
    (SpaceId.C, True): (6, 0.5, 1.0,
                        'lim_r sup_(n>r) (sum_k |b^_nk| + |delta_n|)'),
    (SpaceId.L1, False): (7, 1.0, 4.0,
                          'lim_r sup_(N>r) sum_k |sum_(n in N) a^_nk|'),
    (SpaceId.L1, True): (8, 1.0, 4.0,
                         'lim_r sup_(N>r) (sum_k |sum_(n in N) a^_nk| + '
                         '|sum_(n in N) gamma_n|)'),
}


@dataclass(frozen=True)
class HmncBounds:
    """
    Bounds on :math:`\\|L_A\\|_\\chi` from one row of the estimates table.

    ``trail`` holds ``(r, T(r))`` pairs and ``estimate`` the limit read
    from them.
    """

    lower: float
    upper: float
    formula_row: int
    factors: tuple
    trail: tuple
    estimate: LimitEstimate
    criterion: str

    @property
    def status(self):
        return self.estimate.status

    def to_dict(self):
        return {'lower': self.lower, 'upper': self.upper,
                'formula_row': self.formula_row,
                'factors': list(self.factors),
                'criterion': self.criterion,
                'status': self.status.value,
                'trail': [[r, t] for r, t in self.trail],
                'estimate': self.estimate.to_dict()}


def _padded_alpha(analysis, width):
    alpha = np.zeros(width)
    m = min(width, len(analysis.alpha_values))
    alpha[:m] = analysis.alpha_values[:m]
    return alpha


def _row_functional(analysis, row):
    """``(values, dependency statuses, beyond)`` for table rows 1-6."""
    l1 = analysis.values('l1')
    gamma = analysis.values('gamma')
    if row in (1, 3):
        return l1, (analysis.statuses('l1'),), 0.0
    if row in (2, 4):
        return (l1 + np.abs(gamma),
                (analysis.statuses('l1'), analysis.statuses('gamma')), 0.0)
    width = analysis.full_width
    alpha = _padded_alpha(analysis, width)
    b_abs = np.abs(analysis.hat_array(width) - alpha[None, :]).sum(axis=1)
    statuses = [analysis.statuses('hat'), analysis.alpha_status]
    beyond = float(np.abs(alpha).sum())
    if row == 5:
        return b_abs, tuple(statuses), beyond
    delta = analysis.delta
    statuses.extend([analysis.statuses('gamma'), analysis.beta.status])
    beyond_delta = abs(alpha.sum() + analysis.beta.value)
    return b_abs + np.abs(delta), tuple(statuses), beyond + beyond_delta


def _subset_trail(analysis, cdomain):
    plan = analysis.plan
    tol = analysis.tol
    items = analysis.hat_array(analysis.full_width)
    if cdomain:
        items = np.hstack([items, analysis.values('gamma')[:, None]])
    radii = plan.radii(tol.rows)
    if plan.kind is PlanKind.PERIODIC:
        value = math.inf if np.any(items != 0) else 0.0
        return tuple((r, value) for r in radii)
    index = np.asarray(plan.indices)
    values = [subset_sup(items[index > r], tol.subset_budget).value
              for r in radii]
    # a larger row set cannot have a smaller supremum
    values = np.maximum.accumulate(values[::-1])[::-1]
    return tuple((r, float(v)) for r, v in zip(radii, values))


def _trail_limit(trail, status, tol):
    samples = [t for _, t in trail]
    if not samples:
        return LimitEstimate.undetermined()
    last = samples[-1]
    if last <= tol.eps:
        estimate = LimitEstimate(last, LimitStatus.CONVERGED, last,
                                 tuple(samples))
    else:
        estimate = LimitEstimate.from_samples(samples, tol.eps,
                                              tol.growth_factor)
    return estimate.with_status(status)


def _evaluate(order, matrix, from_space, to_space, tol):
    from_space = as_domain(from_space)
    to_space = as_codomain(to_space)
    cdomain = from_space is SpaceId.C_DELTA
    row, low, up, criterion = HMNC_ROWS[(to_space, cdomain)]
    analysis = analyze(order, matrix, tol)
    tol = analysis.tol
    if row in (7, 8):
        trail = _subset_trail(analysis, cdomain)
        deps = [analysis.statuses('hat')]
        if cdomain:
            deps.append(analysis.statuses('gamma'))
    else:
        values, deps, beyond = _row_functional(analysis, row)
        trail = analysis.plan.tail_trail(values, tol, beyond)
    dep_status = LimitStatus.combine(*deps)
    estimate = _trail_limit(trail, dep_status, tol)
    return row, (low, up), criterion, trail, estimate, tol, dep_status


def hmnc_bounds(order, matrix, from_space, to_space, tol=None):
    """
    Bounds on the Hausdorff measure of noncompactness of :math:`L_A`.

    Parameters
    ----------
    order : `~fracseq.coeffs.FracOrder` or float
    matrix : `~fracseq.matrix.MatrixSpec`
    from_space : `~fracseq.spaces.SpaceId` or str
    to_space : `~fracseq.spaces.SpaceId` or str
    tol : `~fracseq.config.ToleranceConfig`, optional

    Returns
    -------
    bounds : `HmncBounds`
        ``upper`` is the upper factor times the last trail sample, which
        bounds the limit since the trail is nonincreasing. ``lower`` is
        the lower factor times the limit when it converged, else 0.
    """
    row, factors, criterion, trail, estimate, _, _ = _evaluate(
        order, matrix, from_space, to_space, tol)
    low, up = factors
    last = trail[-1][1] if trail else math.inf
    upper = up * last if last < math.inf else math.inf
    lower = low * estimate.value if estimate.converged else 0.0
    lower = min(lower, upper)
    log.debug("hmnc row {}: [{:.6g}, {:.6g}] ({})".format(
        row, lower, upper, estimate.status.value))
    return HmncBounds(lower, upper, row, factors, trail, estimate,
                      criterion)


class CompactnessStatus(str, enum.Enum):
    COMPACT = 'compact'
    NOT_COMPACT = 'not_compact'
    UNDETERMINED = 'undetermined'


@dataclass(frozen=True)
class CompactnessVerdict:
    """
    Compactness of :math:`L_A` read from the measure of noncompactness.

    ``clause`` is ``'iff'`` for characterizations and ``'if'`` for the
    one-sided sufficient condition into :math:`\\ell_\\infty`.
    """

    verdict: CompactnessStatus
    criterion: str
    clause: str
    formula_row: int
    trail: tuple
    residual: float

    def to_dict(self):
        return {'verdict': self.verdict.value, 'criterion': self.criterion,
                'clause': self.clause, 'formula_row': self.formula_row,
                'trail': [[r, t] for r, t in self.trail],
                'residual': self.residual}


def is_compact(order, matrix, from_space, to_space, tol=None):
    """
    Decide compactness of :math:`L_A : X(\\Delta^{\\alpha}) \\to Y`.

    Compact when the criterion trail vanishes within ``eps``; not compact
    when the last three samples sit on a plateau at least ``10 eps`` above
    zero (an ``iff`` clause only); undetermined otherwise.
    """
    row, _, criterion, trail, estimate, tol, dep_status = _evaluate(
        order, matrix, from_space, to_space, tol)
    clause = 'if' if SpaceId.from_tag(to_space) is SpaceId.LINF else 'iff'
    samples = [t for _, t in trail]
    last = samples[-1] if samples else 0.0

    if estimate.converged and estimate.value <= tol.eps:
        verdict = CompactnessStatus.COMPACT
    elif clause == 'if':
        verdict = CompactnessStatus.UNDETERMINED
    elif (len(samples) >= 3 and min(samples[-3:]) >= 10 * tol.eps
          and dep_status is LimitStatus.CONVERGED
          and (math.isinf(last)
               or max(samples[-3:]) - min(samples[-3:]) <= 0.1 * last)):
        verdict = CompactnessStatus.NOT_COMPACT
    else:
        verdict = CompactnessStatus.UNDETERMINED
    return CompactnessVerdict(verdict, criterion, clause, row, trail,
                              estimate.residual)


def report_notes(to_space):
    """Note keys relevant to a compactness or bounds report."""
    keys = ['hmnc-row-norm']
    if SpaceId.from_tag(to_space) is SpaceId.C:
        keys.append('beta-sign')
    return notes_for(*keys)
