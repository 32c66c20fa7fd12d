# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""
Operator norms and matrix-class membership.

For :math:`A \\in (X(\\Delta^{\\alpha}), Y)` everything is decided on the
hat matrix :math:`\\hat A`. Each primitive condition is a predicate over
`~fracseq.limits.LimitEstimate` evidence and each (domain, codomain) pair
is decided by a bundle of primitive conditions.
"""
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from astropy import log

from .coeffs import as_order
from .config import ToleranceConfig
from .dual import ConditionReport, Verdict
from .exceptions import UsageError
from .fracop import apply_inverse
from .limits import LimitEstimate, LimitStatus
from .matrix import PlanKind
from .notes import notes_for
from .spaces import CODOMAINS, DOMAINS, SpaceId, as_codomain, as_domain
from .transform import analyze

__all__ = ['NormEstimate', 'SubsetSup', 'SampledNorm', 'ClassStatus',
           'ClassVerdict', 'ClassTable', 'subset_sup', 'sup_norm',
           'group_norm', 'sample_operator_norm', 'CONDITIONS', 'BUNDLES',
           'evaluate_condition', 'class_membership', 'class_table']

CHUNK = 4096
GREEDY_ITEM_STARTS = 64
GREEDY_RANDOM_STARTS = 8
GREEDY_MAX_ROUNDS = 50


@dataclass(frozen=True)
class NormEstimate:
    """
    Bounds ``lower <= ||L_A|| <= upper``.

    ``kind`` is ``'exact_identity'`` when the norm equals the evaluated
    quantity and ``'sandwich'`` for the subset-supremum bounds.
    """

    lower: float
    upper: float
    kind: str
    status: LimitStatus
    trail: dict = field(default_factory=dict)

    def to_dict(self):
        return {'lower': self.lower, 'upper': self.upper, 'kind': self.kind,
                'status': self.status.value, 'trail': dict(self.trail)}


@dataclass(frozen=True)
class SubsetSup:
    """
    :math:`\\sup_N \\sum_d |\\sum_{i \\in N} x_{id}|` over nonempty subsets.

    ``gap`` is the distance to the trivial bound :math:`\\sum_i \\|x_i\\|_1`.
    """

    value: float
    method: str
    gap: float
    subset: tuple

    def to_dict(self):
        return {'value': self.value, 'method': self.method, 'gap': self.gap,
                'subset': list(self.subset)}


def _exhaustive(items):
    count = len(items)
    shifts = np.arange(count)
    best, best_mask = 0.0, 0
    for start in range(1, 1 << count, CHUNK):
        masks = np.arange(start, min(start + CHUNK, 1 << count))
        bits = ((masks[:, None] >> shifts) & 1).astype(float)
        values = np.abs(bits @ items).sum(axis=1)
        i = int(np.argmax(values))
        if values[i] > best:
            best, best_mask = float(values[i]), int(masks[i])
    return best, tuple(int(i) for i in shifts if best_mask >> i & 1)


def _greedy(items, rng):
    norms = np.abs(items).sum(axis=1)
    order = np.argsort(-norms, kind='stable')[:GREEDY_ITEM_STARTS]
    starts = [np.sign(items[i]) for i in order]
    starts.append(np.sign(items.sum(axis=0)))
    starts.extend(rng.choice((-1.0, 1.0), size=(GREEDY_RANDOM_STARTS,
                                                items.shape[1])))
    best, best_subset = 0.0, ()
    for sigma in starts:
        sigma = np.where(sigma == 0, 1.0, sigma)
        for _ in range(GREEDY_MAX_ROUNDS):
            chosen = np.flatnonzero(items @ sigma > 0)
            if len(chosen) == 0:
                break
            total = items[chosen].sum(axis=0)
            value = float(np.abs(total).sum())
            if value > best:
                best, best_subset = value, tuple(int(i) for i in chosen)
            update = np.where(total >= 0, 1.0, -1.0)
            if np.array_equal(update, sigma):
                break
            sigma = update
    return best, best_subset


def subset_sup(items, budget=20, method=None, seed=0):
    """
    Supremum over nonempty subsets ``N`` of the rows of ``items`` of
    :math:`\\sum_d |\\sum_{i \\in N} x_{id}|`.

    Parameters
    ----------
    items : array-like, shape (R, D)
    budget : int
        Largest ``R`` enumerated exhaustively.
    method : {'exhaustive', 'greedy'}, optional
        Force a method; by default exhaustive when ``R <= budget``.
    seed : int
        Seed for the random greedy starts.

    Returns
    -------
    result : `SubsetSup`

    Notes
    -----
    The greedy search alternates between a sign vector ``sigma`` and the
    subset of rows with positive ``sigma`` projection, from several starts.
    Every value it reports is attained by a subset, so it never exceeds the
    exhaustive supremum.
    """
    items = np.atleast_2d(np.asarray(items, dtype=float))
    if items.size == 0:
        return SubsetSup(0.0, 'exhaustive', 0.0, ())
    bound = float(np.abs(items).sum())
    if method is None:
        method = 'exhaustive' if len(items) <= budget else 'greedy'
    if method == 'exhaustive':
        if len(items) > 24:
            raise UsageError("exhaustive enumeration is limited to 24 rows")
        value, subset = _exhaustive(items)
    elif method == 'greedy':
        value, subset = _greedy(items, np.random.default_rng(seed))
    else:
        raise UsageError("unknown subset method {!r}".format(method))
    log.debug("subset_sup: {} over {} rows -> {:.6g}".format(
        method, len(items), value))
    return SubsetSup(value, method, bound - value, subset)


def _norm_from_sup(estimate, values, indices, kind='exact_identity'):
    trail = {'samples': list(estimate.samples),
             'residual': estimate.residual}
    if len(values):
        trail['argmax_row'] = int(indices[int(np.argmax(values))])
    if estimate.status is LimitStatus.CONVERGED:
        return NormEstimate(estimate.value, estimate.value, kind,
                            estimate.status, trail)
    if estimate.status is LimitStatus.DIVERGING:
        return NormEstimate(math.inf, math.inf, kind, estimate.status, trail)
    observed = float(np.max(values, initial=0.0))
    return NormEstimate(observed, math.inf, kind, estimate.status, trail)


def sup_norm(order, matrix, from_space, tol=None):
    """
    :math:`\\sup_n \\|\\hat A_n\\|_1`, plus :math:`|\\gamma_n|` on the
    ``c`` domain.

    This is the operator norm into :math:`\\ell_\\infty`, ``c_0`` and
    ``c``. A diverging supremum is reported with ``inf`` bounds.
    """
    from_space = as_domain(from_space)
    analysis = analyze(order, matrix, tol)
    values = analysis.values('l1')
    depends = ('l1',)
    if from_space is SpaceId.C_DELTA:
        values = values + np.abs(analysis.values('gamma'))
        depends = ('l1', 'gamma')
    estimate = analysis.over_rows('sup', values, depends)
    return _norm_from_sup(estimate, values, analysis.plan.indices)


def _group_items(analysis, from_space, rows=None):
    items = analysis.hat_array(analysis.full_width)
    if from_space is SpaceId.C_DELTA:
        items = np.hstack([items, analysis.values('gamma')[:, None]])
    if rows is not None:
        items = items[rows]
    return items[np.any(items != 0, axis=1)]


def _nested_cuts(plan):
    size = plan.size
    return (size // 4, size // 2, size)


def group_norm(order, matrix, from_space, subset_budget=None, tol=None):
    """
    Subset supremum :math:`\\sup_N \\sum_k |\\sum_{n \\in N} \\hat a_{nk}|`
    (plus :math:`|\\sum_{n \\in N} \\gamma_n|` on the ``c`` domain), with
    the sandwich ``[v, 4 v]`` for the norm into :math:`\\ell_1`.
    """
    from_space = as_domain(from_space)
    analysis = analyze(order, matrix, tol)
    tol = analysis.tol
    budget = tol.subset_budget if subset_budget is None else subset_budget
    depends = ('hat', 'gamma') if from_space is SpaceId.C_DELTA else ('hat',)
    status = LimitStatus.combine(*(analysis.statuses(d) for d in depends))
    plan = analysis.plan

    if plan.kind is PlanKind.PERIODIC:
        items = _group_items(analysis, from_space)
        if len(items):
            return NormEstimate(math.inf, math.inf, 'sandwich',
                                LimitStatus.DIVERGING,
                                {'reason': 'repeating nonzero rows'})
        return NormEstimate(0.0, 0.0, 'sandwich', status, {})

    if plan.kind is PlanKind.VANISHING:
        result = subset_sup(_group_items(analysis, from_space), budget)
        estimate = LimitEstimate.exact(result.value).with_status(status)
    else:
        index = np.asarray(plan.indices)
        results = [subset_sup(_group_items(analysis, from_space,
                                           index < cut), budget)
                   for cut in _nested_cuts(plan)]
        result = results[-1]
        estimate = LimitEstimate.bounded(
            [r.value for r in results], tol.eps,
            tol.growth_factor).with_status(status)

    trail = dict(result.to_dict(), samples=list(estimate.samples))
    if estimate.status is LimitStatus.DIVERGING:
        return NormEstimate(math.inf, math.inf, 'sandwich', estimate.status,
                            trail)
    return NormEstimate(result.value, 4 * result.value, 'sandwich',
                        estimate.status, trail)


@dataclass(frozen=True)
class SampledNorm:
    """Largest :math:`\\|A x\\|_\\infty` seen over unit-ball samples."""

    value: float
    samples: int
    seed: int
    columns: int

    def to_dict(self):
        return {'value': self.value, 'samples': self.samples,
                'seed': self.seed, 'columns': self.columns}


def sample_operator_norm(order, matrix, samples=500, seed=0, tol=None):
    """
    Monte-Carlo evidence for the norm of :math:`L_A` on the unit ball.

    Each sample is :math:`x = \\Delta^{-\\alpha} y` for ``y`` in the unit
    ball of :math:`\\ell_\\infty`: the sign patterns of the hat rows (the
    extreme points that attain the row norms), random signs and uniform
    draws. ``A x`` is formed from the rows of ``A`` itself.
    """
    order = as_order(order)
    analysis = analyze(order, matrix, tol)
    tol = analysis.tol
    supports = [matrix.row_support(n) for n in analysis.plan.indices]
    if any(s is None for s in supports):
        columns = 4 * tol.cols
    else:
        columns = max(supports, default=1) or 1
    rng = np.random.default_rng(seed)
    rows = np.array([matrix.row(n, columns) for n in analysis.plan.indices])
    if rows.size == 0:
        return SampledNorm(0.0, samples, seed, columns)

    aligned = np.sign(analysis.hat_array(columns))
    aligned = aligned[np.any(aligned != 0, axis=1)]
    count = max(samples - len(aligned), 0)
    half = count // 2
    draws = np.vstack([
        aligned[:samples],
        rng.choice((-1.0, 1.0), size=(half, columns)),
        rng.uniform(-1.0, 1.0, size=(count - half, columns)),
    ])
    best = 0.0
    for y in draws:
        x = apply_inverse(order, y).terms
        best = max(best, float(np.max(np.abs(rows @ x))))
    return SampledNorm(best, len(draws), seed, columns)


# -- primitive conditions ---------------------------------------------------

def _rowwise(analysis, name, predicate):
    estimates = [getattr(r, name) for r in analysis.rows]
    verdict = Verdict.combine(*(predicate(e) for e in estimates))
    values = [e.value for e in estimates]
    witness = LimitEstimate(
        float(np.max(np.abs(values), initial=0.0)),
        LimitStatus.combine(*(e.status for e in estimates)),
        max((e.residual for e in estimates), default=0.0),
        tuple(values[:16]))
    return verdict, witness


def _cond_1a(analysis, tol):
    est = analysis.over_rows('sup', analysis.values('l1'), ('l1',))
    return Verdict.from_status(est), est


def _cond_1b(analysis, tol):
    return _rowwise(analysis, 'w_abs_limit',
                    lambda e: Verdict.from_zero(e, tol.eps))


def _cond_2a(analysis, tol):
    return _rowwise(analysis, 'w_sup', Verdict.from_status)


def _cond_3a(analysis, tol):
    return _rowwise(analysis, 'gamma', Verdict.from_status)


def _excess(analysis):
    return np.abs(analysis.values('total') - analysis.values('gamma'))


def _cond_3b(analysis, tol):
    est = analysis.over_rows('sup', _excess(analysis), ('total', 'gamma'))
    return Verdict.from_zero(est, tol.eps), est


def _cond_4a(analysis, tol):
    est = analysis.over_rows('limit', analysis.values('l1'), ('l1',))
    return Verdict.from_zero(est, tol.eps), est


def _cond_5a(analysis, tol):
    alpha = analysis.alpha
    verdict = Verdict.combine(*(Verdict.from_zero(e, tol.eps)
                                for e in alpha))
    return verdict, _alpha_witness(analysis)


def _alpha_witness(analysis):
    values = analysis.alpha_values
    return LimitEstimate(float(np.max(np.abs(values), initial=0.0)),
                         analysis.alpha_status,
                         max((e.residual for e in analysis.alpha),
                             default=0.0),
                         tuple(values[:16]))


def _cond_6a(analysis, tol):
    return Verdict.from_zero(analysis.beta, tol.eps), analysis.beta


def _cond_7a(analysis, tol):
    verdict = Verdict.combine(*(Verdict.from_status(e)
                                for e in analysis.alpha))
    return verdict, _alpha_witness(analysis)


def _alpha_abs_series(analysis, tol):
    mags = np.abs(analysis.alpha_values)
    if analysis.plan.exact or len(mags) < 4:
        return LimitEstimate.exact(mags.sum()).with_status(
            analysis.alpha_status)
    partial = np.cumsum(mags)
    width = len(mags)
    samples = partial[[width // 4 - 1, width // 2 - 1, width - 1]]
    return LimitEstimate.from_samples(
        samples, tol.eps, tol.growth_factor).with_status(
            analysis.alpha_status)


def _cond_7b(analysis, tol):
    rows, _ = _rowwise(analysis, 'l1', Verdict.from_status)
    series = _alpha_abs_series(analysis, tol)
    return Verdict.combine(rows, Verdict.from_status(series)), series


def _cond_7c(analysis, tol):
    values = analysis.values('total') - analysis.alpha_values.sum()
    est = analysis.over_rows('limit', values, ('total',)).with_status(
        analysis.alpha_status)
    return Verdict.from_zero(est, tol.eps), est


def _cond_9a(analysis, tol):
    return Verdict.from_status(analysis.beta), analysis.beta


def _column_items(analysis, rows=None):
    hats = analysis.hat_array(analysis.full_width)
    if rows is not None:
        hats = hats[rows]
    items = hats.T
    return items[np.any(items != 0, axis=1)]


def _cond_10a(analysis, tol):
    plan = analysis.plan
    status = analysis.statuses('hat')
    if plan.kind is PlanKind.PERIODIC:
        if np.any(analysis.hat_array() != 0):
            est = LimitEstimate(math.inf, LimitStatus.DIVERGING, math.inf)
            return Verdict.FAILS, est
        return Verdict.HOLDS, LimitEstimate.exact(0.0)
    if plan.kind is PlanKind.VANISHING:
        result = subset_sup(_column_items(analysis), tol.subset_budget)
        est = LimitEstimate.exact(result.value).with_status(status)
    else:
        index = np.asarray(plan.indices)
        values = [subset_sup(_column_items(analysis, index < cut),
                             tol.subset_budget).value
                  for cut in _nested_cuts(plan)]
        est = LimitEstimate.bounded(values, tol.eps,
                                    tol.growth_factor).with_status(status)
    return Verdict.from_status(est), est


def _cond_12a(analysis, tol):
    est = analysis.over_rows('series', _excess(analysis), ('total', 'gamma'))
    return Verdict.from_status(est), est


CONDITIONS = {
    '1A': _cond_1a, '1B': _cond_1b, '2A': _cond_2a, '3A': _cond_3a,
    '3B': _cond_3b, '4A': _cond_4a, '5A': _cond_5a, '6A': _cond_6a,
    '7A': _cond_7a, '7B': _cond_7b, '7C': _cond_7c, '9A': _cond_9a,
    '10A': _cond_10a, '12A': _cond_12a,
    # never defined; read as 2A
    '2B': _cond_2a,
}

_CONDITION_NOTES = {'2B': 'condition-2b', '3B': 'condition-3b',
                    '7C': 'condition-7c'}

_L, _Z, _C = SpaceId.LINF_DELTA, SpaceId.C0_DELTA, SpaceId.C_DELTA

BUNDLES = {
    (_L, SpaceId.LINF): (1, ('1A', '1B')),
    (_Z, SpaceId.LINF): (2, ('1A', '2A')),
    (_C, SpaceId.LINF): (3, ('1A', '2A', '3A', '3B')),
    (_L, SpaceId.C0): (4, ('1B', '4A')),
    (_Z, SpaceId.C0): (5, ('1A', '2A', '5A')),
    (_C, SpaceId.C0): (6, ('1A', '2A', '3A', '5A', '6A')),
    (_L, SpaceId.C): (7, ('1B', '7A', '7B', '7C')),
    (_Z, SpaceId.C): (8, ('1A', '2B', '7A')),
    (_C, SpaceId.C): (9, ('1A', '2B', '3A', '7A', '9A')),
    (_L, SpaceId.L1): (10, ('1B', '10A')),
    (_Z, SpaceId.L1): (11, ('2A', '10A')),
    (_C, SpaceId.L1): (12, ('2A', '3A', '10A', '12A')),
}


class ClassStatus(str, enum.Enum):
    MEMBER = 'member'
    FAILS = 'fails'
    UNDETERMINED = 'undetermined'

    @classmethod
    def from_verdict(cls, verdict):
        return {Verdict.HOLDS: cls.MEMBER, Verdict.FAILS: cls.FAILS,
                Verdict.UNDETERMINED: cls.UNDETERMINED}[verdict]


@dataclass(frozen=True)
class ClassVerdict:
    """Whether ``A`` maps ``from_space`` into ``to_space``."""

    from_space: SpaceId
    to_space: SpaceId
    bundle: int
    conditions: tuple
    verdict: ClassStatus
    notes: tuple = ()

    def to_dict(self):
        return {'from': self.from_space.value, 'to': self.to_space.value,
                'bundle': self.bundle, 'verdict': self.verdict.value,
                'conditions': [c.to_dict() for c in self.conditions],
                'notes': list(self.notes)}


def evaluate_condition(analysis, condition_id):
    """Evaluate one primitive condition into a `ConditionReport`."""
    try:
        evaluator = CONDITIONS[condition_id]
    except KeyError:
        raise UsageError("unknown condition {!r}".format(condition_id))
    verdict, witness = evaluator(analysis, analysis.tol)
    notes = (_CONDITION_NOTES[condition_id],) \
        if condition_id in _CONDITION_NOTES else ()
    return ConditionReport(condition_id, verdict, witness, notes)


def class_membership(order, matrix, from_space, to_space, tol=None):
    """
    Decide :math:`A \\in (X(\\Delta^{\\alpha}), Y)` from its condition
    bundle.

    Parameters
    ----------
    order : `~fracseq.coeffs.FracOrder` or float
    matrix : `~fracseq.matrix.MatrixSpec`
    from_space : `~fracseq.spaces.SpaceId` or str
        ``c0d``, ``cd`` or ``linfd``.
    to_space : `~fracseq.spaces.SpaceId` or str
        ``linf``, ``c0``, ``c`` or ``l1``.
    tol : `~fracseq.config.ToleranceConfig`, optional

    Returns
    -------
    verdict : `ClassVerdict`
    """
    key = (as_domain(from_space), as_codomain(to_space))
    bundle, condition_ids = BUNDLES[key]
    analysis = analyze(order, matrix, tol)
    reports = tuple(evaluate_condition(analysis, c) for c in condition_ids)
    verdict = Verdict.combine(*(r.verdict for r in reports))
    notes = {'table-grouping'}
    for report in reports:
        notes.update(report.notes)
    log.debug("class ({}, {}): bundle {} -> {}".format(
        key[0].value, key[1].value, bundle, verdict.value))
    return ClassVerdict(key[0], key[1], bundle, reports,
                        ClassStatus.from_verdict(verdict),
                        tuple(sorted(notes)))


@dataclass(frozen=True)
class ClassTable:
    """All twelve class verdicts for one matrix."""

    verdicts: tuple

    def get(self, from_space, to_space):
        key = (SpaceId.from_tag(from_space), SpaceId.from_tag(to_space))
        for verdict in self.verdicts:
            if (verdict.from_space, verdict.to_space) == key:
                return verdict
        raise KeyError(key)

    def rows(self):
        """``(codomain, {domain tag: verdict})`` in table layout."""
        return [(to.value, {frm.value: self.get(frm, to).verdict.value
                            for frm in DOMAINS})
                for to in CODOMAINS]

    @property
    def notes(self):
        keys = set()
        for verdict in self.verdicts:
            keys.update(verdict.notes)
        return notes_for(*keys)

    def to_dict(self):
        return {'cells': [v.to_dict() for v in self.verdicts],
                'layout': [{'to': to, **cells} for to, cells in self.rows()]}


def class_table(order, matrix, tol=None):
    """Evaluate every (domain, codomain) pair of the characterization table."""
    tol = ToleranceConfig.from_conf() if tol is None else tol
    return ClassTable(tuple(class_membership(order, matrix, frm, to, tol)
                            for (frm, to) in sorted(
                                BUNDLES, key=lambda k: BUNDLES[k][0])))
