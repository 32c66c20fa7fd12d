# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""
Transform machinery for matrices acting on fractional matrix domains.

With :math:`s_i = c_i(-\\alpha)` the inverse coefficients,

* the R-transform is :math:`(R a)_k = \\sum_{j \\ge k} s_{j-k} a_j`,
* the hat matrix has rows :math:`\\hat A_n = R A_n`,
* the tail-sum triangle of a row is :math:`w_{mk} = \\sum_{j \\ge m}
  s_{j-k} a_j` for :math:`k \\le m`,
* :math:`\\gamma_n = \\lim_m \\sum_k w_{mk}`, :math:`\\beta = \\lim_n
  (\\sum_k \\hat a_{nk} - \\gamma_n)`, :math:`\\hat\\alpha_k = \\lim_n
  \\hat a_{nk}`, :math:`\\hat b_{nk} = \\hat a_{nk} - \\hat\\alpha_k` and
  :math:`\\delta_n = \\sum_k \\hat\\alpha_k - \\gamma_n + \\beta`.

Rows with finite support are summed exactly. Rows with infinitely many
nonzero entries are evaluated at column truncations ``cols``, ``2 cols``
and ``4 cols`` and every functional carries the resulting evidence.
"""
import functools
from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

from astropy import log
from astropy.utils import lazyproperty

from .coeffs import as_order, inverse_coeffs
from .config import ToleranceConfig
from .fracop import Seq, TriMatrix
from .limits import LimitEstimate, LimitStatus
from .matrix import MatrixSpec

__all__ = ['r_transform', 'r_values', 'w_triangle', 'RowAnalysis',
           'HatAnalysis', 'analyze', 'HatMatrix', 'hat_matrix',
           'gamma_sequence', 'beta_limit', 'AlphaHat', 'alpha_hat',
           'row_analysis']


def r_values(order, a):
    """R-transform of a finitely supported array, as an array."""
    a = np.asarray(a, dtype=float)
    if len(a) == 0:
        return np.zeros(0)
    s = inverse_coeffs(order, len(a)).terms
    return np.convolve(a[::-1], s)[:len(a)][::-1]


def _w_parts(a, s):
    """Return ``(R a, W)`` for a finitely supported row ``a``."""
    m = len(a)
    if m == 0:
        return np.zeros(0), np.zeros((0, 0))
    column = np.asarray(s[:m], dtype=float)
    row = np.zeros(m)
    row[0] = column[0]
    terms = toeplitz(column, row) * a[:, None]
    # tails[m, k] = sum over j >= m of s_(j-k) a_j
    tails = np.cumsum(terms[::-1], axis=0)[::-1]
    return tails[0].copy(), np.tril(tails)


def r_transform(order, a):
    """
    The R-transform of a finitely supported sequence.

    Parameters
    ----------
    order : `~fracseq.coeffs.FracOrder` or float
    a : `~fracseq.fracop.Seq` or array-like
        Entries beyond the given terms are zero.

    Returns
    -------
    values : list of `~fracseq.limits.LimitEstimate`
        One exact estimate per index ``k < len(a)``.
    """
    a = Seq.coerce(a)
    return [LimitEstimate.exact(v) for v in r_values(order, a.terms)]


def w_triangle(order, a_row, m_max):
    """
    Tail-sum triangle :math:`w_{mk}` for ``0 <= k <= m < m_max``.

    Rows ``m`` at or beyond the support of ``a_row`` are zero.
    """
    a = Seq.coerce(a_row).terms
    size = max(int(m_max), 1)
    _, w = _w_parts(a, inverse_coeffs(order, len(a)).terms)
    out = np.zeros((size, size))
    m = min(size, len(a))
    out[:m, :m] = w[:m, :m]
    return TriMatrix(out)


@dataclass(frozen=True, eq=False)
class RowAnalysis:
    """
    Everything derived from one row :math:`A_n`.

    ``hat`` holds :math:`\\hat A_n` (full length for finite support, the
    first ``cols`` entries otherwise). The estimates are
    :math:`\\|\\hat A_n\\|_1` (``l1``), :math:`\\sum_k \\hat a_{nk}`
    (``total``), :math:`\\gamma_n` (``gamma``), :math:`\\sup_m \\sum_k
    |w_{mk}|` (``w_sup``) and :math:`\\lim_m \\sum_k |w_{mk}|`
    (``w_abs_limit``).
    """

    n: int
    support: int
    hat: np.ndarray
    hat_status: LimitStatus
    l1: LimitEstimate
    total: LimitEstimate
    gamma: LimitEstimate
    w_sup: LimitEstimate
    w_abs_limit: LimitEstimate

    @property
    def exact(self):
        return self.support is not None

    def to_dict(self):
        return {'n': self.n, 'support': self.support,
                'hat_status': self.hat_status.value,
                'l1': self.l1.to_dict(), 'total': self.total.to_dict(),
                'gamma': self.gamma.to_dict(),
                'w_sup': self.w_sup.to_dict(),
                'w_abs_limit': self.w_abs_limit.to_dict()}


def _finite_row(n, a, order):
    s = inverse_coeffs(order, max(len(a), 1)).terms
    hat, w = _w_parts(a, s)
    w_abs = np.abs(w).sum(axis=1)
    return RowAnalysis(
        n=n, support=len(a), hat=hat, hat_status=LimitStatus.CONVERGED,
        l1=LimitEstimate.exact(np.abs(hat).sum()),
        total=LimitEstimate.exact(hat.sum()),
        gamma=LimitEstimate.exact(0.0),
        w_sup=LimitEstimate.exact(w_abs.max(initial=0.0)),
        w_abs_limit=LimitEstimate.exact(0.0))


def _open_row(n, matrix, order, tol):
    cols = tol.cols
    levels = (cols, 2 * cols, 4 * cols)
    s = inverse_coeffs(order, levels[-1]).terms
    hats, sums, abs_sums = [], [], []
    steps = [m for m in (2 ** i for i in range(cols.bit_length()))
             if m <= cols // 2] or [0]
    for length in levels:
        hat, w = _w_parts(matrix.row(n, length), s)
        hats.append(hat)
        sums.append(w[steps].sum(axis=1))
        abs_sums.append(np.abs(w[steps]).sum(axis=1))

    def over_levels(samples):
        return LimitEstimate.from_samples(samples, tol.eps,
                                          tol.growth_factor)

    l1 = over_levels([np.abs(h).sum() for h in hats])
    total = over_levels([h.sum() for h in hats])
    heads = np.array([h[:cols] for h in hats])
    spread = float(np.ptp(heads, axis=0).max())
    if spread <= tol.eps:
        hat_status = LimitStatus.CONVERGED
    elif l1.status is LimitStatus.DIVERGING:
        hat_status = LimitStatus.DIVERGING
    else:
        hat_status = LimitStatus.UNDETERMINED

    sums = np.array(sums)
    abs_sums = np.array(abs_sums)
    inner = [over_levels(sums[:, i]) for i in range(len(steps))]
    inner_abs = [over_levels(abs_sums[:, i]) for i in range(len(steps))]
    inner_status = LimitStatus.combine(*(e.status for e in inner))
    inner_abs_status = LimitStatus.combine(*(e.status for e in inner_abs))
    values = [e.value for e in inner]
    abs_values = [e.value for e in inner_abs]
    gamma = LimitEstimate.from_samples(
        values, tol.eps, tol.growth_factor).with_status(inner_status)
    w_sup = LimitEstimate.bounded(
        np.maximum.accumulate(abs_values), tol.eps,
        tol.growth_factor).with_status(inner_abs_status)
    w_abs_limit = LimitEstimate.from_samples(
        abs_values, tol.eps, tol.growth_factor).with_status(inner_abs_status)
    return RowAnalysis(n=n, support=None, hat=hats[-1][:cols],
                       hat_status=hat_status, l1=l1, total=total,
                       gamma=gamma, w_sup=w_sup, w_abs_limit=w_abs_limit)


def _analyze_row(n, matrix, order, tol):
    support = matrix.row_support(n)
    if support is not None:
        return _finite_row(n, matrix.row(n, support), order)
    return _open_row(n, matrix, order, tol)


@dataclass(frozen=True, eq=False)
class HatAnalysis:
    """
    Row-by-row transform data for one matrix, order and tolerance.

    ``rows`` follows ``plan.indices``. Limits over ``n`` are taken with the
    matrix's `~fracseq.matrix.RowPlan`; the per-row evidence is folded
    into every such limit.
    """

    order: object
    matrix: MatrixSpec
    tol: ToleranceConfig
    plan: object
    rows: tuple

    @property
    def width(self):
        """Columns over which column limits are taken."""
        if not self.plan.exact:
            return self.tol.cols
        return max((len(r.hat) for r in self.rows), default=0)

    @property
    def full_width(self):
        """Columns holding every stored hat entry."""
        return max([len(r.hat) for r in self.rows] + [self.width])

    def hat_array(self, width=None):
        """Hat rows padded or cut to ``width`` columns."""
        width = self.width if width is None else width
        out = np.zeros((len(self.rows), width))
        for i, row in enumerate(self.rows):
            m = min(width, len(row.hat))
            out[i, :m] = row.hat[:m]
        return out

    def statuses(self, name):
        if name == 'hat':
            return LimitStatus.combine(*(r.hat_status for r in self.rows))
        return LimitStatus.combine(
            *(getattr(r, name).status for r in self.rows))

    def values(self, name):
        return np.array([getattr(r, name).value for r in self.rows])

    def over_rows(self, how, values, depends=(), beyond=0.0):
        """
        Apply ``plan.<how>`` (``'limit'``, ``'sup'`` or ``'series'``) to
        a row functional, folding in the statuses of the ``depends`` row
        fields.
        """
        estimate = getattr(self.plan, how)(values, self.tol, beyond)
        status = LimitStatus.combine(*(self.statuses(d) for d in depends))
        return estimate.with_status(status)

    @lazyproperty
    def alpha(self):
        """:math:`\\hat\\alpha_k` for ``k < width``."""
        hats = self.hat_array()
        status = self.statuses('hat')
        return tuple(self.plan.limit(hats[:, k], self.tol).with_status(status)
                     for k in range(hats.shape[1]))

    @lazyproperty
    def alpha_values(self):
        return np.array([e.value for e in self.alpha])

    @lazyproperty
    def alpha_status(self):
        return LimitStatus.combine(*(e.status for e in self.alpha))

    @lazyproperty
    def beta(self):
        """:math:`\\beta = \\lim_n (\\sum_k \\hat a_{nk} - \\gamma_n)`."""
        values = self.values('total') - self.values('gamma')
        return self.over_rows('limit', values, ('total', 'gamma'))

    @lazyproperty
    def b_hat(self):
        """:math:`\\hat b_{nk}` over ``width`` columns."""
        return self.hat_array() - self.alpha_values[None, :]

    @lazyproperty
    def delta(self):
        """:math:`\\delta_n` per evaluated row."""
        return (self.alpha_values.sum() - self.values('gamma')
                + self.beta.value)

    @lazyproperty
    def delta_status(self):
        return LimitStatus.combine(self.alpha_status, self.beta.status,
                                   self.statuses('gamma'))

    def to_dict(self):
        return {'plan': self.plan.kind.value,
                'rows_evaluated': len(self.rows),
                'beta': self.beta.to_dict(),
                'alpha_hat': [e.to_dict() for e in self.alpha]}


def analyze(order, matrix, tol=None):
    """
    Transform data for ``matrix`` at ``order``, cached per inputs.

    The matrix's own ``truncate`` entry overrides ``tol.rows`` and
    ``tol.cols``.
    """
    order = as_order(order)
    tol = ToleranceConfig.from_conf() if tol is None else tol
    tol = tol.with_truncation(matrix.truncation)
    return _analyze(order, matrix, tol)


@functools.lru_cache(maxsize=64)
def _analyze(order, matrix, tol):
    plan = matrix.row_plan(tol.rows)
    log.debug("analyze: {} matrix, {} plan over {} rows".format(
        matrix.kind.value, plan.kind.value, len(plan.indices)))
    rows = tuple(_analyze_row(n, matrix, order, tol) for n in plan.indices)
    return HatAnalysis(order, matrix, tol, plan, rows)


@dataclass(frozen=True, eq=False)
class HatMatrix:
    """Truncated hat matrix with per-row tail flags."""

    source: MatrixSpec
    order: object
    rows: tuple
    row_tail_flags: tuple
    cols: int

    def as_array(self):
        out = np.zeros((len(self.rows), self.cols))
        for i, row in enumerate(self.rows):
            out[i, :len(row)] = row
        return out

    def to_dict(self):
        return {'order': self.order.value, 'cols': self.cols,
                'rows': [row.tolist() for row in self.rows],
                'row_tail_flags': [f.value for f in self.row_tail_flags]}


def hat_matrix(order, matrix, rows, cols, tol=None):
    """
    Rows ``0..rows-1`` of the hat matrix, each cut to ``cols`` entries.

    Rows whose tails do not converge are flagged and logged, not
    rejected.
    """
    order = as_order(order)
    tol = ToleranceConfig.from_conf() if tol is None else tol
    tol = tol.with_truncation(matrix.truncation)
    out, flags = [], []
    for n in range(rows):
        row = _analyze_row(n, matrix, order, tol)
        out.append(row.hat[:cols])
        flags.append(row.hat_status)
        if row.hat_status is not LimitStatus.CONVERGED:
            log.warning("hat row {} tail is {}".format(
                n, row.hat_status.value))
    return HatMatrix(matrix, order, tuple(out), tuple(flags), int(cols))


def row_analysis(order, matrix, n, tol=None):
    """The `RowAnalysis` of row ``n``, outside any row plan."""
    order = as_order(order)
    tol = ToleranceConfig.from_conf() if tol is None else tol
    tol = tol.with_truncation(matrix.truncation)
    return _analyze_row(n, matrix, order, tol)


def gamma_sequence(order, matrix, n_max, tol=None):
    """:math:`\\gamma_n` for ``n < n_max``."""
    return [row_analysis(order, matrix, n, tol).gamma for n in range(n_max)]


def beta_limit(order, matrix, tol=None):
    """:math:`\\beta = \\lim_n (\\sum_k \\hat a_{nk} - \\gamma_n)`."""
    return analyze(order, matrix, tol).beta


@dataclass(frozen=True, eq=False)
class AlphaHat:
    """
    Column limits and the quantities assembled from them.

    ``b_hat`` and ``delta`` are None unless every component converged.
    """

    alpha: tuple
    beta: LimitEstimate
    b_hat: np.ndarray
    delta: np.ndarray
    status: LimitStatus

    def to_dict(self):
        return {'alpha_hat': [e.to_dict() for e in self.alpha],
                'beta': self.beta.to_dict(),
                'b_hat': None if self.b_hat is None else self.b_hat.tolist(),
                'delta': None if self.delta is None else self.delta.tolist(),
                'status': self.status.value}


def alpha_hat(order, matrix, k_max=None, tol=None):
    """:math:`\\hat\\alpha_k` for ``k < k_max`` with b-hat and delta."""
    analysis = analyze(order, matrix, tol)
    k_max = analysis.width if k_max is None else int(k_max)
    if not analysis.plan.exact:
        k_max = min(k_max, analysis.width)
    alpha = analysis.alpha[:k_max]
    if analysis.plan.exact:
        # columns past every row's support vanish
        alpha += (LimitEstimate.exact(0.0),) * (k_max - len(alpha))
    status = analysis.delta_status
    if status is LimitStatus.CONVERGED:
        b_hat = analysis.hat_array(k_max) - np.array(
            [e.value for e in alpha])[None, :]
        delta = analysis.delta
    else:
        b_hat = delta = None
    return AlphaHat(alpha, analysis.beta, b_hat, delta, status)
