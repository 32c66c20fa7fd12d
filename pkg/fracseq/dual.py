# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""
Beta-dual conditions and the duality pairing.

A sequence ``a`` lies in the beta-dual of a fractional matrix domain when
:math:`\\sum_k a_k x_k` converges for every member ``x``. The conditions
are read off the R-transform and the tail-sum triangle of ``a``:

=====  =====================================================
MF2    :math:`\\sum_k |R_k a| < \\infty`
MF3    :math:`\\sup_n \\sum_{k \\le n} |w_{nk}| < \\infty`
MF4    :math:`\\lim_n \\sum_{k \\le n} w_{nk} = \\rho` exists
MF5    :math:`\\lim_n \\sum_{k \\le n} |w_{nk}| = 0`
=====  =====================================================
"""
import enum
from dataclasses import dataclass

import numpy as np

from astropy import log

from .coeffs import as_order
from .config import ToleranceConfig
from .exceptions import UsageError
from .fracop import Seq, apply_forward
from .limits import LimitStatus
from .matrix import MatrixSpec, TermSource
from .notes import notes_for
from .spaces import SpaceId, classify_sequence
from .transform import r_values, row_analysis

__all__ = ['Verdict', 'ConditionReport', 'BetaDualReport', 'PairingResult',
           'DUAL_CONDITIONS', 'check_beta_dual', 'pairing', 'report_notes']


class Verdict(str, enum.Enum):
    HOLDS = 'holds'
    FAILS = 'fails'
    UNDETERMINED = 'undetermined'

    @classmethod
    def combine(cls, *verdicts):
        verdicts = set(verdicts)
        if cls.FAILS in verdicts:
            return cls.FAILS
        if cls.UNDETERMINED in verdicts:
            return cls.UNDETERMINED
        return cls.HOLDS

    @classmethod
    def from_status(cls, estimate):
        """Verdict for "the limit exists" or "the supremum is finite"."""
        if estimate.status is LimitStatus.CONVERGED:
            return cls.HOLDS
        if estimate.status is LimitStatus.DIVERGING:
            return cls.FAILS
        return cls.UNDETERMINED

    @classmethod
    def from_zero(cls, estimate, eps):
        """Verdict for "the limit (or supremum) equals 0"."""
        if estimate.status is LimitStatus.CONVERGED:
            return cls.HOLDS if abs(estimate.value) <= eps else cls.FAILS
        if estimate.status is LimitStatus.DIVERGING:
            return cls.FAILS
        return cls.UNDETERMINED


@dataclass(frozen=True)
class ConditionReport:
    """One evaluated condition with the estimate it rests on."""

    condition_id: str
    verdict: Verdict
    witness: object
    notes: tuple = ()

    def to_dict(self):
        witness = self.witness
        if hasattr(witness, 'to_dict'):
            witness = witness.to_dict()
        return {'condition': self.condition_id,
                'verdict': self.verdict.value,
                'witness': witness,
                'notes': list(self.notes)}


DUAL_CONDITIONS = {
    SpaceId.C0_DELTA: ('MF2', 'MF3'),
    SpaceId.C_DELTA: ('MF2', 'MF3', 'MF4'),
    SpaceId.LINF_DELTA: ('MF2', 'MF5'),
}


@dataclass(frozen=True)
class BetaDualReport:
    space: SpaceId
    conditions: tuple
    verdict: Verdict
    rho: object = None
    r_transform: tuple = ()

    def to_dict(self):
        return {'space': self.space.value,
                'verdict': self.verdict.value,
                'conditions': [c.to_dict() for c in self.conditions],
                'rho': None if self.rho is None else self.rho.to_dict(),
                'r_transform': list(self.r_transform)}


def _as_row_matrix(a):
    if isinstance(a, (TermSource, dict)) or callable(a):
        source = TermSource.coerce(a)
    else:
        source = TermSource(tuple(Seq.coerce(a).terms))
    return MatrixSpec.rank_one((1.0,), source)


def check_beta_dual(order, a, space, tol=None):
    """
    Evaluate the beta-dual conditions of ``space`` for ``a``.

    Parameters
    ----------
    order : `~fracseq.coeffs.FracOrder` or float
    a : `~fracseq.fracop.Seq`, array-like or `~fracseq.matrix.TermSource`
        Plain sequences are finitely supported; generators are evaluated
        at growing column truncations.
    space : `~fracseq.spaces.SpaceId` or str
        One of ``c0d``, ``cd``, ``linfd``.

    Returns
    -------
    report : `BetaDualReport`
    """
    order = as_order(order)
    space = SpaceId.from_tag(space)
    if space not in DUAL_CONDITIONS:
        raise UsageError("beta-duals are defined for c0d, cd and linfd, not "
                         "{}".format(space.value))
    tol = ToleranceConfig.from_conf() if tol is None else tol
    row = row_analysis(order, _as_row_matrix(a), 0, tol)

    reports = {
        'MF2': ConditionReport('MF2', Verdict.from_status(row.l1), row.l1),
        'MF3': ConditionReport('MF3', Verdict.from_status(row.w_sup),
                               row.w_sup, ('mf3-index',)),
        'MF4': ConditionReport('MF4', Verdict.from_status(row.gamma),
                               row.gamma, ('w-gamma-argument',)),
        'MF5': ConditionReport('MF5',
                               Verdict.from_zero(row.w_abs_limit, tol.eps),
                               row.w_abs_limit, ('mf5-inner-index',)),
    }
    conditions = tuple(reports[c] for c in DUAL_CONDITIONS[space])
    verdict = Verdict.combine(*(c.verdict for c in conditions))
    log.debug("beta-dual in {}: {}".format(space.value, verdict.value))
    rho = row.gamma if space is SpaceId.C_DELTA else None
    return BetaDualReport(space, conditions, verdict, rho,
                          tuple(float(v) for v in row.hat))


@dataclass(frozen=True)
class PairingResult:
    lhs: float
    rhs: float
    discrepancy: float
    rho: float = 0.0
    xi: float = None

    def to_dict(self):
        return {'lhs': self.lhs, 'rhs': self.rhs,
                'discrepancy': self.discrepancy, 'rho': self.rho,
                'xi': self.xi}


def pairing(order, a, x, space, tol=None):
    """
    Both sides of the duality identity for a finitely supported ``a``.

    :math:`\\sum_k a_k x_k = \\sum_k (R_k a) y_k` with :math:`y =
    \\Delta^{\\alpha} x`, less :math:`\\rho \\xi` in
    :math:`c(\\Delta^{\\alpha})`.

    Raises
    ------
    UsageError
        If ``x`` is shorter than ``a`` or is not classified as a member of
        ``space``.
    """
    order = as_order(order)
    space = SpaceId.from_tag(space)
    tol = ToleranceConfig.from_conf() if tol is None else tol
    a = Seq.coerce(a)
    x = Seq.coerce(x)
    if len(x) < len(a):
        raise UsageError("x has {} terms but a has {}".format(len(x), len(a)))
    verdict = classify_sequence(order, x, tol, space)
    if not verdict.is_member:
        raise UsageError("x is not classified as a member of {} ({})".format(
            space.value, verdict.status.value))

    m = len(a)
    lhs = float(np.dot(a.terms, x.terms[:m]))
    y = apply_forward(order, x).terms
    rhs = float(np.dot(r_values(order, a.terms), y[:m]))
    rho, xi = 0.0, None
    if space is SpaceId.C_DELTA:
        rho = check_beta_dual(order, a, space, tol).rho.value
        xi = verdict.limit
        rhs -= rho * xi
    return PairingResult(lhs, rhs, abs(lhs - rhs), rho, xi)


def report_notes(space):
    """Note keys that apply to a beta-dual report for ``space``."""
    keys = {'MF3': 'mf3-index', 'MF4': 'w-gamma-argument',
            'MF5': 'mf5-inner-index'}
    conditions = DUAL_CONDITIONS[SpaceId.from_tag(space)]
    return notes_for(*(keys[c] for c in conditions if c in keys))
