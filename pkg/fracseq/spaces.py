# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""
Matrix domains of the fractional difference operator.

A sequence ``x`` belongs to :math:`X(\\Delta^{\\alpha})` when its transform
:math:`y = \\Delta^{\\alpha} x` belongs to the classical space ``X``. On
finite truncations membership can only be supported by evidence; the
verdicts below say so explicitly.
"""
import enum
import warnings
from dataclasses import dataclass, field

import numpy as np

from astropy import log

from .config import ToleranceConfig
from .exceptions import FracseqWarning, UnsupportedSpaceError, UsageError
from .fracop import Seq, apply_forward, inverse_matrix

__all__ = ['SpaceId', 'MembershipStatus', 'MembershipVerdict',
           'BasisSequences', 'DOMAINS', 'CODOMAINS', 'as_domain',
           'as_codomain', 'delta_norm', 'classify_sequence',
           'basis_sequences', 'schauder_reconstruct']


class SpaceId(str, enum.Enum):
    """Sequence spaces, tagged the way the command line spells them."""

    C0_DELTA = 'c0d'
    C_DELTA = 'cd'
    LINF_DELTA = 'linfd'
    C0 = 'c0'
    C = 'c'
    LINF = 'linf'
    L1 = 'l1'

    @classmethod
    def from_tag(cls, tag):
        if isinstance(tag, cls):
            return tag
        try:
            return cls(str(tag).lower())
        except ValueError:
            raise UsageError("unknown space {!r}; expected one of {}".format(
                tag, ', '.join(s.value for s in cls)))

    @property
    def is_domain(self):
        return self in DOMAINS

    @property
    def classical(self):
        """The classical space the transform must land in."""
        return {SpaceId.C0_DELTA: SpaceId.C0,
                SpaceId.C_DELTA: SpaceId.C,
                SpaceId.LINF_DELTA: SpaceId.LINF}.get(self, self)


DOMAINS = (SpaceId.LINF_DELTA, SpaceId.C0_DELTA, SpaceId.C_DELTA)
CODOMAINS = (SpaceId.LINF, SpaceId.C0, SpaceId.C, SpaceId.L1)


def as_domain(tag):
    """A fractional matrix domain; other tags raise."""
    space = SpaceId.from_tag(tag)
    if space not in DOMAINS:
        raise UnsupportedSpaceError("domain must be one of c0d, cd, linfd; "
                                    "got {}".format(space.value))
    return space


def as_codomain(tag):
    """A classical codomain; other tags raise."""
    space = SpaceId.from_tag(tag)
    if space not in CODOMAINS:
        raise UnsupportedSpaceError("codomain must be one of linf, c0, c, "
                                    "l1; got {}".format(space.value))
    return space

# Smallest first: c0(D) in c(D) in linf(D).
_NESTING = (SpaceId.C0_DELTA, SpaceId.C_DELTA, SpaceId.LINF_DELTA)


class MembershipStatus(str, enum.Enum):
    MEMBER = 'member'
    NON_MEMBER_EVIDENCE = 'non-member-evidence'
    UNDETERMINED = 'undetermined'


@dataclass(frozen=True)
class MembershipVerdict:
    """
    Evidence-based membership of a truncated sequence.

    ``limit`` holds the trailing-mean estimate of
    :math:`\\xi = \\lim y_n` and is set only for members of
    :math:`c(\\Delta^{\\alpha})`. ``norm`` is the truncated BK norm.
    """

    space: SpaceId
    status: MembershipStatus
    norm: float
    limit: float = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def is_member(self):
        return self.status is MembershipStatus.MEMBER

    def to_dict(self):
        return {'space': self.space.value,
                'status': self.status.value,
                'limit': self.limit,
                'norm': self.norm,
                'diagnostics': dict(self.diagnostics)}


def delta_norm(order, x):
    """
    The BK norm :math:`\\sup_n |(\\Delta^{\\alpha} x)_n|` on the
    truncation.
    """
    return float(np.max(np.abs(apply_forward(order, x).terms)))


def _tail_stats(y, window):
    tail = y[-window:]
    prev = y[-2 * window:-window]
    mags = np.abs(tail)
    # window steps span window + 1 terms
    steps = np.diff(np.abs(y[-(window + 1):]))
    return {'window': int(window),
            'tail_max_abs': float(mags.max()),
            'tail_oscillation': float(np.ptp(tail)),
            'previous_oscillation': float(np.ptp(prev)),
            'tail_mean': float(tail.mean()),
            'growing': bool(np.all(steps > 0))}


def _settling(stats):
    # oscillation shrinking window over window may still settle
    return stats['tail_oscillation'] < 0.5 * stats['previous_oscillation']


def classify_sequence(order, x, tol=None, space=None):
    """
    Classify a truncated sequence against the fractional matrix domains.

    Parameters
    ----------
    order : `~fracseq.coeffs.FracOrder` or float
    x : `~fracseq.fracop.Seq` or array-like
        Must hold at least ``2 * tol.window`` terms.
    tol : `~fracseq.config.ToleranceConfig`, optional
    space : `SpaceId` or str, optional
        Answer for this space instead of reporting the smallest space the
        evidence supports.

    Returns
    -------
    verdict : `MembershipVerdict`

    Notes
    -----
    The transform tail is tested in order: vanishing last window
    (:math:`c_0(\\Delta)`), last window within ``eps`` of constant
    (:math:`c(\\Delta)`, with the trailing mean as the limit), and
    otherwise :math:`\\ell_\\infty(\\Delta)`, undetermined when the
    magnitudes grow monotonically across the window.
    """
    tol = ToleranceConfig.from_conf() if tol is None else tol
    x = Seq.coerce(x)
    if len(x) < 2 * tol.window:
        raise UsageError("sequence of length {} is shorter than twice the "
                         "diagnostic window {}".format(len(x), tol.window))
    y = apply_forward(order, x).terms
    norm = float(np.max(np.abs(y)))
    stats = _tail_stats(y, tol.window)

    if stats['tail_max_abs'] <= tol.eps:
        detected, status, limit = (SpaceId.C0_DELTA, MembershipStatus.MEMBER,
                                   None)
    elif stats['tail_oscillation'] <= tol.eps:
        detected, status, limit = (SpaceId.C_DELTA, MembershipStatus.MEMBER,
                                   stats['tail_mean'])
    elif stats['growing']:
        detected, status, limit = (SpaceId.LINF_DELTA,
                                   MembershipStatus.UNDETERMINED, None)
    else:
        detected, status, limit = (SpaceId.LINF_DELTA,
                                   MembershipStatus.MEMBER, None)
    stats['detected'] = detected.value
    log.debug("classify_sequence: detected {} ({})".format(
        detected.value, status.value))

    if space is None:
        return MembershipVerdict(detected, status, norm, limit, stats)

    space = SpaceId.from_tag(space)
    if not space.is_domain:
        raise UsageError("membership is decided for c0d, cd or linfd, not "
                         "{}".format(space.value))
    if status is MembershipStatus.MEMBER and \
            _NESTING.index(detected) <= _NESTING.index(space):
        if space is SpaceId.C_DELTA:
            limit = 0.0 if limit is None else limit
        else:
            limit = None
        return MembershipVerdict(space, MembershipStatus.MEMBER, norm, limit,
                                 stats)
    if stats['growing']:
        return MembershipVerdict(space, MembershipStatus.NON_MEMBER_EVIDENCE,
                                 norm, None, stats)
    if space is SpaceId.C0_DELTA and detected is SpaceId.C_DELTA:
        # converges, to a nonzero limit
        return MembershipVerdict(space, MembershipStatus.NON_MEMBER_EVIDENCE,
                                 norm, None, stats)
    if _settling(stats):
        return MembershipVerdict(space, MembershipStatus.UNDETERMINED, norm,
                                 None, stats)
    return MembershipVerdict(space, MembershipStatus.NON_MEMBER_EVIDENCE,
                             norm, None, stats)


@dataclass(frozen=True, eq=False)
class BasisSequences:
    """
    Truncated Schauder basis.

    ``columns[:, n]`` is :math:`c^{(n)}` and ``constant`` is
    :math:`c^{(-1)}`, the row sums of the inverse triangle.
    """

    columns: np.ndarray
    constant: np.ndarray

    def element(self, n):
        return self.columns[:, n]


def basis_sequences(order, size):
    """Materialize :math:`c^{(n)}` for ``n < size`` and :math:`c^{(-1)}`."""
    inverse = np.asarray(inverse_matrix(order, size))
    return BasisSequences(inverse, inverse.sum(axis=1))


def schauder_reconstruct(order, x, space, tol=None, xi=None):
    """
    Rebuild ``x`` from its basis expansion.

    In :math:`c_0(\\Delta^{\\alpha})`, :math:`x = \\sum_n y_n c^{(n)}`; in
    :math:`c(\\Delta^{\\alpha})`, :math:`x = \\xi c^{(-1)} + \\sum_n (y_n -
    \\xi) c^{(n)}` with ``xi`` taken from `classify_sequence` unless given.

    Raises
    ------
    UnsupportedSpaceError
        For :math:`\\ell_\\infty(\\Delta^{\\alpha})`, which has no basis,
        and for classical spaces.
    UsageError
        In the ``c`` case, when ``x`` is not classified as a member.
    """
    tol = ToleranceConfig.from_conf() if tol is None else tol
    space = SpaceId.from_tag(space)
    if space not in (SpaceId.C0_DELTA, SpaceId.C_DELTA):
        raise UnsupportedSpaceError(
            "no Schauder basis is available for {}".format(space.value))
    x = Seq.coerce(x)
    y = apply_forward(order, x).terms
    basis = basis_sequences(order, len(x))

    if space is SpaceId.C0_DELTA:
        rebuilt = basis.columns @ y
    else:
        if xi is None:
            verdict = classify_sequence(order, x, tol, SpaceId.C_DELTA)
            if not verdict.is_member:
                raise UsageError("sequence is not classified as a member of "
                                 "c(Delta^alpha): {}".format(
                                     verdict.status.value))
            xi = verdict.limit
        rebuilt = xi * basis.constant + basis.columns @ (y - xi)

    residual = float(np.max(np.abs(rebuilt - x.terms)))
    scale = max(1.0, float(np.max(np.abs(x.terms))))
    if residual > tol.eps * scale:
        warnings.warn("Schauder reconstruction residual {:.3g} exceeds "
                      "tolerance".format(residual), FracseqWarning)
    return Seq(rebuilt)
