# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Limit estimates built from geometrically spaced samples."""
import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = ['LimitStatus', 'LimitEstimate']


class LimitStatus(str, enum.Enum):
    CONVERGED = 'converged'
    DIVERGING = 'diverging'
    UNDETERMINED = 'undetermined'

    @classmethod
    def combine(cls, *statuses):
        """Converged only if all are; any divergence wins otherwise."""
        statuses = set(statuses)
        if cls.DIVERGING in statuses:
            return cls.DIVERGING
        if cls.UNDETERMINED in statuses:
            return cls.UNDETERMINED
        return cls.CONVERGED


def _growing(values, growth_factor):
    mags = np.abs(np.asarray(values, dtype=float))
    if not np.all(np.isfinite(mags)):
        return bool(np.isinf(mags[-1]))
    if not np.all(np.diff(mags) > 0):
        return False
    if mags[0] == 0:
        return True
    return mags[-1] >= growth_factor * mags[0]


@dataclass(frozen=True)
class LimitEstimate:
    """
    Numerical evidence for a limit, a supremum or an infinite sum.

    Parameters
    ----------
    value : float
        Best available value (the last sample). Meaningful only when
        ``status`` is converged.
    status : `LimitStatus`
    residual : float
        Spread of the samples the verdict rests on.
    samples : tuple of float
        Partial evaluations, in the order they were taken.
    """

    value: float
    status: LimitStatus
    residual: float = 0.0
    samples: tuple = ()

    @property
    def converged(self):
        return self.status is LimitStatus.CONVERGED

    @classmethod
    def exact(cls, value, samples=None):
        """A value known without truncation error."""
        value = float(value)
        samples = (value,) if samples is None else tuple(map(float, samples))
        return cls(value, LimitStatus.CONVERGED, 0.0, samples)

    @classmethod
    def undetermined(cls, samples=(), value=math.nan):
        samples = tuple(map(float, samples))
        return cls(float(value), LimitStatus.UNDETERMINED, math.inf, samples)

    @classmethod
    def from_samples(cls, samples, eps, growth_factor=1.5):
        """
        Apply the three-sample rule to a trail of partial evaluations.

        Converged when the last three samples lie within ``eps`` of each
        other; diverging when their magnitudes increase strictly and by at
        least ``growth_factor`` overall; undetermined otherwise.
        """
        samples = tuple(map(float, samples))
        if len(samples) < 3:
            return cls.undetermined(samples, samples[-1] if samples
                                    else math.nan)
        last = samples[-3:]
        value = last[-1]
        if not all(map(math.isfinite, last)):
            status = (LimitStatus.DIVERGING if math.isinf(value)
                      else LimitStatus.UNDETERMINED)
            return cls(value, status, math.inf, samples)
        spread = max(last) - min(last)
        if spread <= eps:
            status = LimitStatus.CONVERGED
        elif _growing(last, growth_factor):
            status = LimitStatus.DIVERGING
        else:
            status = LimitStatus.UNDETERMINED
        return cls(value, status, spread, samples)

    @classmethod
    def bounded(cls, running_sups, eps, growth_factor=1.5):
        """
        Boundedness evidence from running suprema at checkpoints.

        The supremum counts as finite when the last three running sups
        agree to ``eps * max(1, |value|)``.
        """
        samples = tuple(map(float, running_sups))
        if len(samples) < 3:
            return cls.undetermined(samples, samples[-1] if samples
                                    else math.nan)
        last = samples[-3:]
        value = last[-1]
        if math.isinf(value):
            return cls(value, LimitStatus.DIVERGING, math.inf, samples)
        spread = max(last) - min(last)
        if spread <= eps * max(1.0, abs(value)):
            status = LimitStatus.CONVERGED
        elif _growing(last, growth_factor):
            status = LimitStatus.DIVERGING
        else:
            status = LimitStatus.UNDETERMINED
        return cls(value, status, spread, samples)

    def with_status(self, status):
        """Copy with ``status`` combined into the current one."""
        combined = LimitStatus.combine(self.status, status)
        if combined is self.status:
            return self
        residual = self.residual if combined.value == 'converged' else math.inf
        return LimitEstimate(self.value, combined, residual, self.samples)

    def is_zero(self, eps):
        return self.converged and abs(self.value) <= eps

    def to_dict(self):
        return {'value': self.value,
                'status': self.status.value,
                'residual': self.residual,
                'samples': list(self.samples)}
