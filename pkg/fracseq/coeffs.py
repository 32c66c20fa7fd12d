# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""
Fractional binomial coefficients.

The coefficients of the fractional difference operator of order
:math:`\\alpha` are

.. math::

    c_i(\\alpha) = (-1)^i \\frac{\\Gamma(\\alpha + 1)}
                                 {i!\\,\\Gamma(\\alpha - i + 1)},

evaluated here through the multiplicative recurrence
:math:`c_i = c_{i-1} (i - 1 - \\alpha) / i` so that no Gamma function is
ever evaluated at a pole.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

import numpy as np

from .config import conf
from .exceptions import PoleError, UsageError

__all__ = ['FracOrder', 'CoeffSeries', 'TailSumBound', 'frac_coeffs',
           'inverse_coeffs', 'convolve', 'tail_sum_bound', 'as_order']

# Cauchy window and tolerance for declaring a coefficient tail settled.
TAIL_WINDOW = 16
TAIL_TOLERANCE = 1e-9
RATIO_TERMS = 8


@dataclass(frozen=True)
class FracOrder:
    """
    A validated fractional order.

    Parameters
    ----------
    value : float
        The order. Must be finite and must not be a negative integer,
        where :math:`\\Gamma(\\alpha + 1)` has a pole.

    Raises
    ------
    PoleError
        If ``value`` is not finite or is a negative integer.
    """

    value: float

    def __post_init__(self):
        if isinstance(self.value, (str, bytes)) or not isinstance(
                self.value, (Real, np.floating, np.integer)):
            raise UsageError("order must be a real number, got {!r}"
                             .format(self.value))
        value = float(self.value)
        if not math.isfinite(value):
            raise PoleError("order must be finite, got {}".format(value))
        if value < 0 and value == math.floor(value):
            raise PoleError("order {:g} is a pole of Gamma(alpha + 1) "
                            "(alpha + 1 = {:g})".format(value, value + 1))
        object.__setattr__(self, 'value', value)

    @classmethod
    def parse(cls, text):
        """Build from a decimal or fraction literal such as ``'2/3'``."""
        if isinstance(text, cls):
            return text
        try:
            value = float(Fraction(str(text).strip()))
        except (ValueError, ZeroDivisionError):
            raise UsageError("cannot read order {!r}".format(text))
        return cls(value)

    @property
    def is_integer(self):
        return self.value == math.floor(self.value)

    @property
    def negated(self):
        """The order of the inverse operator; raises for positive integers."""
        return FracOrder(-self.value)

    def __add__(self, other):
        if isinstance(other, FracOrder):
            return FracOrder(self.value + other.value)
        return NotImplemented

    def __float__(self):
        return self.value

    def __str__(self):
        return repr(self.value)


def as_order(order):
    if isinstance(order, FracOrder):
        return order
    return FracOrder.parse(order) if isinstance(order, str) else \
        FracOrder(order)


def _recurrence(alpha, n):
    k = np.arange(1, n, dtype=float)
    terms = np.empty(n)
    terms[0] = 1.0
    terms[1:] = np.cumprod((k - 1 - alpha) / k)
    return terms


@dataclass(frozen=True, eq=False)
class CoeffSeries:
    """
    Prefix :math:`c_0, \\ldots, c_{N-1}` of a coefficient series.

    ``order`` is the order whose coefficients are stored. ``terms`` is a
    read-only float array.
    """

    order: float
    terms: np.ndarray

    def __post_init__(self):
        terms = np.array(self.terms, dtype=float)
        terms.setflags(write=False)
        object.__setattr__(self, 'terms', terms)
        object.__setattr__(self, 'order', float(self.order))

    @property
    def length(self):
        return len(self.terms)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, item):
        return self.terms[item]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.terms, dtype=dtype)

    def tolist(self):
        return self.terms.tolist()


def frac_coeffs(order, n=None):
    """
    Coefficients of the fractional difference operator.

    Parameters
    ----------
    order : `FracOrder`, float or str
        Order of the operator.
    n : int, optional
        Number of coefficients. Defaults to ``conf.series_length``.

    Returns
    -------
    series : `CoeffSeries`

    Examples
    --------
    >>> frac_coeffs(0.5, 5).tolist()
    [1.0, -0.5, -0.125, -0.0625, -0.0390625]
    """
    order = as_order(order)
    n = int(conf.series_length) if n is None else int(n)
    if n < 1:
        raise UsageError("series length must be at least 1, got {}"
                         .format(n))
    return CoeffSeries(order.value, _recurrence(order.value, n))


def inverse_coeffs(order, n=None):
    """
    Coefficients of the inverse operator, i.e. the series at ``-order``.

    The recurrence is applied directly, so positive integer orders are
    accepted (their inverse series is well defined even though ``-order``
    is a pole of the forward closed form).
    """
    order = as_order(order)
    n = int(conf.series_length) if n is None else int(n)
    if n < 1:
        raise UsageError("series length must be at least 1, got {}"
                         .format(n))
    return CoeffSeries(-order.value, _recurrence(-order.value, n))


def convolve(a, b):
    """
    Cauchy product of two coefficient prefixes of equal length.

    Returns
    -------
    terms : `~numpy.ndarray`
        :math:`(\\sum_{i \\le k} a_i b_{k-i})_{k < N}`.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or b.ndim != 1 or len(a) != len(b):
        raise UsageError("convolve needs two series of equal length, got {} "
                         "and {}".format(a.shape, b.shape))
    return np.convolve(a, b)[:len(a)]


@dataclass(frozen=True)
class TailSumBound:
    """
    Estimate of :math:`\\sum_i |c_i|` from a finite prefix.

    ``partial`` is the sum over the prefix, ``tail`` the estimated
    remainder (0 when settled, ``inf`` when unbounded) and ``exponent`` the
    estimated decay exponent :math:`p` in :math:`|c_i| \\sim i^{-p}`.
    """

    partial: float
    tail: float
    exponent: float
    settled: bool
    unbounded: bool

    @property
    def total(self):
        return self.partial + self.tail

    def to_dict(self):
        return {'partial': self.partial, 'tail': self.tail,
                'total': self.total, 'exponent': self.exponent,
                'settled': self.settled, 'unbounded': self.unbounded}


def tail_sum_bound(series):
    """
    Bound :math:`\\sum_i |c_i|` by the prefix sum plus a tail estimate.

    The tail is settled (zero) when the last `TAIL_WINDOW` absolute terms
    sum to at most `TAIL_TOLERANCE`. Otherwise the decay exponent is
    estimated from the last ratios, :math:`p_i = (i + 1)(1 - |c_{i+1} /
    c_i|)`, which tends to :math:`\\alpha + 1`. An exponent ``p <= 1``
    flags an unbounded tail; else the tail is extrapolated with the
    midpoint integral of :math:`C i^{-p}` beyond the prefix.

    Parameters
    ----------
    series : `CoeffSeries`

    Returns
    -------
    bound : `TailSumBound`
    """
    mags = np.abs(np.asarray(series, dtype=float))
    n = len(mags)
    partial = float(mags.sum())
    alpha = float(series.order) if isinstance(series, CoeffSeries) else None

    if alpha is not None and alpha >= 0 and alpha == math.floor(alpha) \
            and n > alpha:
        return TailSumBound(partial, 0.0, math.inf, True, False)
    if n >= TAIL_WINDOW and mags[-TAIL_WINDOW:].sum() <= TAIL_TOLERANCE:
        return TailSumBound(partial, 0.0, math.inf, True, False)

    head = mags[-RATIO_TERMS - 1:]
    if len(head) == RATIO_TERMS + 1 and np.all(head[:-1] > 0):
        index = np.arange(n - RATIO_TERMS - 1, n - 1, dtype=float)
        exponent = float(np.mean((index + 1) * (1 - head[1:] / head[:-1])))
    elif alpha is not None:
        exponent = alpha + 1
    else:
        return TailSumBound(partial, math.inf, math.nan, False, True)

    if exponent <= 1:
        return TailSumBound(partial, math.inf, exponent, False, True)
    last = n - 1
    if last == 0:
        return TailSumBound(partial, math.inf, exponent, False, True)
    scale = mags[-1] * last ** exponent
    tail = scale * (n - 0.5) ** (1 - exponent) / (exponent - 1)
    return TailSumBound(partial, float(tail), exponent, False, False)
