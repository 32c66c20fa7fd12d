# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Fractional difference operators on one-sided truncated sequences."""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import toeplitz

from .coeffs import as_order, frac_coeffs, inverse_coeffs
from .exceptions import UsageError

__all__ = ['Seq', 'TriMatrix', 'apply_forward', 'apply_inverse',
           'operator_matrix', 'inverse_matrix']


@dataclass(frozen=True, eq=False)
class Seq:
    """
    A truncated one-sided sequence :math:`x_0, \\ldots, x_{N-1}`.

    Entries before index 0 are zero by convention.
    """

    terms: np.ndarray

    def __post_init__(self):
        try:
            terms = np.array(self.terms, dtype=float)
        except (TypeError, ValueError):
            raise UsageError("sequence terms must be real numbers")
        if terms.ndim != 1 or len(terms) < 1:
            raise UsageError("a sequence needs at least one term")
        if not np.all(np.isfinite(terms)):
            raise UsageError("sequence terms must be finite")
        terms.setflags(write=False)
        object.__setattr__(self, 'terms', terms)

    @classmethod
    def coerce(cls, value):
        return value if isinstance(value, cls) else cls(value)

    @classmethod
    def from_dict(cls, data):
        """Read ``{"terms": [...]}``."""
        if not isinstance(data, dict) or 'terms' not in data:
            raise UsageError('sequence JSON must be an object with "terms"')
        return cls(data['terms'])

    def to_dict(self):
        return {'terms': self.terms.tolist()}

    @property
    def length(self):
        return len(self.terms)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, item):
        return self.terms[item]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.terms, dtype=dtype)

    def __eq__(self, other):
        if not isinstance(other, Seq):
            return NotImplemented
        return np.array_equal(self.terms, other.terms)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class TriMatrix:
    """
    A lower-triangular ``size x size`` block of an infinite matrix.

    Entries above the diagonal are stored as zeros.
    """

    entries: np.ndarray

    def __post_init__(self):
        entries = np.tril(np.array(self.entries, dtype=float))
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise UsageError("a triangle needs a square entry array, got "
                             "shape {}".format(entries.shape))
        entries.setflags(write=False)
        object.__setattr__(self, 'entries', entries)

    @property
    def size(self):
        return self.entries.shape[0]

    def is_triangle(self):
        """True when every diagonal entry is nonzero."""
        return bool(np.all(np.diag(self.entries) != 0))

    def matvec(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.size,):
            raise UsageError("vector of length {} does not match a triangle "
                             "of size {}".format(len(x), self.size))
        return self.entries @ x

    def __matmul__(self, other):
        if isinstance(other, TriMatrix):
            if other.size != self.size:
                raise UsageError("triangle sizes differ: {} and {}"
                                 .format(self.size, other.size))
            return TriMatrix(self.entries @ other.entries)
        if isinstance(other, Seq):
            return Seq(self.matvec(other.terms))
        return self.matvec(other)

    def rows(self):
        """Rows as lists, row ``n`` holding entries ``0..n``."""
        return [self.entries[n, :n + 1].tolist() for n in range(self.size)]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


def apply_forward(order, x):
    """
    Apply the fractional difference operator to a truncated sequence.

    :math:`y_k = \\sum_{i=0}^{k} c_i(\\alpha) x_{k-i}`, the length is
    preserved.

    Parameters
    ----------
    order : `~fracseq.coeffs.FracOrder` or float
    x : `Seq` or array-like

    Returns
    -------
    y : `Seq`
    """
    x = Seq.coerce(x)
    coeffs = frac_coeffs(order, len(x))
    return Seq(np.convolve(coeffs.terms, x.terms)[:len(x)])


def apply_inverse(order, y):
    """Apply the inverse operator, i.e. the operator of order ``-order``."""
    y = Seq.coerce(y)
    coeffs = inverse_coeffs(order, len(y))
    return Seq(np.convolve(coeffs.terms, y.terms)[:len(y)])


def _toeplitz_triangle(column):
    row = np.zeros_like(column)
    row[0] = column[0]
    return TriMatrix(toeplitz(column, row))


def operator_matrix(order, size):
    """The triangle :math:`t_{nk} = c_{n-k}(\\alpha)` of a given size."""
    order = as_order(order)
    if size < 1:
        raise UsageError("size must be at least 1")
    return _toeplitz_triangle(frac_coeffs(order, size).terms.copy())


def inverse_matrix(order, size):
    """The triangle :math:`s_{nk} = c_{n-k}(-\\alpha)`."""
    if size < 1:
        raise UsageError("size must be at least 1")
    return _toeplitz_triangle(inverse_coeffs(order, size).terms.copy())
