# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Exceptions and warnings raised by `fracseq`."""
from astropy.utils.exceptions import AstropyUserWarning

__all__ = ['FracseqError', 'PoleError', 'UsageError',
           'UnsupportedSpaceError', 'FracseqWarning']


class FracseqError(Exception):
    pass


class PoleError(FracseqError, ValueError):
    """The order hits a pole of Gamma(alpha + 1) or is not finite."""


class UsageError(FracseqError, ValueError):
    """A precondition of an operation is violated."""


class UnsupportedSpaceError(UsageError):
    """The requested space has no support for the operation."""


class FracseqWarning(AstropyUserWarning):
    """A numerical cross-check exceeded its tolerance."""
