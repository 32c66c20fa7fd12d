# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""
Sequence spaces and matrix classes of the fractional difference operator.
"""
import sys

try:
    from importlib.metadata import PackageNotFoundError, version as _version
except ImportError:  # pragma: no cover
    from importlib_metadata import PackageNotFoundError, version as _version

__minimum_python_version__ = "3.8"


class UnsupportedPythonError(Exception):
    pass


if sys.version_info < tuple(int(v) for v in
                            __minimum_python_version__.split('.')):
    raise UnsupportedPythonError("fracseq does not support Python < {}"
                                 .format(__minimum_python_version__))

try:
    __version__ = _version(__name__)
except PackageNotFoundError:  # pragma: no cover
    __version__ = 'unknown'

from .config import conf, ToleranceConfig  # noqa
from .exceptions import *  # noqa
from .coeffs import FracOrder, frac_coeffs, inverse_coeffs, convolve  # noqa
from .fracop import Seq, TriMatrix, apply_forward, apply_inverse  # noqa
from .spaces import SpaceId, classify_sequence  # noqa
from .matrix import MatrixSpec, TermSource  # noqa
from .transform import analyze, hat_matrix, r_transform  # noqa
from .dual import check_beta_dual, pairing  # noqa
from .classify import (class_membership, class_table, sup_norm,  # noqa
                       group_norm)
from .compact import hmnc_bounds, is_compact  # noqa

__all__ = ['conf', 'ToleranceConfig', 'FracOrder', 'frac_coeffs',
           'inverse_coeffs', 'convolve', 'Seq', 'TriMatrix', 'apply_forward',
           'apply_inverse', 'SpaceId', 'classify_sequence', 'MatrixSpec',
           'TermSource', 'analyze', 'hat_matrix', 'r_transform',
           'check_beta_dual', 'pairing', 'class_membership', 'class_table',
           'sup_norm', 'group_norm', 'hmnc_bounds', 'is_compact',
           'FracseqError', 'PoleError', 'UsageError',
           'UnsupportedSpaceError', 'FracseqWarning']
