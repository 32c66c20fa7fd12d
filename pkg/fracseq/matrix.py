# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""
Infinite matrices given by generators.

A `MatrixSpec` answers ``entry(n, k)`` for every ``n, k >= 0`` and knows
how much of each row and of the row sequence is nonzero. The `RowPlan` of
a matrix decides which rows are evaluated and how a row functional
``q(n)`` is turned into a limit, a supremum or a sum over ``n``.
"""
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import UsageError
from .limits import LimitEstimate, LimitStatus

__all__ = ['TermSource', 'MatrixKind', 'MatrixSpec', 'PlanKind', 'RowPlan']


def _as_float_tuple(values, what):
    try:
        out = tuple(float(v) for v in values)
    except (TypeError, ValueError):
        raise UsageError("{} must be a list of numbers".format(what))
    if not all(map(math.isfinite, out)):
        raise UsageError("{} must be finite".format(what))
    return out


@dataclass(frozen=True)
class TermSource:
    """
    A one-sided generator sequence.

    Index ``i`` reads ``terms[i]`` when listed, otherwise ``func(i)`` when a
    callable is given, otherwise ``fill``.
    """

    terms: tuple = ()
    fill: float = 0.0
    func: object = None

    def __post_init__(self):
        object.__setattr__(self, 'terms',
                           _as_float_tuple(self.terms, 'generator terms'))
        object.__setattr__(self, 'fill', float(self.fill))
        if not math.isfinite(self.fill):
            raise UsageError("generator fill must be finite")
        if self.func is not None and not callable(self.func):
            raise UsageError("generator func must be callable")

    @classmethod
    def coerce(cls, value, fill=0.0):
        """Accept a `TermSource`, a callable, a list or a JSON object."""
        if isinstance(value, cls):
            return value
        if callable(value):
            return cls(func=value)
        if isinstance(value, dict):
            unknown = set(value) - {'terms', 'fill'}
            if unknown or 'terms' not in value:
                raise UsageError('generator objects take "terms" and an '
                                 'optional "fill", got {}'.format(
                                     sorted(value)))
            return cls(value['terms'], value.get('fill', 0.0))
        if isinstance(value, (list, tuple, np.ndarray)):
            return cls(tuple(value), fill)
        raise UsageError("cannot read generator {!r}".format(value))

    @property
    def support(self):
        """Number of leading terms holding every nonzero, or None."""
        if self.func is not None or self.fill != 0:
            return None
        nonzero = np.flatnonzero(self.terms)
        return int(nonzero[-1]) + 1 if len(nonzero) else 0

    def value(self, i):
        if i < len(self.terms):
            return self.terms[i]
        if self.func is not None:
            return float(self.func(i))
        return self.fill

    def values(self, start, stop):
        if stop <= start:
            return np.zeros(0)
        out = np.full(stop - start, self.fill)
        listed = min(stop, len(self.terms))
        if listed > start:
            out[:listed - start] = self.terms[start:listed]
        if self.func is not None:
            first = max(start, len(self.terms))
            out[first - start:] = [float(self.func(i))
                                   for i in range(first, stop)]
        return out

    def to_dict(self):
        if self.func is not None:
            return {'terms': list(self.terms),
                    'generator': getattr(self.func, '__name__',
                                         repr(self.func))}
        return {'terms': list(self.terms), 'fill': self.fill}


class MatrixKind(str, enum.Enum):
    EXPLICIT = 'explicit'
    DIAGONAL = 'diagonal'
    BAND = 'band'
    RANK_ONE = 'rank_one'
    FINITE_RANK = 'finite_rank'
    ZERO = 'zero'


class PlanKind(str, enum.Enum):
    VANISHING = 'vanishing'
    PERIODIC = 'periodic'
    OPEN = 'open'


_KEYS = {
    MatrixKind.EXPLICIT: {'rows'},
    MatrixKind.FINITE_RANK: {'rows'},
    MatrixKind.DIAGONAL: {'terms', 'fill'},
    MatrixKind.BAND: {'offsets', 'values'},
    MatrixKind.RANK_ONE: {'u', 'v'},
    MatrixKind.ZERO: set(),
}


@dataclass(frozen=True)
class MatrixSpec:
    """
    An infinite matrix :math:`A = (a_{nk})_{n, k \\ge 0}`.

    Use the constructors (`explicit`, `finite_rank`, `diagonal`, `band`,
    `rank_one`, `zero`, `identity`) or `from_dict` rather than building
    instances directly.

    ``explicit`` rows repeat cyclically beyond the listed rows;
    ``finite_rank`` rows are followed by zero rows. ``truncate`` may hold
    ``{'rows': ..., 'cols': ...}`` overrides for analyses of this matrix.
    """

    kind: MatrixKind
    rows: tuple = ()
    diag: TermSource = None
    offsets: tuple = ()
    values: tuple = ()
    u: TermSource = None
    v: TermSource = None
    truncate: tuple = ()

    # -- constructors -----------------------------------------------------

    @classmethod
    def _with_truncate(cls, truncate):
        if not truncate:
            return ()
        if not isinstance(truncate, dict) or \
                not set(truncate) <= {'rows', 'cols'}:
            raise UsageError('"truncate" takes "rows" and "cols"')
        try:
            return tuple(sorted((k, int(v)) for k, v in truncate.items()))
        except (TypeError, ValueError):
            raise UsageError('"truncate" values must be integers')

    @staticmethod
    def _rows(rows, allow_empty):
        if isinstance(rows, np.ndarray):
            rows = rows.tolist()
        if not isinstance(rows, (list, tuple)):
            raise UsageError('"rows" must be a list of lists')
        out = tuple(_as_float_tuple(row, 'matrix rows') for row in rows)
        if not out and not allow_empty:
            raise UsageError("explicit matrices need at least one row")
        return out

    @classmethod
    def explicit(cls, rows, truncate=None):
        return cls(MatrixKind.EXPLICIT, rows=cls._rows(rows, False),
                   truncate=cls._with_truncate(truncate))

    @classmethod
    def finite_rank(cls, rows, truncate=None):
        return cls(MatrixKind.FINITE_RANK, rows=cls._rows(rows, True),
                   truncate=cls._with_truncate(truncate))

    @classmethod
    def diagonal(cls, terms, fill=0.0, truncate=None):
        return cls(MatrixKind.DIAGONAL, diag=TermSource.coerce(terms, fill),
                   truncate=cls._with_truncate(truncate))

    @classmethod
    def band(cls, offsets, values, truncate=None):
        try:
            offsets = tuple(int(o) for o in offsets)
        except (TypeError, ValueError):
            raise UsageError('band "offsets" must be integers')
        values = _as_float_tuple(values, 'band values')
        if len(offsets) != len(values) or len(set(offsets)) != len(offsets):
            raise UsageError("band needs distinct offsets, one value each")
        return cls(MatrixKind.BAND, offsets=offsets, values=values,
                   truncate=cls._with_truncate(truncate))

    @classmethod
    def rank_one(cls, u, v, truncate=None):
        return cls(MatrixKind.RANK_ONE, u=TermSource.coerce(u),
                   v=TermSource.coerce(v),
                   truncate=cls._with_truncate(truncate))

    @classmethod
    def zero(cls, truncate=None):
        return cls(MatrixKind.ZERO, truncate=cls._with_truncate(truncate))

    @classmethod
    def identity(cls, truncate=None):
        return cls.diagonal((), fill=1.0, truncate=truncate)

    @classmethod
    def from_dict(cls, data):
        """
        Read the JSON form, e.g. ``{"kind": "band", "offsets": [0, 1],
        "values": [1, -1]}``.
        """
        if not isinstance(data, dict) or 'kind' not in data:
            raise UsageError('matrix JSON must be an object with "kind"')
        try:
            kind = MatrixKind(data['kind'])
        except ValueError:
            raise UsageError("unknown matrix kind {!r}".format(data['kind']))
        unknown = set(data) - _KEYS[kind] - {'kind', 'truncate'}
        if unknown:
            raise UsageError("unexpected keys for {} matrix: {}".format(
                kind.value, ', '.join(sorted(unknown))))
        missing = _KEYS[kind] - set(data) - {'fill'}
        if missing:
            raise UsageError("missing keys for {} matrix: {}".format(
                kind.value, ', '.join(sorted(missing))))
        truncate = data.get('truncate')
        if kind in (MatrixKind.EXPLICIT, MatrixKind.FINITE_RANK):
            return getattr(cls, kind.value)(data['rows'], truncate)
        if kind is MatrixKind.DIAGONAL:
            return cls.diagonal(data['terms'], data.get('fill', 0.0),
                                truncate)
        if kind is MatrixKind.BAND:
            return cls.band(data['offsets'], data['values'], truncate)
        if kind is MatrixKind.RANK_ONE:
            return cls.rank_one(data['u'], data['v'], truncate)
        return cls.zero(truncate)

    def to_dict(self):
        out = {'kind': self.kind.value}
        if self.kind in (MatrixKind.EXPLICIT, MatrixKind.FINITE_RANK):
            out['rows'] = [list(row) for row in self.rows]
        elif self.kind is MatrixKind.DIAGONAL:
            out.update(self.diag.to_dict())
        elif self.kind is MatrixKind.BAND:
            out['offsets'] = list(self.offsets)
            out['values'] = list(self.values)
        elif self.kind is MatrixKind.RANK_ONE:
            out['u'] = self.u.to_dict()
            out['v'] = self.v.to_dict()
        if self.truncate:
            out['truncate'] = dict(self.truncate)
        return out

    @property
    def truncation(self):
        return dict(self.truncate)

    # -- entry access -----------------------------------------------------

    def entry(self, n, k):
        if n < 0 or k < 0:
            raise UsageError("matrix indices start at 0")
        return float(self.row(n, k + 1)[k])

    def row(self, n, length):
        """Entries ``a_{n,0}, ..., a_{n,length-1}``."""
        out = np.zeros(length)
        kind = self.kind
        if kind in (MatrixKind.EXPLICIT, MatrixKind.FINITE_RANK):
            if kind is MatrixKind.EXPLICIT:
                data = self.rows[n % len(self.rows)]
            elif n < len(self.rows):
                data = self.rows[n]
            else:
                data = ()
            m = min(length, len(data))
            out[:m] = data[:m]
        elif kind is MatrixKind.DIAGONAL:
            if n < length:
                out[n] = self.diag.value(n)
        elif kind is MatrixKind.BAND:
            for offset, value in zip(self.offsets, self.values):
                k = n + offset
                if 0 <= k < length:
                    out[k] = value
        elif kind is MatrixKind.RANK_ONE:
            un = self.u.value(n)
            if un != 0:
                out[:] = un * self.v.values(0, length)
        return out

    def row_support(self, n):
        """
        Columns needed to hold every nonzero of row ``n``; None when the
        row has infinitely many nonzero entries.
        """
        kind = self.kind
        if kind is MatrixKind.ZERO:
            return 0
        if kind is MatrixKind.EXPLICIT:
            return len(self.rows[n % len(self.rows)])
        if kind is MatrixKind.FINITE_RANK:
            return len(self.rows[n]) if n < len(self.rows) else 0
        if kind is MatrixKind.DIAGONAL:
            return n + 1 if self.diag.value(n) != 0 else 0
        if kind is MatrixKind.BAND:
            cols = [n + o + 1 for o, v in zip(self.offsets, self.values)
                    if n + o >= 0 and v != 0]
            return max(cols, default=0)
        if self.u.value(n) == 0:
            return 0
        return self.v.support

    @property
    def vanishes_from(self):
        """Index from which every row is zero, or None."""
        kind = self.kind
        if kind is MatrixKind.ZERO:
            return 0
        if kind is MatrixKind.FINITE_RANK:
            return len(self.rows)
        if kind is MatrixKind.DIAGONAL:
            return self.diag.support
        if kind is MatrixKind.RANK_ONE:
            if self.v.support == 0:
                return 0
            return self.u.support
        if kind is MatrixKind.BAND and not any(self.values):
            return 0
        return None

    def row_plan(self, rows):
        """The `RowPlan` for a row truncation of ``rows``."""
        start = self.vanishes_from
        if start is not None:
            return RowPlan(PlanKind.VANISHING, tuple(range(start)), start)
        if self.kind is MatrixKind.EXPLICIT:
            period = len(self.rows)
            return RowPlan(PlanKind.PERIODIC, tuple(range(period)), period)
        return RowPlan(PlanKind.OPEN,
                       tuple(range(rows)) + (2 * rows, 4 * rows), rows)


@dataclass(frozen=True)
class RowPlan:
    """
    Which rows of a matrix are evaluated and how ``n -> inf`` is read.

    ``vanishing``
        Rows ``n >= size`` are zero; results are exact.
    ``periodic``
        Rows repeat with period ``size``; results are exact.
    ``open``
        Rows ``0..size-1`` and the far rows ``2 size`` and ``4 size``
        are evaluated; results carry limit-rule evidence.

    Every method takes the row functional ``values`` aligned with
    ``indices`` and, where needed, ``beyond``: the functional's value on a
    zero row.
    """

    kind: PlanKind
    indices: tuple
    size: int
    checkpoints: tuple = field(init=False)

    def __post_init__(self):
        if self.kind is PlanKind.OPEN:
            rows = self.size
            positions = (rows // 4, rows // 2, rows - 1, rows, rows + 1)
        else:
            positions = ()
        object.__setattr__(self, 'checkpoints', positions)

    @property
    def exact(self):
        return self.kind is not PlanKind.OPEN

    def _values(self, values):
        values = np.asarray(values, dtype=float)
        if values.shape != (len(self.indices),):
            raise UsageError("expected {} row values, got {}".format(
                len(self.indices), values.shape))
        return values

    def limit(self, values, tol, beyond=0.0):
        """:math:`\\lim_n q(n)`."""
        values = self._values(values)
        if self.kind is PlanKind.VANISHING:
            return LimitEstimate.exact(beyond, np.append(values, beyond))
        if self.kind is PlanKind.PERIODIC:
            spread = float(np.ptp(values))
            if spread <= tol.eps:
                return LimitEstimate(float(values[-1]), LimitStatus.CONVERGED,
                                     spread, tuple(values))
            # cycles through distinct values
            return LimitEstimate(float(values[-1]), LimitStatus.UNDETERMINED,
                                 spread, tuple(values))
        samples = values[list(self.checkpoints)]
        estimate = LimitEstimate.from_samples(samples, tol.eps,
                                              tol.growth_factor)
        block = values[self.size // 2:self.size]
        if estimate.converged and np.ptp(block) > tol.eps:
            return LimitEstimate.undetermined(samples, estimate.value)
        return estimate

    def sup(self, values, tol, beyond=0.0):
        """:math:`\\sup_n q(n)`."""
        values = self._values(values)
        if self.kind is PlanKind.VANISHING:
            return LimitEstimate.exact(values.max(initial=beyond))
        if self.kind is PlanKind.PERIODIC:
            return LimitEstimate.exact(values.max())
        running = np.maximum.accumulate(values)
        return LimitEstimate.bounded(running[list(self.checkpoints)],
                                     tol.eps, tol.growth_factor)

    def series(self, values, tol, beyond=0.0):
        """:math:`\\sum_n q(n)`."""
        values = self._values(values)
        if self.kind is PlanKind.VANISHING:
            if abs(beyond) > tol.eps:
                return LimitEstimate(math.inf, LimitStatus.DIVERGING,
                                     math.inf, (float(values.sum()),))
            return LimitEstimate.exact(values.sum())
        if self.kind is PlanKind.PERIODIC:
            if np.all(np.abs(values) <= tol.eps):
                return LimitEstimate.exact(0.0)
            return LimitEstimate(math.inf, LimitStatus.DIVERGING, math.inf,
                                 (float(values.sum()),))
        partial = np.cumsum(values[:self.size])
        rows = self.size
        samples = partial[[rows // 4 - 1, rows // 2 - 1, rows - 1]]
        return LimitEstimate.from_samples(samples, tol.eps, tol.growth_factor)

    def radii(self, rows):
        """
        Tail cut points ``r`` in {8, 16, 32, ...} below the truncation.

        Truncations too short for three such points fall back to the
        quarter, half and last cut below it.
        """
        stop = max(rows, 2 * self.size) if self.exact else self.size
        out = []
        r = 8
        while r < stop:
            out.append(r)
            r *= 2
        if len(out) < 3 and stop > 1:
            out = sorted({max(stop // 4, 1), max(stop // 2, 1), stop - 1})
        return tuple(out)

    def tail_trail(self, values, tol, beyond=0.0):
        """
        :math:`T(r) = \\sup_{n > r} q(n)` at each cut point ``r``.

        Returns ``((r, T(r)), ...)``; nonincreasing in ``r``.
        """
        values = self._values(values)
        index = np.asarray(self.indices)
        trail = []
        for r in self.radii(tol.rows):
            if self.kind is PlanKind.PERIODIC:
                tail = values
            else:
                tail = values[index > r]
            t = tail.max(initial=-math.inf)
            if self.kind is PlanKind.VANISHING:
                t = max(t, beyond)
            trail.append((r, float(t)))
        return tuple(trail)
