# Licensed under a 3-clause BSD style license - see LICENSE.rst
"""Configuration items and the tolerance object shared by all analyses."""
import os
from dataclasses import asdict, dataclass, replace

from astropy import config as _config

from .exceptions import UsageError

__all__ = ['Conf', 'conf', 'ToleranceConfig', 'EPS_ENV']

EPS_ENV = 'FRACSEQ_EPS'


class Conf(_config.ConfigNamespace):
    """Configuration parameters for `fracseq`."""

    eps = _config.ConfigItem(
        1e-8, 'Absolute tolerance for "= 0" criteria and limit agreement.')
    window = _config.ConfigItem(
        16, 'Trailing window used by sequence membership diagnostics.')
    subset_budget = _config.ConfigItem(
        20, 'Largest row count for exhaustive subset enumeration.')
    series_length = _config.ConfigItem(
        128, 'Default number of fractional binomial coefficients.')
    truncate_rows = _config.ConfigItem(
        128, 'Number of matrix rows evaluated before the far tail rows.')
    truncate_cols = _config.ConfigItem(
        64, 'Base column truncation for rows without declared support.')
    growth_factor = _config.ConfigItem(
        1.5, 'Growth over three samples that counts as divergence.')


conf = Conf()


@dataclass(frozen=True)
class ToleranceConfig:
    """
    Tolerances and truncation sizes for one analysis run.

    Parameters
    ----------
    eps : float
        Absolute tolerance for convergence and "= 0" tests.
    window : int
        Trailing window for sequence diagnostics.
    subset_budget : int
        Largest effective row count searched exhaustively.
    rows : int
        Matrix rows evaluated before the far tail rows.
    cols : int
        Base column truncation for generator rows.
    series_length : int
        Default coefficient series length.
    growth_factor : float
        Growth across three samples that is read as divergence.
    """

    eps: float = 1e-8
    window: int = 16
    subset_budget: int = 20
    rows: int = 128
    cols: int = 64
    series_length: int = 128
    growth_factor: float = 1.5

    def __post_init__(self):
        if not self.eps > 0:
            raise UsageError("eps must be positive, got {}".format(self.eps))
        if self.window < 2:
            raise UsageError("window must be at least 2")
        if self.rows < 2 * self.window:
            raise UsageError("row truncation {} is shorter than twice the "
                             "window {}".format(self.rows, self.window))
        if self.cols < 1 or self.series_length < 1:
            raise UsageError("truncation sizes must be positive")
        if not 1 <= self.subset_budget <= 24:
            raise UsageError("subset_budget must lie in [1, 24], got {}"
                             .format(self.subset_budget))
        if not self.growth_factor > 1:
            raise UsageError("growth_factor must exceed 1")

    @classmethod
    def from_conf(cls, **overrides):
        """Build from `conf`, honouring the ``FRACSEQ_EPS`` variable."""
        values = dict(eps=float(conf.eps),
                      window=int(conf.window),
                      subset_budget=int(conf.subset_budget),
                      rows=int(conf.truncate_rows),
                      cols=int(conf.truncate_cols),
                      series_length=int(conf.series_length),
                      growth_factor=float(conf.growth_factor))
        env_eps = os.environ.get(EPS_ENV)
        if env_eps:
            try:
                values['eps'] = float(env_eps)
            except ValueError:
                raise UsageError("{}={!r} is not a number"
                                 .format(EPS_ENV, env_eps))
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_truncation(self, truncate):
        """Return a copy with ``{'rows': ..., 'cols': ...}`` applied."""
        if not truncate:
            return self
        return replace(self, **{k: int(v) for k, v in truncate.items()})

    def to_dict(self):
        return asdict(self)
