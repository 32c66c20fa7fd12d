# Licensed under a 3-clause BSD style license - see LICENSE.rst
import pytest

from ..config import EPS_ENV, ToleranceConfig, conf
from ..exceptions import UsageError


def test_defaults_follow_conf(monkeypatch):
    monkeypatch.delenv(EPS_ENV, raising=False)
    tol = ToleranceConfig.from_conf()
    assert tol == ToleranceConfig()
    assert tol.eps == 1e-8
    assert tol.rows == 128 and tol.cols == 64


def test_conf_set_temp(monkeypatch):
    monkeypatch.delenv(EPS_ENV, raising=False)
    with conf.set_temp('truncate_cols', 32):
        assert ToleranceConfig.from_conf().cols == 32
    assert ToleranceConfig.from_conf().cols == 64


def test_environment_overrides_eps(monkeypatch):
    monkeypatch.setenv(EPS_ENV, '1e-6')
    assert ToleranceConfig.from_conf().eps == 1e-6
    # explicit arguments win
    assert ToleranceConfig.from_conf(eps=1e-4).eps == 1e-4


def test_bad_environment_value(monkeypatch):
    monkeypatch.setenv(EPS_ENV, 'tiny')
    with pytest.raises(UsageError, match=EPS_ENV):
        ToleranceConfig.from_conf()


def test_none_overrides_are_ignored(monkeypatch):
    monkeypatch.delenv(EPS_ENV, raising=False)
    assert ToleranceConfig.from_conf(window=None).window == 16


@pytest.mark.parametrize('kwargs', [
    {'eps': 0},
    {'window': 1},
    {'rows': 20},
    {'cols': 0},
    {'subset_budget': 25},
    {'subset_budget': 0},
    {'growth_factor': 1.0},
])
def test_validation(kwargs):
    with pytest.raises(UsageError):
        ToleranceConfig(**kwargs)


def test_truncation_override():
    tol = ToleranceConfig().with_truncation({'rows': 64, 'cols': 16})
    assert (tol.rows, tol.cols) == (64, 16)
    assert ToleranceConfig().with_truncation({}) == ToleranceConfig()


def test_to_dict_round_trip():
    tol = ToleranceConfig(eps=1e-6, window=8, rows=32)
    assert ToleranceConfig(**tol.to_dict()) == tol
