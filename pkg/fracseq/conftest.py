# This file is used to configure the behavior of pytest.
import numpy as np
import pytest

try:
    from pytest_astropy_header.display import (PYTEST_HEADER_MODULES,
                                               TESTED_VERSIONS)
except ImportError:
    PYTEST_HEADER_MODULES = {}
    TESTED_VERSIONS = {}

from .config import ToleranceConfig

PYTEST_HEADER_MODULES['Astropy'] = 'astropy'
PYTEST_HEADER_MODULES['SciPy'] = 'scipy'
for name in ('h5py', 'Matplotlib', 'Pandas'):
    PYTEST_HEADER_MODULES.pop(name, None)

from . import __version__ as version  # noqa

TESTED_VERSIONS['fracseq'] = version


@pytest.fixture
def rng():
    """A seeded generator so randomized checks are reproducible."""
    return np.random.default_rng(20240601)


@pytest.fixture
def tol():
    return ToleranceConfig()
