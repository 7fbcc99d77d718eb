import numpy as np
import pytest

import pycdg


###############################################################################
# Pytest configuration
###############################################################################


def pytest_configure(config):
    config.addinivalue_line(
        'markers',
        'slow: long-running checks over large moduli or many samples')


###############################################################################
# Fixtures
###############################################################################


@pytest.fixture(scope='session')
def params5():
    """Default step law modulo 5"""
    return pycdg.Params(5)


@pytest.fixture
def random_distribution():
    """Factory for random distributions with a fixed seed"""
    generator = np.random.default_rng(0)

    def make(p):
        return pycdg.Distribution(p, generator.dirichlet(np.ones(p)))

    return make
