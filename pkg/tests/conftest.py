"""
Pytest configuration and shared fixtures for the cascade lab tests
"""
import os
import sys

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from src.models import ForcingSpec, Grid1D, Regime


@pytest.fixture
def grid():
    """Full-resolution periodic grid on [-2 pi, 2 pi)"""
    return Grid1D(2 ** 14, 2 * np.pi)


@pytest.fixture
def small_grid():
    """Coarse periodic grid for dynamics and CLI tests"""
    return Grid1D(2 ** 12, 2 * np.pi)


@pytest.fixture
def cubic_spec():
    """sigma = 1, P = 0, delta = 2^-14"""
    return ForcingSpec(delta=2.0 ** -14)


@pytest.fixture
def rotating_spec():
    """sigma = 1, P = 1, delta = 2^-10"""
    return ForcingSpec(delta=2.0 ** -10, p=Regime.ONE)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def cli_runner():
    """click test runner with the testing environment"""
    from click.testing import CliRunner
    from app import create_cli

    return CliRunner(), create_cli('testing')


# Test markers
def pytest_configure(config):
    """Configure pytest markers"""
    config.addinivalue_line(
        "markers", "unit: mark test as a unit test"
    )
    config.addinivalue_line(
        "markers", "integration: mark test as an integration test"
    )
    config.addinivalue_line(
        "markers", "slow: mark test as slow running"
    )


# Skip slow tests by default
def pytest_collection_modifyitems(config, items):
    """Modify test collection to handle markers"""
    if config.getoption("--runslow"):
        # --runslow given in cli: do not skip slow tests
        return

    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def pytest_addoption(parser):
    """Add custom command line options"""
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow tests"
    )
