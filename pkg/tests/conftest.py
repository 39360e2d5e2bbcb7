"""Pytest configuration for test collection, markers and shared fixtures."""
import os

import pytest
from hypothesis import HealthCheck, settings

from maxsobolev.grid import BoxDomain

settings.register_profile(
    "ci", max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("dev", max_examples=10, deadline=None)
settings.load_profile("ci" if os.getenv("CI") else "dev")


def pytest_configure(config):
    """Register custom pytest markers."""
    config.addinivalue_line(
        "markers",
        "slow: marks tests as slow "
        "(skipped by default, run with '-m slow' or '--run-all')",
    )


def pytest_addoption(parser):
    """Add command line options for slow tests."""
    parser.addoption(
        "--run-all",
        action="store_true",
        default=False,
        help="Run all tests including slow tests",
    )


def pytest_collection_modifyitems(config, items):
    """Skip slow tests by default unless --run-all is specified."""
    if config.getoption("--run-all"):
        return

    if config.getoption("-m", default="") != "slow":
        skip_marker = pytest.mark.skip(reason="slow test (use --run-all to run)")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_marker)


@pytest.fixture
def unit_interval() -> BoxDomain:
    """The interval [0, 1] with 64 cells."""
    return BoxDomain((0.0,), (1.0,), 64)


@pytest.fixture
def unit_square() -> BoxDomain:
    """The square [0, 1]^2 with 32 cells per axis."""
    return BoxDomain.cube(0.0, 1.0, 32, dim=2)
