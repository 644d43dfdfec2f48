"""Pytest configuration and fixtures for git_stability tests.

This module configures pytest for the git-stability test suite:
- Unit tests and worked examples run by default
- Full-scale randomized checks require the --slow flag

Usage:
    # Run the default suite
    pytest tests/

    # Include the full-scale randomized checks
    pytest tests/ --slow
"""

from __future__ import annotations

import random
from unittest.mock import MagicMock

import pytest
from lifecyclelogging import Logging

from git_stability.algebra import ProjChange, parse_poly
from git_stability.base import SingularMatrixError
from git_stability.registry import clear_cache
from git_stability.toolkit import StabilityToolkit
from git_stability.weights import LinearSystem


def pytest_addoption(parser):
    """Add custom command line options."""
    parser.addoption(
        "--slow",
        action="store_true",
        default=False,
        help="Run the full-scale randomized checks",
    )


def pytest_configure(config):
    """Configure pytest markers."""
    config.addinivalue_line("markers", "slow: Full-scale randomized checks")


def pytest_collection_modifyitems(config, items):
    """Skip slow tests unless --slow flag is provided."""
    if config.getoption("--slow"):
        return
    skip_slow = pytest.mark.skip(reason="Full-scale checks require --slow flag")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def mock_logger():
    """Provide a mock Logging instance for testing."""
    mock_logging = MagicMock(spec=Logging)
    mock_logging.logger = MagicMock()
    return mock_logging


@pytest.fixture
def base_analysis_kwargs(mock_logger):
    """Provide common kwargs for every analysis component."""
    return {
        "logger": mock_logger,
        "from_environment": False,
    }


@pytest.fixture
def toolkit(base_analysis_kwargs):
    """A toolkit with default limits and a mocked logger."""
    return StabilityToolkit(**base_analysis_kwargs)


@pytest.fixture
def poly():
    """Parse plane polynomials in x, y, z."""

    def _parse(text: str, num_vars: int = 3):
        return parse_poly(text, num_vars)

    return _parse


@pytest.fixture
def system():
    """Parse plane linear systems in x, y, z."""

    def _parse(*texts: str, num_vars: int = 3):
        return LinearSystem.parse(list(texts), num_vars)

    return _parse


@pytest.fixture(autouse=True)
def fresh_fixture_registry():
    """Every test sees a freshly discovered fixture registry."""
    clear_cache()
    yield
    clear_cache()


@pytest.fixture
def rng(request):
    """A random source seeded by the test id, so every run draws the same cases."""
    return random.Random(request.node.nodeid)


@pytest.fixture
def random_change(rng):
    """Draw invertible integer coordinate changes with entries in [-bound, bound]."""

    def _draw(size: int = 3, bound: int = 3) -> ProjChange:
        while True:
            try:
                return ProjChange.from_rows([[rng.randint(-bound, bound) for _ in range(size)] for _ in range(size)])
            except SingularMatrixError:
                continue

    return _draw
