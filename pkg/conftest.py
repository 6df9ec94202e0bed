"""Keeps the repository root importable so tests resolve the ``proxregio`` package."""
from __future__ import annotations

import pytest


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption("--runslow", action="store_true", default=False, help="run full-size acceptance runs")


def pytest_configure(config: pytest.Config) -> None:
    config.addinivalue_line("markers", "slow: full-size acceptance run, skipped unless --runslow is given")


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
