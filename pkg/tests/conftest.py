from __future__ import annotations

import os
import sys
from functools import lru_cache

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from grasstc.ring import build_ring  # noqa: E402


@lru_cache(maxsize=None)
def _ring(k: int, n: int):
    return build_ring(k, n)


@pytest.fixture(scope="session")
def ring():
    """Shared built rings, keyed by (k, n)."""
    return _ring


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for i in sorted(results):
            terminalreporter.write_line(results[i])
