"""Shared strategies and helpers for the test suite."""

from __future__ import annotations

import math
import sys

from hypothesis import strategies as st

from welfare_lab import UtilityProfile


def pytest_terminal_summary(terminalreporter) -> None:
    """Print the acceptance criterion lines after the run, if any were recorded."""
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None) if module else None
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)


def finite_floats(lo: float, hi: float) -> st.SearchStrategy[float]:
    return st.floats(
        min_value=lo, max_value=hi, allow_nan=False, allow_infinity=False, width=64
    )


def positive_profiles(
    min_size: int = 1, max_size: int = 30, lo: float = 0.1, hi: float = 10.0
) -> st.SearchStrategy[UtilityProfile]:
    return st.lists(finite_floats(lo, hi), min_size=min_size, max_size=max_size).map(
        lambda vs: UtilityProfile(tuple(vs))
    )


def real_profiles(min_size: int = 1, max_size: int = 30) -> st.SearchStrategy[UtilityProfile]:
    return st.lists(finite_floats(-10.0, 10.0), min_size=min_size, max_size=max_size).map(
        lambda vs: UtilityProfile(tuple(vs))
    )


def assert_close(actual: float, expected: float, tol: float = 1e-12) -> None:
    assert math.isfinite(actual), f"non-finite value {actual!r}"
    assert abs(actual - expected) <= tol, f"{actual!r} != {expected!r} (+/- {tol})"
