"""Acceptance bookkeeping: collect per-criterion outcomes, print a summary."""

from __future__ import annotations

import time
from contextlib import contextmanager

import pytest

_RESULTS: list[tuple[int, str, bool, float]] = []


@pytest.fixture
def criterion():
    """Context manager factory: times a criterion body and records pass/fail."""

    @contextmanager
    def _criterion(number: int, description: str, budget: float | None = None):
        start = time.perf_counter()
        try:
            yield
        except BaseException:
            _RESULTS.append((number, description, False, time.perf_counter() - start))
            raise
        elapsed = time.perf_counter() - start
        over = budget is not None and elapsed > budget
        _RESULTS.append((number, description, not over, elapsed))
        if over:
            raise AssertionError(
                f"criterion {number} exceeded its {budget:.0f}s budget ({elapsed:.1f}s)"
            )

    return _criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number, description, ok, elapsed in sorted(_RESULTS):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"criterion {number:2d}: {verdict}  ({elapsed:6.2f}s)  {description}"
        )
