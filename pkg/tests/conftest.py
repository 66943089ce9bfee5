import os
import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


_CRITERIA = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """``with criterion(n, text, budget):`` records one PASS/FAIL line for the summary."""
    lines = request.config.stash.setdefault(_CRITERIA, [])

    @contextmanager
    def record(number, text, budget=None):
        start = time.monotonic()
        try:
            yield
        except AssertionError as exc:
            reason = str(exc).splitlines()[0] if str(exc) else "assertion failed"
            lines.append((number, f"[FAIL] {number:>2}. {text} ({time.monotonic() - start:.2f}s): {reason}"))
            raise
        elapsed = time.monotonic() - start
        if budget is not None and elapsed >= budget:
            lines.append((number, f"[FAIL] {number:>2}. {text} ({elapsed:.2f}s >= {budget}s budget)"))
            raise AssertionError(f"criterion {number} took {elapsed:.2f}s, budget {budget}s")
        lines.append((number, f"[PASS] {number:>2}. {text} ({elapsed:.2f}s)"))

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_CRITERIA, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
