import os
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")
os.environ.setdefault("LOT_COLOR", "0")

ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion():
    """``with criterion(n, title):`` records a PASS line if the block finishes, FAIL otherwise."""
    @contextmanager
    def record(n, title):
        ok = False
        try:
            yield
            ok = True
        finally:
            line = f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {title}"
            ACCEPTANCE_LINES[n] = line
            print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
