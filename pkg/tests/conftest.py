import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=100,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


class AcceptanceLog:
    """Collects one verdict per acceptance criterion for the terminal summary."""

    def __init__(self):
        self.lines = {}

    def record(self, number: int, title: str, passed: bool, detail: str):
        line = f"[{number:2d}] {'PASS' if passed else 'FAIL'}  {title}: {detail}"
        self.lines[number] = line
        print(line)


_LOG = AcceptanceLog()


@pytest.fixture
def acceptance():
    return _LOG


def pytest_terminal_summary(terminalreporter):
    if _LOG.lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_LOG.lines):
            terminalreporter.write_line(_LOG.lines[n])
