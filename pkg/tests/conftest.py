"""Shared pytest plumbing.

The acceptance tests append one human-readable pass/fail line per criterion
to :data:`ACCEPTANCE_LINES`; this hook prints them as a dedicated section at
the end of the run so they are visible even when stdout capture is on.
"""

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_lines():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
