"""Shared fixtures: the acceptance scorecard printed after the run."""

import pytest

_scorecard: list = []


@pytest.fixture(scope="session")
def scorecard():
    """Append one line per acceptance criterion; echoed at session end."""
    return _scorecard


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _scorecard:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_scorecard):
            terminalreporter.write_line(line)
