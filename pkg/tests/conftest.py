import json
from pathlib import Path

import pytest

from balanced_words.calibration import SLACK

FIXTURES = Path(__file__).parent / "fixtures"

#: one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def bounds():
    """Fitted O-constants, each already widened by the allowed slack."""
    with open(FIXTURES / "bounds.json") as fh:
        return {k: v * SLACK for k, v in json.load(fh).items()}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
