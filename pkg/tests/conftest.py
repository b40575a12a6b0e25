import pytest

ACCEPTANCE_LINES = []


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running numerical study")


@pytest.fixture
def criterion():
    """Record one ``PASS|FAIL criterion=... value=... threshold=...`` line and return ``passed``."""
    from eqweyl.csvio import summary_line

    def record(name, value, threshold, passed):
        line = summary_line(name, value, threshold, passed)
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
