import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion_line():
    """Record and print one pass/fail line per acceptance criterion."""

    def emit(idx, desc, ok):
        line = f"[{idx:2d}/12] {desc}: {'PASS' if ok else 'FAIL'}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return emit


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
