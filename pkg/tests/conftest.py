import pytest

_REPORT = []


@pytest.fixture
def report():
    """Record one acceptance verdict line; all lines are printed at the end."""

    def add(number, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
        _REPORT.append(line)
        return ok

    return add


def pytest_terminal_summary(terminalreporter):
    if _REPORT:
        terminalreporter.section("acceptance")
        for line in _REPORT:
            terminalreporter.write_line(line)
