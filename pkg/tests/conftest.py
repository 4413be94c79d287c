import pytest

from datamule.presets import table_route

_ACCEPTANCE = []


@pytest.fixture
def table():
    return table_route()


@pytest.fixture
def acceptance_record():
    """Collects one (criterion, passed, detail) line per acceptance check."""

    def record(criterion: str, passed: bool, detail: str):
        _ACCEPTANCE.append((criterion, passed, detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")
