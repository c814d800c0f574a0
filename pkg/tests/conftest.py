import pytest

from conleymorse import fixtures as fx


@pytest.fixture
def strip():
    return fx.strip_space()


@pytest.fixture
def field():
    return fx.strip_field()


@pytest.fixture
def morse_sets():
    return [set(s) for s in fx.STRIP_MORSE_SETS]


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_acceptance[" in report.nodeid:
        key = report.nodeid.rsplit("[", 1)[1].rstrip("]")
        if report.when == "call" or report.outcome != "passed":
            _acceptance[key] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for i, criterion in enumerate(CRITERIA, start=1):
        key = f"AC{i}"
        if key in _acceptance:
            status = "PASS" if _acceptance[key] == "passed" else "FAIL"
            terminalreporter.write_line(f"{key} {status}: {criterion.__doc__.strip()}")
