import pytest

from skewgreen.mapfile import parse_map


def make_map(p: str, q: str):
    return parse_map(f"p: {p}\nq: {q}").f


@pytest.fixture
def mk():
    return make_map


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict = {}


def record_acceptance(number: int, ok: bool, detail: str, seconds: float) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}  [{seconds:.2f} s]"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
