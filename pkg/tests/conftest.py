import pytest

from modsys.frontend import parse_spec
from modsys.selftest import bundled


@pytest.fixture(scope="session")
def appendix():
    return parse_spec(bundled("appendix.msl"))


@pytest.fixture(scope="session")
def example2():
    return parse_spec(bundled("example2.msl"))


@pytest.fixture(scope="session")
def coloring():
    return parse_spec(bundled("coloring.msl"))


@pytest.fixture(scope="session")
def check3():
    return parse_spec(bundled("check3.msl"))


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion; printed in the summary."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    def record(number: int, ok: bool, detail: str):
        lines.append(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.__dict__.get("_acceptance_lines")
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
