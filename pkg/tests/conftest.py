import numpy as np
import pytest

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def report():
    """Record one verdict line per acceptance criterion."""

    def record(number: int, ok: bool, detail: str) -> bool:
        ACCEPTANCE[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(ACCEPTANCE[number])
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
