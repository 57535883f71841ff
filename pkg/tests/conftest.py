import numpy as np
import pytest

_CRITERIA: list[tuple[str, bool, str]] = []


@pytest.fixture
def record_criterion():
    """Record a one-line acceptance verdict, printed in the terminal summary."""

    def record(label: str, passed: bool, detail: str) -> None:
        line = f"{label}: {detail}"
        _CRITERIA.append((label, bool(passed), line))
        print(("PASS " if passed else "FAIL ") + line)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for _, passed, line in _CRITERIA:
        terminalreporter.write_line(("PASS " if passed else "FAIL ") + line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
