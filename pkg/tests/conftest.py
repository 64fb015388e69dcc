import pytest

_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(n, passed, text)."""
    def record(n: int, passed: bool, text: str) -> None:
        _CRITERIA[n] = (passed, text)
        print(f"criterion {n:2d}: {'PASS' if passed else 'FAIL'}  {text}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for n in sorted(_CRITERIA):
        passed, text = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if passed else 'FAIL'}  {text}")
