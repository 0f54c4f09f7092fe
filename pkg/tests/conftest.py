import pytest

_criteria: dict[int, tuple[str, str]] = {}


@pytest.fixture
def criterion():
    """Record the outcome line of an acceptance criterion."""
    def record(number: int, ok: bool, detail: str):
        _criteria[number] = ("PASS" if ok else "FAIL", detail)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, detail = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {detail}")
