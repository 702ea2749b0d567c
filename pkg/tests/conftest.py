import pytest

_LINES: list[str] = []


@pytest.fixture
def report():
    """Record a one-line PASS/FAIL verdict that is echoed in the terminal summary."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        _LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in _LINES:
        terminalreporter.write_line(line)
