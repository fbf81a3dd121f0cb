import pytest

ACCEPTANCE_LINES: dict[str, list] = {}


@pytest.fixture
def record():
    """Register ``(criterion, passed, detail)`` for the acceptance summary."""

    def _record(criterion: str, passed: bool, detail: str) -> None:
        ACCEPTANCE_LINES.setdefault(criterion, []).append((bool(passed), detail))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE_LINES, key=lambda c: int(c.split()[0])):
        parts = ACCEPTANCE_LINES[criterion]
        ok = all(p for p, _ in parts)
        details = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {criterion}: {details}")
