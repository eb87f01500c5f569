import pytest

_CRITERIA: dict[str, list[tuple[bool, str]]] = {}


@pytest.fixture
def criterion():
    """Record a (passed, detail) outcome for one acceptance criterion."""

    def record(name: str, passed: bool, detail: str = "") -> bool:
        _CRITERIA.setdefault(name, []).append((bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda n: int(n.split(".")[0])):
        checks = _CRITERIA[name]
        ok = all(p for p, _ in checks)
        details = "; ".join(d for _, d in checks if d)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {details}")
