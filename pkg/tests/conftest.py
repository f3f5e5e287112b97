import pytest

from sparsesuffix import new_context


@pytest.fixture
def banana():
    return b"banana"


@pytest.fixture
def ctx6():
    return new_context(256, 6, seed=42, reps=2)


_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def report():
    """Record one acceptance line; the caller still asserts."""

    def record(name: str, passed: bool, detail: str = "") -> bool:
        _ACCEPTANCE.append((name, passed, detail))
        print(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")
