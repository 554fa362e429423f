import pytest

from notpowers.families import builtin_corpus, make

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def small_corpus():
    return builtin_corpus(24)


@pytest.fixture(scope="session")
def named():
    specs = {
        "C1": "cyclic:1", "C2": "cyclic:2", "C3": "cyclic:3", "C4": "cyclic:4", "C5": "cyclic:5",
        "C9": "cyclic:9", "V4": "abelian:2,2", "C3xC3": "abelian:3,3", "S3": "symmetric:3",
        "A4": "alternating:4", "Q12": "dicyclic:3", "F21": "metacyclic_frobenius:7,3",
        "F42": "metacyclic_frobenius:7,6",
    }
    return {k: make(v) for k, v in specs.items()}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line for a criterion, then assert it."""

    def record(name: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
        assert ok, f"{name}: {detail}"

    return record
