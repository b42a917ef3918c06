import pytest

CRITERIA = {}


@pytest.fixture
def criterion(capsys):
    """Record and print one acceptance line: criterion(label, ok, detail)."""
    def record(label, ok, detail=""):
        line = f"criterion {label}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else "")
        CRITERIA[label] = line
        with capsys.disabled():
            print("\n" + line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for label in sorted(CRITERIA, key=lambda s: (int(s.rstrip("abc")), s)):
            terminalreporter.write_line(CRITERIA[label])
