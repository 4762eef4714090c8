import pytest

# criterion id -> list of (label, passed, note); filled by test_acceptance
ACCEPTANCE: dict[str, list[tuple[str, bool, str]]] = {}


@pytest.fixture
def acceptance():
    def record(criterion: str, label: str, passed: bool, note: str = ""):
        ACCEPTANCE.setdefault(criterion, []).append((label, bool(passed), note))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE, key=lambda c: int(c.split()[0])):
        parts = ACCEPTANCE[crit]
        ok = all(p for _, p, _ in parts)
        failed = [f"{label}: {note}" if note else label for label, p, note in parts if not p]
        line = f"criterion {crit}: {'PASS' if ok else 'FAIL'}"
        if failed:
            line += "  [failed: " + "; ".join(failed) + "]"
        tr.write_line(line)
