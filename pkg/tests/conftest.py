import pytest

ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(cid: int, title: str, ok: bool, detail: str = ""):
        ACCEPTANCE[cid] = (title, bool(ok), detail)
        line = f"{'PASS' if ok else 'FAIL'} criterion {cid:>2}: {title}" + (f" | {detail}" if detail else "")
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[cid]
        line = f"{'PASS' if ok else 'FAIL'} criterion {cid:>2}: {title}" + (f" | {detail}" if detail else "")
        terminalreporter.write_line(line)

