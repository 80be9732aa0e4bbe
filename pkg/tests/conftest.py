import pytest

_criteria = {}


@pytest.fixture
def record_criterion():
    def record(number, title, ok, detail=""):
        _criteria[number] = (title, ok, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {title} {detail}".rstrip())
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok, detail = _criteria[number]
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
