import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("acceptance")
        if mark:
            num, title = mark.args
            _ACCEPTANCE[num] = [title, "NOT RUN", item.nodeid]


def pytest_runtest_logreport(report):
    for entry in _ACCEPTANCE.values():
        if entry[2] != report.nodeid:
            continue
        if report.failed:
            entry[1] = "FAIL"
        elif report.when == "call" and entry[1] != "FAIL":
            entry[1] = "PASS" if report.passed else "SKIP"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        title, status, _ = _ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status:4s}  {title}")
