import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    n = getattr(report, "_criterion", None)
    if n is None:
        return
    entry = _criteria.setdefault(n, {"passed": 0, "failed": 0, "skipped": 0})
    if report.failed:
        entry["failed"] += 1
    elif report.skipped:
        entry["skipped"] += 1
    elif report.when == "call":
        entry["passed"] += 1


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result()._criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        e = _criteria[n]
        verdict = "FAIL" if e["failed"] or not e["passed"] else "PASS"
        extra = f", {e['skipped']} skipped" if e["skipped"] else ""
        terminalreporter.write_line(
            f"criterion {n:>2}: {verdict} ({e['passed']} passed, {e['failed']} failed{extra})")
