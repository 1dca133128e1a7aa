import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    number = getattr(getattr(item, "function", None), "criterion", None)
    if number is None:
        return
    title = item.function.criterion_title
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        passed = report.outcome == "passed"
        prev = _RESULTS.get(number)
        _RESULTS[number] = (title, passed and (prev is None or prev[1]))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        title, passed = _RESULTS[number]
        tr.write_line(f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {title}")
