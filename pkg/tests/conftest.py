"""Acceptance bookkeeping: one pass/fail line per criterion at the end of the run."""

import time

import pytest

# criterion number -> [title, all tests passed so far, tests seen]
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion a test belongs to")
    config.addinivalue_line("markers", "run_last: move the test to the end of the session")


def pytest_sessionstart(session):
    session.config.session_started = time.monotonic()


def pytest_collection_modifyitems(session, config, items):
    items.sort(key=lambda item: item.get_closest_marker("run_last") is not None)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, [title, True, 0])
    if report.when == "call":
        entry[2] += 1
    if report.failed or (report.when == "call" and report.skipped):
        entry[1] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, seen = _CRITERIA[number]
        status = "PASS" if ok and seen else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2} {status}  {title} ({seen} tests)")
