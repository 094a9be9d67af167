"""Shared pytest hooks.

Tests marked ``@pytest.mark.acceptance(num, label)`` are collected into a
summary block printed at the end of the run, one PASS/FAIL line per
criterion, so the gate status is readable without scrolling the full log.
"""

import pytest

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(num, label): tag a test as one of the numbered "
        "acceptance criteria so it shows up in the end-of-run summary",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    num = marker.kwargs.get("num", marker.args[0] if marker.args else 0)
    label = marker.kwargs.get(
        "label", marker.args[1] if len(marker.args) > 1 else item.name
    )
    _RESULTS[num] = (label, rep.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for num in sorted(_RESULTS):
        label, passed = _RESULTS[num]
        status = "PASS" if passed else "FAIL"
        tr.write_line("criterion %2d [%s] %s" % (num, status, label))
