"""Shared pytest wiring.

Tests marked ``acceptance(num, label)`` are the top-level checks of the
package's stated behaviour; after the run a summary section prints one
PASS/FAIL line per criterion so the verdicts can be read without digging
through the test log.
"""

from __future__ import annotations

_ACCEPTANCE: dict[str, tuple[int, str]] = {}
_RESULTS: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(num, label): top-level acceptance check, one summary line each",
    )


def pytest_collection_modifyitems(config, items):
    for item in items:
        marker = item.get_closest_marker("acceptance")
        if marker is not None:
            _ACCEPTANCE[item.nodeid] = (marker.args[0], marker.args[1])


def pytest_runtest_logreport(report):
    info = _ACCEPTANCE.get(report.nodeid)
    if info is None:
        return
    num, label = info
    if report.when == "call":
        _RESULTS[num] = (label, report.passed)
    elif report.failed:
        # setup/teardown error counts as a failed criterion
        _RESULTS[num] = (label, False)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        label, ok = _RESULTS[num]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {num}: {verdict} - {label}")
