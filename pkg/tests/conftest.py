from __future__ import annotations

import re

import pytest

_results: dict[str, str] = {}
_notes: list[str] = []


@pytest.fixture
def note():
    """Record a line to print under the acceptance summary."""
    return _notes.append


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        _results[name] = "PASS" if report.outcome == "passed" else report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_results, key=lambda n: int(re.search(r"(\d+)", n).group(1))):
        num = int(re.search(r"(\d+)", name).group(1))
        status = "PASS" if _results[name] == "PASS" else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {name.split('_', 3)[-1]}: {status}")
    for line in _notes:
        terminalreporter.write_line(f"  {line}")
