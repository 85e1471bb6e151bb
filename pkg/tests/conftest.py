from __future__ import annotations

import sys


def pytest_terminal_summary(terminalreporter):
    # repeat the acceptance lines so they survive output capture
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
