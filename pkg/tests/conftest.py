"""Suite-wide fixtures and the acceptance summary table.

The acceptance criteria live in test_acceptance.py, one test per criterion.
After the run, print one PASS/FAIL line per criterion so the result survives
output capture.
"""
from __future__ import annotations

import re

import pytest

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    rows: dict[int, tuple[str, str]] = {}
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance" not in nodeid:
                continue
            m = _CRITERION.search(nodeid)
            if not m:
                continue
            num = int(m.group(1))
            label = m.group(2).replace("_", " ")
            status = "PASS" if outcome == "passed" else "FAIL"
            # A setup error must not be overwritten by a later phase report.
            if num not in rows or status == "FAIL":
                rows[num] = (status, label)
    if not rows:
        return
    tw = terminalreporter
    tw.section("acceptance criteria")
    for num in sorted(rows):
        status, label = rows[num]
        tw.write_line(f"criterion {num:2d}: {status}  {label}")


@pytest.fixture
def rng():
    import random

    return random.Random(20260816)
