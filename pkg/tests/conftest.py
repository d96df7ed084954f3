from __future__ import annotations

import sys
from pathlib import Path

import pytest

from dsmeta.config import load_config

TESTS = Path(__file__).resolve().parent
sys.path.insert(0, str(TESTS))
sys.path.insert(0, str(TESTS / "fixtures"))

_acceptance: dict[int, dict] = {}


@pytest.fixture(scope="session")
def config():
    return load_config()


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    entry = _acceptance.setdefault(number, {"title": title, "passed": True, "ran": False})
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        entry["ran"] = True
        if call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception):
            entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        entry = _acceptance[number]
        status = "PASS" if entry["passed"] and entry["ran"] else ("FAIL" if entry["ran"] else "NOT RUN")
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {entry['title']}")
