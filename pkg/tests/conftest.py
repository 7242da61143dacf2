import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from satqaoa import kernels  # noqa: E402

_CRITERIA = {}
_OUTCOMES = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


def pytest_collection_modifyitems(config, items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _CRITERIA[item.nodeid] = mark.args


def pytest_runtest_logreport(report):
    if report.nodeid not in _CRITERIA:
        return
    if report.when == "call" or report.failed:
        prev = _OUTCOMES.get(report.nodeid, "PASS")
        _OUTCOMES[report.nodeid] = "FAIL" if (report.failed or prev == "FAIL") else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    rows = sorted((_CRITERIA[nid], outcome) for nid, outcome in _OUTCOMES.items())
    for (num, title), outcome in rows:
        terminalreporter.write_line(f"[{outcome}] criterion {num}: {title}")


@pytest.fixture(params=kernels.AVAILABLE)
def backend(request):
    return request.param
