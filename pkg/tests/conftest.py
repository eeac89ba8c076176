import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fpdetect import kernels  # noqa: E402

BACKENDS = kernels.available_backends()


@pytest.fixture(scope="session", params=sorted(BACKENDS))
def impl(request):
    """Each available kernel backend in turn."""
    return BACKENDS[request.param]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.skipped):
        return
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    _outcomes.append((crit, report.outcome))


_outcomes = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        rep.criterion = (marker.args[0], marker.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for (num, text), outcome in sorted(_outcomes):
        word = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[outcome]
        terminalreporter.write_line(f"criterion {num}: {word}  {text}")
