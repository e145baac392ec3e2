import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE = {}


@pytest.fixture
def record(request):
    """Attach a one-line summary to an acceptance test; printed at the end of the run."""

    def _record(number: int, title: str, detail: str):
        _ACCEPTANCE[request.node.nodeid] = [number, title, detail, None]
        print(f"criterion {number} ({title}): {detail}")

    return _record


def pytest_runtest_logreport(report):
    if report.when == "call" and report.nodeid in _ACCEPTANCE:
        _ACCEPTANCE[report.nodeid][3] = report.passed
    elif report.when == "call" and "test_acceptance" in report.nodeid and report.nodeid not in _ACCEPTANCE:
        _ACCEPTANCE[report.nodeid] = [None, report.nodeid.split("::")[-1], "no summary recorded", report.passed]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    rows = sorted(_ACCEPTANCE.values(), key=lambda r: (r[0] is None, r[0] or 0))
    for number, title, detail, passed in rows:
        status = "PASS" if passed else "FAIL"
        label = f"criterion {number}" if number is not None else "criterion ?"
        terminalreporter.write_line(f"{status} {label} ({title}): {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def data_dir():
    return Path(__file__).resolve().parent.parent / "data"
