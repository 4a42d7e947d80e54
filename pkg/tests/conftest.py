import math

import numpy as np
import pytest

from movingpt.dynamics import InverseSqrtCosine, Sinusoidal
from movingpt.stationary import PTParams, Sector

MAIN = PTParams(5.0, 3.4)
SMALL_B = PTParams(5.0, 0.2)
SECTORS = (Sector.MINUS, Sector.PLUS)
OSCILLATING = (Sinusoidal(), InverseSqrtCosine(1.0, 0.5, 1.0))
FIG_T = np.linspace(0.0, 4.0 * math.pi, 200)


def rel_err(a, b):
    return abs(a - b) / abs(b)


@pytest.fixture
def main_params():
    return MAIN


# -- acceptance reporting: one PASS/FAIL line per criterion ----------------------

_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label, text): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        measured = dict(item.user_properties).get("measured", "")
        _CRITERIA.append((mark.args[0], mark.args[1], report.outcome == "passed", measured))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, text, ok, measured in _CRITERIA:
        line = f"{'PASS' if ok else 'FAIL'}  {label:<4} {text}"
        if measured:
            line += f"  [{measured}]"
        terminalreporter.write_line(line)
