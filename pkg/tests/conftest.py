from functools import lru_cache

import pytest

from igt.group import build
from igt.igraph import build_intersection_graph
from igt.lattice import enumerate_subgroups

# groups reused across modules; keys are spec strings
CORPUS = [
    "C(1)", "C(2)", "C(6)", "C(12)", "C(15)", "C(24)", "C(36)", "C(64)", "C(128)",
    "C(2)*C(2)", "C(4)*C(2)", "C(2)*C(2)*C(2)", "C(3)*C(3)", "C(9)*C(3)", "C(25)*C(5)",
    "C(27)*C(3)", "C(2)*C(2)*C(5)", "C(3)*C(3)*C(2)",
    "D(8)", "D(18)", "D(50)", "Dic(2)", "Dic(3)", "Dic(4)",
    "SDC(3,2,2)", "SDC(3,4,2)", "SDC(5,4,2)", "SDC(7,3,2)", "SDC(7,6,3)", "SDC(17,8,2)",
    "SDE(2,3,1)", "SDE(3,3,2)", "SDE(3,4,0)", "SDE(5,3,4)",
    "Perm(4;(1 2),(1 2 3 4))", "Perm(5;(1 2 3),(1 2 3 4 5))",
    "Perm(9;(1 2 3 4 5 6 7 8 9),(2 5 8)(3 9 6))",
]


@lru_cache(maxsize=None)
def group(spec):
    return build(spec)


@lru_cache(maxsize=None)
def lattice(spec):
    return enumerate_subgroups(group(spec))


@lru_cache(maxsize=None)
def graph(spec):
    return build_intersection_graph(lattice(spec))


_ACCEPTANCE: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an exit criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = getattr(report, "acceptance", None)
    if number is not None:
        _ACCEPTANCE[number] = (report.outcome, getattr(report, "acceptance_title", ""))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        report.acceptance = marker.args[0]
        report.acceptance_title = marker.args[1]


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        outcome, title = _ACCEPTANCE[number]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {title}")
