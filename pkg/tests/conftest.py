import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    1: "FIX-A circuits and 14 topes",
    2: "FIX-A string {a,d}|{b,c}: LP verdict, rank-sum, classify",
    3: "FIX-B string, decomposition, decomposable obstruction",
    4: "is_all_coherent on the named fixtures",
    5: "classify vs is_all_coherent sweep plus 200 random rank-4",
    6: "q-formula for E(3,1), E(3,2), E(4,1)",
    7: "R3 flip cycle and circular Baues proper part",
    8: "discriminantal chamber counts",
    9: "rhombic tilings and coherent tilings",
    10: "property suites",
}

_results: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): test belongs to acceptance criterion n")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results.setdefault(crit, []).append((report.nodeid, report.outcome))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is not None:
        report.criterion = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        runs = _results.get(n)
        if not runs:
            continue
        ok = all(o != "failed" for _, o in runs)
        terminalreporter.write_line(f"ACCEPTANCE criterion {n}: {'PASS' if ok else 'FAIL'} - {CRITERIA[n]}")
        for node, o in runs:
            if o == "failed":
                terminalreporter.write_line(f"    failed part: {node.split('::')[-1]}")
