import pytest

from circuitcodes.core import TransitionSequence

# Half-periods of the golden codes: an isomorphic l=3 pair and a non-isomorphic l=5 pair.
EX1_A = (1, 2, 3, 4, 5, 6, 7, 8, 9, 2, 10, 4, 11, 6, 8)
EX1_B = (1, 2, 3, 4, 5, 6, 7, 8, 9, 2, 4, 10, 6, 11, 8)
EX3_A = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 2, 4, 6, 8, 14, 10, 15, 12)
EX3_B = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 2, 6, 4, 8, 14, 10, 15, 12)

# relabeling that maps the rotated first l=3 code onto the second
EX1_SIGMA = {1: 10, 2: 6, 3: 11, 4: 8, 5: 1, 6: 2, 7: 3, 8: 4, 9: 5, 10: 7, 11: 9}

_acceptance_results: list[tuple[str, str]] = []


@pytest.fixture
def ex1_pair():
    return TransitionSequence(EX1_A * 2, 11), TransitionSequence(EX1_B * 2, 11)


@pytest.fixture
def ex3_pair():
    return TransitionSequence(EX3_A * 2, 15), TransitionSequence(EX3_B * 2, 15)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(name): exit criterion of the build")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance_results.append((marker.args[0], report.outcome.upper()))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        verdict = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
