import time
from itertools import product

import pytest

from symdca import zoo


def all_words(k, max_len, min_len=1):
    for n in range(min_len, max_len + 1):
        yield from product(range(k), repeat=n)


@pytest.fixture
def mod3():
    return zoo.mod_counter(3)


@pytest.fixture
def detector():
    return zoo.ab_detector()


@pytest.fixture
def lowhigh():
    return zoo.mod3_low_high()


# -- per-criterion report for tests/test_acceptance.py ---------------------

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        number, title = marker.args
        ok = outcome.excinfo is None
        _criteria.append((number, title, ok, time.perf_counter() - start))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, secs in sorted(_criteria):
        terminalreporter.write_line(f"AC{number:<2} {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f}s)")
