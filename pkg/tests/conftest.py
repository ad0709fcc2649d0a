import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "lycas", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("lycas")


@pytest.fixture(scope="session")
def sl2():
    from lycas.catalog import make_sl

    return make_sl(2)


@pytest.fixture(scope="session")
def ef_triple():
    from lycas.catalog import make_sl2_ef_triple

    return make_sl2_ef_triple()


@pytest.fixture(scope="session")
def lam_rep():
    from lycas.catalog import h_star, make_nontight_rep, make_sl

    return make_nontight_rep(make_sl(2), h_star())


_criteria: dict = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    rep = outcome.get_result()
    number, title = mark.args
    ok, _ = _criteria.get(number, (True, title))
    if rep.when == "call" or rep.failed:
        _criteria[number] = (ok and rep.passed, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        ok, title = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
