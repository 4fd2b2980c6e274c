import os
from collections import defaultdict

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_criteria = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion the test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _criteria[mark.args[0]].append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_criteria):
        checks = _criteria[n]
        ok = sum(p for _, p in checks)
        status = "PASS" if ok == len(checks) else "FAIL"
        failed = [name for name, p in checks if not p]
        extra = f"  failing: {', '.join(failed)}" if failed else ""
        tr.write_line(f"criterion {n}: {status} ({ok}/{len(checks)} checks){extra}")
