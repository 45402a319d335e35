import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE = []


@pytest.fixture
def record_criterion():
    def rec(number, title, ok, seconds, limit):
        ACCEPTANCE.append((number, title, ok, seconds, limit))
    return rec


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, seconds, limit in sorted(ACCEPTANCE):
        verdict = "PASS" if ok and (limit is None or seconds < limit) else "FAIL"
        budget = f" (limit {limit:g} s)" if limit is not None else ""
        terminalreporter.write_line(f"criterion {number:2d} {verdict}  {title}  [{seconds:.2f} s{budget}]")
