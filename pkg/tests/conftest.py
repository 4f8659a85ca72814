import pytest
from hypothesis import HealthCheck, settings

from zetalike.algebra import FieldConfig

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_Q = (2, 3, 4, 5)


@pytest.fixture(params=SMALL_Q, ids=lambda q: f"q{q}")
def field(request):
    return FieldConfig.for_q(request.param)


def gf(q):
    return FieldConfig.for_q(q)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
