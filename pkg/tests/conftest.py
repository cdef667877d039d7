import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "flatknot",
    max_examples=1000,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("flatknot")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in RESULTS:
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def trefoil():
    from flatknot import pentagon_trefoil

    return pentagon_trefoil(1.0)


@pytest.fixture(scope="session")
def figure_eight():
    from flatknot import hexagon_figure_eight

    return hexagon_figure_eight(3.0)
