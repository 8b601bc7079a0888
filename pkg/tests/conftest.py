import pytest
from hypothesis import HealthCheck, settings

from subleading.selftest import prepare
from subleading.fixtures import CATALOG

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def prepared():
    """Minimal model, conductor, coefficient table and sign for every catalog curve."""
    return {fx.label: prepare(fx.label) for fx in CATALOG}


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
