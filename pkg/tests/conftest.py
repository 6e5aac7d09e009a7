import pytest
from hypothesis import HealthCheck, settings

from dtrunc.category import cyclic_group, iso_groupoid, nerve_category, poset_category
from dtrunc.constructions import standard

settings.register_profile("dtrunc", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("dtrunc")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def bz2():
    return nerve_category(cyclic_group(2), 5)


@pytest.fixture(scope="session")
def iso_nerve():
    return nerve_category(iso_groupoid(), 5)


@pytest.fixture(scope="session")
def square():
    return poset_category(["00", "01", "10", "11"], lambda a, b: a[0] <= b[0] and a[1] <= b[1], name="2x2")


@pytest.fixture(scope="session")
def square_nerve(square):
    return nerve_category(square)


@pytest.fixture
def delta2():
    return standard(2)
