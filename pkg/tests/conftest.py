import pytest

from locale_lab import fixtures as fx
from locale_lab.catalog import CatalogSpec, generate_catalog

ACCEPTANCE_LINES = []  # (criterion number, line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def catalog():
    return generate_catalog(CatalogSpec())


@pytest.fixture(scope="session")
def small_catalog():
    return generate_catalog(CatalogSpec(max_join_irreducibles=2))


@pytest.fixture
def C3():
    return fx.C3()


@pytest.fixture
def maps():
    return fx.maps()
