import pytest

from gridpmu import cli

BUNDLED = list(cli.BUNDLED)


@pytest.fixture(scope="session")
def bundled_cases():
    """All bundled cases, parsed once per session."""
    return {name: cli.load_case(name) for name in BUNDLED}


@pytest.fixture(scope="session")
def case9(bundled_cases):
    return bundled_cases["case9"]


@pytest.fixture(scope="session")
def case14(bundled_cases):
    return bundled_cases["case14"]
