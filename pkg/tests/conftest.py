import pytest

from giantatoms.verification import run_all_checks


@pytest.fixture(scope="session")
def verification_report():
    """The full verification suite, run once per test session."""
    return run_all_checks()
