import pytest

from qpolylog.identities import run_all


@pytest.fixture(scope="session")
def all_reports():
    """The full identity-suite report list, computed once per session."""
    return run_all()
