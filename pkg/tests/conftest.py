import pytest

from patternforge.verify import DEFAULT_SEED, run_acceptance_suite


@pytest.fixture(scope="session")
def suite_ledger():
    """One full suite run shared by the acceptance criteria tests."""
    return run_acceptance_suite("all", seed=DEFAULT_SEED)
