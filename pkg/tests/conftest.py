import pytest

from cyclade import verify


@pytest.fixture(scope="session")
def full_report():
    """One full registry run at the acceptance order, shared by all tests."""
    return verify.run_all(order=64)


@pytest.fixture(scope="session")
def report_by_id(full_report):
    return {r.check_id: r for r in full_report.results}
