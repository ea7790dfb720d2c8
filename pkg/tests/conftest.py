import pytest

from amalgam.harness import CLAUSE_IDS, build_catalog, reproduce_examples, verify_clauses


@pytest.fixture(scope="session")
def catalog():
    return build_catalog()


@pytest.fixture(scope="session")
def suite_verdicts(catalog):
    """All clause verdicts plus the witness search, computed in one sweep."""
    return verify_clauses(catalog, list(CLAUSE_IDS), with_search=True)


@pytest.fixture(scope="session")
def example_reports(catalog):
    return {r.example_id: r for r in reproduce_examples(catalog)}
