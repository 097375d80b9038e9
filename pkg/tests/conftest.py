import pytest

from galcohom.datum import builder_klein_sansuc, builder_paper_example
from galcohom.global_cohomology import GlobalModel


@pytest.fixture(scope="session")
def paper_datum():
    return builder_paper_example()


@pytest.fixture(scope="session")
def paper_model(paper_datum):
    return GlobalModel(paper_datum)


@pytest.fixture(scope="session")
def klein_datum():
    return builder_klein_sansuc()


@pytest.fixture(scope="session")
def klein_model(klein_datum):
    return GlobalModel(klein_datum)
