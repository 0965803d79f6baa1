import pytest

from caysum.catalog import CATALOG, catalog_group


@pytest.fixture(scope="session")
def q8():
    return catalog_group("Q8")


@pytest.fixture(scope="session", params=sorted(CATALOG))
def catalog_entry(request):
    return request.param, catalog_group(request.param)
