import pytest


@pytest.fixture(scope="session")
def corpus4():
    from ccd.enumeration import connected_graphs
    return list(connected_graphs(4))
