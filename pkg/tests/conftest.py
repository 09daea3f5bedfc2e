import pytest

from propchoose.graph import complete_multipartite


@pytest.fixture
def K():
    return lambda *parts: complete_multipartite(list(parts))
