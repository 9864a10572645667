import numpy as np
import pytest

from filterwave.filters import builtin_filter, conjugate_filter


@pytest.fixture
def haar():
    return builtin_filter("haar")


@pytest.fixture
def db4():
    return builtin_filter("db4")


@pytest.fixture
def shannon():
    return builtin_filter("shannon")


@pytest.fixture(params=["haar", "db4"])
def qmf_pair(request):
    m0 = builtin_filter(request.param)
    return m0, conjugate_filter(m0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
