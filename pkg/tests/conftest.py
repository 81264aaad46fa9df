import pytest

from qcarrival import make_params


@pytest.fixture
def fig1_params():
    # sigma0=1e-5 cm, u=1e3 cm/s, C=10, m=1 amu
    return make_params(1e-5, 1e3, 10, 1)


@pytest.fixture
def fig2_params():
    # sigma0=1e-4 cm, u=1e3 cm/s, C=100, m=1 amu
    return make_params(1e-4, 1e3, 100, 1)


@pytest.fixture
def fig3_params():
    # sigma0=1e-4 cm, u=10 cm/s, C=10, m=1000 amu
    return make_params(1e-4, 10, 10, 1000)
