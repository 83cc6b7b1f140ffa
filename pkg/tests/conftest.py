import numpy as np
import pytest
from hypothesis import settings

from trigp.algebra import field_algebra, linear_quiver, quotient_path_algebra, truncated_polynomial
from trigp.homological import simple_modules
from trigp.modules import regular_module
from trigp.triangular import t2

settings.register_profile("trigp", deadline=None, max_examples=40)
settings.load_profile("trigp")


@pytest.fixture(scope="session")
def f2():
    a = field_algebra(2)
    a.name = "F2"
    return a


@pytest.fixture(scope="session")
def lam2():
    a = truncated_polynomial(2, 2)
    a.name = "L2"
    return a


@pytest.fixture(scope="session")
def a2():
    return quotient_path_algebra(linear_quiver(2), 2)


@pytest.fixture(scope="session")
def g_f2(f2):
    return t2(f2)


@pytest.fixture(scope="session")
def g_l2(lam2):
    return t2(lam2)


@pytest.fixture(scope="session")
def simple_l2(lam2):
    return simple_modules(lam2)[0]


@pytest.fixture(scope="session")
def reg_l2(lam2):
    return regular_module(lam2)


def mat(rows):
    return np.array(rows, dtype=np.int64)
