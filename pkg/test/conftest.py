import pytest

from drinfeld_rh.core import ff
from drinfeld_rh.core.drinfeld import DrinfeldModule


@pytest.fixture
def F2():
    return ff.make_extension(2, 1)


@pytest.fixture
def F4():
    return ff.make_extension(2, 2)


@pytest.fixture
def F8():
    return ff.make_extension(2, 3)


@pytest.fixture
def F16():
    return ff.make_extension(2, 4)


@pytest.fixture
def phi_rank2():
    """``φ_T = τ² + τ + 1`` over `F_2`; characteristic ``T + 1``."""
    return DrinfeldModule.parse("q=2,n=1,g=1;1;1")


@pytest.fixture
def phi_rank1():
    """``φ_T = τ + 1`` over `F_4`; characteristic ``T + 1``."""
    return DrinfeldModule(2, 2, [1, 1])
