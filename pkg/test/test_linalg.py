import numpy as np
import pytest
from hypothesis import given, strategies as st

from drinfeld_rh.core import linalg


def matrices(p, max_size=5):
    dims = st.tuples(
        st.integers(min_value=1, max_value=max_size),
        st.integers(min_value=1, max_value=max_size),
    )
    return dims.flatmap(
        lambda d: st.lists(
            st.integers(min_value=0, max_value=p - 1),
            min_size=d[0] * d[1],
            max_size=d[0] * d[1],
        ).map(lambda v: np.array(v, dtype=np.int64).reshape(d))
    )


def test_as_matrix():
    assert linalg.as_matrix([], 3, ncol=4).shape == (0, 4)
    assert linalg.as_matrix([1, 5, -1], 3).tolist() == [[1, 2, 2]]
    assert linalg.as_matrix([[4, 7]], 3).tolist() == [[1, 1]]


def test_row_reduce():
    rref, pivots = linalg.row_reduce([[0, 2, 1], [1, 1, 0]], 3)
    assert rref.tolist() == [[1, 0, 1], [0, 1, 2]]
    assert pivots == [0, 1]

    rref, pivots = linalg.row_reduce([[1, 1], [1, 1]], 2)
    assert rref.tolist() == [[1, 1], [0, 0]]
    assert pivots == [0]

    assert linalg.row_reduce([], 2)[1] == []


def test_rank():
    assert linalg.rank([[1, 1], [1, 1]], 2) == 1
    assert linalg.rank([[1, 1], [1, 2]], 3) == 2
    assert linalg.rank(np.zeros((0, 3)), 5) == 0


def test_kernel():
    basis = linalg.kernel([[1, 1, 0]], 2)
    assert basis.shape == (2, 3)
    assert not ((np.array([[1, 1, 0]]) @ basis.T) % 2).any()

    # Zero and empty matrices have everything in their kernel
    assert np.array_equal(linalg.kernel(np.zeros((2, 3)), 7), np.eye(3))
    assert linalg.kernel([[1, 0], [0, 1]], 3).shape == (0, 2)


def test_solve():
    x = linalg.solve([[1, 1], [0, 1]], [1, 2], 3)
    assert x.tolist() == [2, 2]

    x = linalg.solve([[1, 1], [0, 1]], [[1, 0], [2, 1]], 3)
    assert x.tolist() == [[2, 2], [2, 1]]

    assert linalg.solve([[1, 1], [1, 1]], [0, 1], 2) is None


@pytest.mark.parametrize("p", [2, 3, 5])
@given(data=st.data())
def test_rank_nullity(p, data):
    mat = data.draw(matrices(p))
    basis = linalg.kernel(mat, p)
    assert linalg.rank(mat, p) + len(basis) == mat.shape[1]
    assert not ((mat @ basis.T) % p).any()


@given(matrices(5))
def test_solve_consistent_system(mat):
    x0 = np.arange(mat.shape[1]) % 5
    rhs = (mat @ x0) % 5
    x = linalg.solve(mat, rhs, 5)
    assert x is not None
    assert np.array_equal((mat @ x) % 5, rhs)
