"""Dense linear algebra over a prime field

Thin wrappers around the :py:class:`galois.FieldArray` linear algebra of
`F_p`. All routines take and return plain `numpy` integer arrays whose entries
are reduced into ``[0, p)``; the prime ``p`` is always passed explicitly.

Functions
=========
- :py:func:`row_reduce`
- :py:func:`rank`
- :py:func:`kernel`
- :py:func:`solve`
"""

import functools

import galois
import numpy as np


@functools.lru_cache(maxsize=None)
def prime_field(p: int) -> type:
    return galois.GF(p)


def as_matrix(mat, p, ncol=None):
    """Coerce `mat` into a reduced 2D int64 array.

    Parameters
    ----------
    mat : array_like
        Matrix entries. May be an empty sequence.
    p : int
        The characteristic.
    ncol : int, optional
        Number of columns to assume when `mat` has no rows.

    Returns
    -------
    arr : np.ndarray[int64]
    """
    arr = np.asarray(mat, dtype=np.int64)

    if arr.ndim == 2:
        return arr % p

    if arr.size == 0:
        return np.zeros((0, ncol or 0), dtype=np.int64)

    return arr.reshape(1, -1) % p


def _plain(arr) -> np.ndarray:
    return np.asarray(arr.view(np.ndarray), dtype=np.int64)


def row_reduce(mat, p):
    """Reduced row echelon form over `F_p`.

    Parameters
    ----------
    mat : array_like
        The matrix to reduce.
    p : int
        A prime.

    Returns
    -------
    rref : np.ndarray[int64]
        The reduced row echelon form. Pivot entries are 1.
    pivots : list of int
        Column index of the pivot in each nonzero row.
    """
    a = as_matrix(mat, p)
    if a.size == 0:
        return a, []

    rref = _plain(prime_field(p)(a).row_reduce())
    pivots = [int(np.flatnonzero(row)[0]) for row in rref if row.any()]
    return rref, pivots


def rank(mat, p):
    """Rank of `mat` over `F_p`."""
    a = as_matrix(mat, p)
    if a.size == 0:
        return 0
    return int(np.linalg.matrix_rank(prime_field(p)(a)))


def kernel(mat, p):
    """A basis of the right kernel ``{x : mat @ x = 0}``.

    Parameters
    ----------
    mat : array_like
        Matrix of shape ``(m, n)``.
    p : int
        A prime.

    Returns
    -------
    basis : np.ndarray[int64]
        Array of shape ``(k, n)`` whose rows span the kernel, in reduced row
        echelon form.
    """
    a = as_matrix(mat, p)
    ncol = a.shape[1]
    if a.shape[0] == 0 or not a.any():
        return np.eye(ncol, dtype=np.int64)

    basis = _plain(prime_field(p)(a).null_space())
    return basis.reshape(-1, ncol)


def solve(mat, rhs, p):
    """Find one solution of ``mat @ x = rhs``.

    Parameters
    ----------
    mat : array_like
        Matrix of shape ``(m, n)``.
    rhs : array_like
        Right hand side of shape ``(m,)`` or ``(m, k)``.
    p : int
        A prime.

    Returns
    -------
    x : np.ndarray[int64] or None
        A solution with the free variables set to zero, of shape ``(n,)`` or
        ``(n, k)``. None if any column of `rhs` is inconsistent.
    """
    a = as_matrix(mat, p)
    b = np.asarray(rhs, dtype=np.int64) % p
    vector = b.ndim == 1
    if vector:
        b = b[:, np.newaxis]

    ncol = a.shape[1]
    rref, pivots = row_reduce(np.hstack([a, b]), p)

    if pivots and pivots[-1] >= ncol:
        return None

    x = np.zeros((ncol, b.shape[1]), dtype=np.int64)
    for i, c in enumerate(pivots):
        x[c] = rref[i, ncol:]

    return x[:, 0] if vector else x
