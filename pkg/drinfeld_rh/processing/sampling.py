"""Deterministic sampling of Drinfeld modules

Each sample is drawn from its own counter-based generator keyed by
``(seed, q, n, r, index)``, so a sample does not depend on which worker draws
it or on which other samples are drawn.
"""

from typing import Iterator, List

import numpy as np

from ..core import ff
from ..core.drinfeld import DrinfeldModule
from ..core.polyring import digits, prime_power

# Cells with at most this many modules may be enumerated completely
EXHAUSTIVE_LIMIT = 2**16


def _base_field(q: int, n: int) -> ff.FieldDescriptor:
    p, e = prime_power(q)
    return ff.make_extension(p, e * n)


def _generator(seed: int, q: int, n: int, r: int, index: int) -> np.random.Generator:
    key = np.random.SeedSequence([seed, q, n, r, index])
    return np.random.Generator(np.random.Philox(key))


def sample_module(q: int, n: int, r: int, seed: int, index: int) -> DrinfeldModule:
    """The `index`-th random module of rank `r` over ``F_{q^n}``.

    ``g_0, ..., g_{r-1}`` are uniform on `k` and ``g_r`` is uniform on
    ``k \\ {0}``.
    """
    k = _base_field(q, n)
    rng = _generator(seed, q, n, r, index)

    codes = [int(c) for c in rng.integers(0, k.size, size=r)]
    codes.append(int(rng.integers(1, k.size)))

    return DrinfeldModule(q, n, [k.from_code(c) for c in codes])


def sample_modules(
    q: int, n: int, r: int, count: int, seed: int
) -> List[DrinfeldModule]:
    """`count` random modules of rank `r` over ``F_{q^n}``.

    Raises
    ------
    ValueError
        For ``count < 1``, ``r < 1`` or ``n < 1``.
    """
    if count < 1:
        raise ValueError(f"Need at least one sample, got {count}.")
    if r < 1 or n < 1:
        raise ValueError(f"Rank and degree must be positive, got r={r}, n={n}.")

    return [sample_module(q, n, r, seed, i) for i in range(count)]


def module_count(q: int, n: int, r: int) -> int:
    """Number of rank `r` modules over ``F_{q^n}``."""
    size = q**n
    return size**r * (size - 1)


def can_enumerate(q: int, n: int, r: int) -> bool:
    """Whether ``|k|^(r+1) <= 2^16``."""
    return (q**n) ** (r + 1) <= EXHAUSTIVE_LIMIT


def module_at(q: int, n: int, r: int, index: int) -> DrinfeldModule:
    """The `index`-th module in enumeration order.

    ``g_r`` changes slowest and runs over ``k \\ {0}``; below it ``g_{r-1}``
    down to ``g_0``, with ``g_0`` changing fastest.
    """
    if not 0 <= index < module_count(q, n, r):
        raise ValueError(f"No module {index} in cell q={q}, n={n}, r={r}.")

    k = _base_field(q, n)
    lead, rest = divmod(index, k.size**r)
    codes = digits(rest, k.size, r) + [lead + 1]

    return DrinfeldModule(q, n, [k.from_code(c) for c in codes])


def enumerate_modules(q: int, n: int, r: int) -> Iterator[DrinfeldModule]:
    """All rank `r` modules over ``F_{q^n}`` in :py:func:`module_at` order."""
    if not can_enumerate(q, n, r):
        raise ValueError(f"Cell q={q}, n={n}, r={r} is too large to enumerate.")

    for index in range(module_count(q, n, r)):
        yield module_at(q, n, r, index)
