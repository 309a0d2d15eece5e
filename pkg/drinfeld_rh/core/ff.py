"""Explicit finite fields and their towers

Every field `F_{p^s}` is realised as ``F_p[x] / (f)`` for a canonical monic
irreducible ``f``: the first irreducible met when the monic degree ``s``
polynomials are enumerated by their coefficient sequence read as a base-``p``
integer (constant term least significant). This is the lexicographically least
irreducible, ``galois.irreducible_poly(p, s, method="min")``; degree one gives
``f = x``. The arithmetic is that of ``galois.GF(p**s, irreducible_poly=f)``.

The *code* of an element is its :py:mod:`galois` integer representation: the
coefficient vector over `F_p`, read as a base-``p`` integer. It gives the total
order used for every canonical choice in the package.

Embeddings send the generator of the smaller field to the least-coded root of
its modulus in the larger field. The roots are cached.

Classes
=======
- :py:class:`FieldDescriptor`
- :py:class:`FieldElement`

Functions
=========
- :py:func:`make_extension`
- :py:func:`embed`
- :py:func:`embedding_table`
- :py:func:`pow_q`
- :py:func:`minpoly_over_subfield`
- :py:func:`frobenius_matrix`
- :py:func:`multiplication_matrix`
- :py:func:`coefficient_columns`
- :py:func:`subfield_elements`
- :py:func:`scalar_embedding`
- :py:func:`scalar_codes`
"""

import functools
from dataclasses import dataclass
from typing import List, Tuple

import galois
import numpy as np

from .errors import CapExceededError
from .polyring import Poly, digits, is_prime, prime_power

# Largest field we are willing to build
MAX_FIELD_SIZE = 2**24


@dataclass(frozen=True)
class FieldDescriptor:
    """The field ``F_p[x] / (modulus)`` of size ``p^s``."""

    p: int
    s: int
    modulus: Tuple[int, ...]

    @property
    def size(self) -> int:
        return self.p**self.s

    @property
    def GF(self) -> type:
        """The :py:mod:`galois` field class with this modulus."""
        return _galois_field(self)

    def wrap(self, x) -> "FieldElement":
        """Element from a scalar of :py:attr:`GF`."""
        return FieldElement(self, int(x))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def scalar(self, c: int) -> "FieldElement":
        """The image of the prime field element `c`."""
        return FieldElement(self, c % self.p)

    @property
    def gen(self) -> "FieldElement":
        """The class of ``x``."""
        return self.from_poly((0, 1))

    def from_code(self, code: int) -> "FieldElement":
        if not 0 <= code < self.size:
            raise ValueError(f"Code {code} out of range for {self}.")
        return FieldElement(self, code)

    def from_poly(self, coeffs) -> "FieldElement":
        """Reduce an `F_p` polynomial, ascending coefficients, by the modulus."""
        c = [int(x) % self.p for x in coeffs] or [0]
        f = galois.Poly(c, field=_prime_field(self.p), order="asc")
        return FieldElement(self, int(f % self._modulus_poly))

    def from_vector(self, vec) -> "FieldElement":
        return self.from_poly(vec)

    @property
    def _modulus_poly(self) -> galois.Poly:
        return galois.Poly(self.modulus, field=_prime_field(self.p), order="asc")

    def elements(self):
        """Iterate over all elements in code order."""
        for code in range(self.size):
            yield FieldElement(self, code)

    def parse_element(self, text: str) -> "FieldElement":
        """Parse ``"1,1"`` style text (missing high coefficients are zero)."""
        return self.from_poly([int(t) for t in text.split(",")])

    def __str__(self):
        return f"p={self.p},s={self.s},mod=" + ",".join(map(str, self.modulus))

    @classmethod
    def parse(cls, text: str) -> "FieldDescriptor":
        """Parse the textual form ``p=2,s=2,mod=1,1,1``."""
        try:
            head, mod = text.split(",mod=")
            parts = dict(kv.split("=") for kv in head.split(","))
            p, s = int(parts["p"]), int(parts["s"])
        except (KeyError, ValueError) as e:
            raise ValueError(f"Malformed field descriptor {text!r}.") from e

        field = make_extension(p, s)
        if tuple(int(c) for c in mod.split(",")) != field.modulus:
            raise ValueError(f"{text!r} does not use the canonical modulus.")
        return field


@functools.lru_cache(maxsize=None)
def _prime_field(p: int) -> type:
    return galois.GF(p)


@functools.lru_cache(maxsize=None)
def _galois_field(field: FieldDescriptor) -> type:
    if field.s == 1:
        return _prime_field(field.p)
    return galois.GF(
        field.size, irreducible_poly=field._modulus_poly, verify=False
    )


@dataclass(frozen=True)
class FieldElement:
    """An element of a :py:class:`FieldDescriptor`, stored by its code."""

    field: FieldDescriptor
    code: int

    @classmethod
    def from_poly(cls, field: FieldDescriptor, coeffs) -> "FieldElement":
        """Reduce an arbitrary `F_p` polynomial modulo the field modulus."""
        return field.from_poly(coeffs)

    @property
    def gf(self):
        """This element as a scalar of the :py:mod:`galois` field."""
        return self.field.GF(self.code)

    @property
    def coeffs(self) -> Tuple[int, ...]:
        """Coefficients over `F_p`, ascending."""
        return tuple(digits(self.code, self.field.p, self.field.s))

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self):
        return self.code != 0

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, int):
            return self.field.scalar(other)
        if other.field != self.field:
            raise TypeError(
                f"Elements of different fields: {self.field} and {other.field}."
            )
        return other

    def __add__(self, other):
        if not isinstance(other, (int, FieldElement)):
            return NotImplemented
        return self.field.wrap(self.gf + self._coerce(other).gf)

    __radd__ = __add__

    def __neg__(self):
        return self.field.wrap(-self.gf)

    def __sub__(self, other):
        if not isinstance(other, (int, FieldElement)):
            return NotImplemented
        return self.field.wrap(self.gf - self._coerce(other).gf)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (int, FieldElement)):
            return NotImplemented
        return self.field.wrap(self.gf * self._coerce(other).gf)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if self.is_zero():
            if k < 0:
                raise ZeroDivisionError(f"Inverse of zero in {self.field}.")
            return self.field.one() if k == 0 else self

        # The multiplicative group has order size - 1
        return self.field.wrap(self.gf ** (k % (self.field.size - 1)))

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError(f"Inverse of zero in {self.field}.")
        return self.field.wrap(self.gf**-1)

    def __truediv__(self, other):
        if not isinstance(other, (int, FieldElement)):
            return NotImplemented
        return self * self._coerce(other).inverse()

    def __str__(self):
        return ",".join(map(str, self.coeffs))

    def __repr__(self):
        return f"FieldElement({self.field.p}^{self.field.s}: {self})"


@functools.lru_cache(maxsize=None)
def make_extension(p: int, s: int) -> FieldDescriptor:
    """The canonical field of size ``p^s``.

    Parameters
    ----------
    p : int
        A prime.
    s : int
        Degree over `F_p`, at least 1.

    Returns
    -------
    field : FieldDescriptor

    Raises
    ------
    ValueError
        For a non-prime `p` or ``s < 1``.
    CapExceededError
        If ``p^s`` exceeds :py:data:`MAX_FIELD_SIZE`.
    """
    if not is_prime(p):
        raise ValueError(f"Characteristic {p} is not prime.")
    if s < 1:
        raise ValueError(f"Extension degree must be positive, got {s}.")
    if p**s > MAX_FIELD_SIZE:
        raise CapExceededError(
            f"Field of size {p}^{s} exceeds the cap of {MAX_FIELD_SIZE} elements.",
            degree=s,
        )

    f = galois.irreducible_poly(p, s, method="min")
    modulus = tuple(int(c) for c in f.coeffs[::-1])
    return FieldDescriptor(p, s, modulus)


def coefficient_columns(values) -> np.ndarray:
    # F_p coefficient columns, ascending, of a 1D galois array
    return np.asarray(values.vector().view(np.ndarray)[:, ::-1].T, dtype=np.int64)


def _basis(field: FieldDescriptor):
    # The powers x^j, j < s, whose codes are p^j
    return field.GF([field.p**j for j in range(field.s)])


@functools.lru_cache(maxsize=None)
def frobenius_matrix(field: FieldDescriptor, power: int = 1) -> np.ndarray:
    """Matrix over `F_p` of ``a -> a^(p^power)`` acting on coefficient columns."""
    power %= field.s
    if power == 0:
        mat = np.eye(field.s, dtype=np.int64)
    else:
        mat = coefficient_columns(_basis(field) ** (field.p**power))

    mat.setflags(write=False)
    return mat


def multiplication_matrix(a: FieldElement) -> np.ndarray:
    """Matrix over `F_p` of ``b -> a * b`` acting on coefficient columns."""
    return coefficient_columns(a.gf * _basis(a.field))


def _subfield_degree(field: FieldDescriptor, q: int) -> int:
    p, e = prime_power(q)
    if p != field.p or field.s % e:
        raise ValueError(f"F_{q} is not a subfield of {field}.")
    return e


@functools.lru_cache(maxsize=None)
def subfield_elements(field: FieldDescriptor, q: int) -> Tuple[FieldElement, ...]:
    """The elements of `field` fixed by ``a -> a^q``, in code order."""
    _subfield_degree(field, q)

    # Zero and the powers of a primitive element of exponent (size-1)/(q-1)
    GF = field.GF
    step = (field.size - 1) // (q - 1)
    units = GF.primitive_element ** (step * np.arange(q - 1))
    codes = sorted([0] + [int(c) for c in units])

    return tuple(FieldElement(field, c) for c in codes)


@functools.lru_cache(maxsize=None)
def _embedding_root(source: FieldDescriptor, target: FieldDescriptor):
    # Least-coded root in target of the modulus of source
    if source.s == 1:
        return target.GF(0)

    f = galois.Poly(source.modulus, field=target.GF, order="asc")
    for a in subfield_elements(target, source.size):
        if f(a.gf) == 0:
            return a.gf

    raise RuntimeError(f"Modulus of {source} has no root in {target}.")


def _check_tower(source: FieldDescriptor, target: FieldDescriptor):
    if source.p != target.p or target.s % source.s:
        raise ValueError(f"Cannot embed {source} into {target}.")


def embed(a: FieldElement, target: FieldDescriptor) -> FieldElement:
    """Canonical embedding of `a` into a field containing its own.

    Raises
    ------
    ValueError
        If the degree of the field of `a` does not divide that of `target`.
    """
    source = a.field
    if source == target:
        return a
    _check_tower(source, target)

    if source.s == 1:
        return target.scalar(a.code)

    f = galois.Poly(a.coeffs, field=target.GF, order="asc")
    return target.wrap(f(_embedding_root(source, target)))


@functools.lru_cache(maxsize=None)
def embedding_table(source: FieldDescriptor, target: FieldDescriptor) -> np.ndarray:
    """Target codes of the images of all elements of `source`, by source code."""
    _check_tower(source, target)

    root = _embedding_root(source, target)
    powers = root ** np.arange(source.s)
    coeffs = target.GF(
        [digits(code, source.p, source.s) for code in range(source.size)]
    )

    table = np.asarray((coeffs @ powers).view(np.ndarray), dtype=np.int64)
    table.setflags(write=False)
    return table


@functools.lru_cache(maxsize=None)
def scalar_embedding(q: int, target: FieldDescriptor) -> Tuple[FieldElement, ...]:
    """Images in `target` of the elements of `F_q`, indexed by code."""
    p, e = prime_power(q)
    table = embedding_table(make_extension(p, e), target)
    return tuple(FieldElement(target, int(c)) for c in table)


@functools.lru_cache(maxsize=None)
def scalar_codes(q: int, target: FieldDescriptor) -> dict:
    """Inverse of :py:func:`scalar_embedding`: target code to `F_q` code."""
    return {a.code: c for c, a in enumerate(scalar_embedding(q, target))}


def pow_q(a: FieldElement, q: int) -> FieldElement:
    """The `q`-power map.

    Raises
    ------
    ValueError
        If `q` is not a power of the characteristic.
    """
    p, _ = prime_power(q)
    if p != a.field.p:
        raise ValueError(f"{q} is not a power of the characteristic {a.field.p}.")
    return a**q


def minpoly_over_subfield(a: FieldElement, q: int) -> Poly:
    """Minimal polynomial of `a` over the subfield `F_q`.

    Returns
    -------
    poly : Poly
        Monic irreducible polynomial over `F_q` (in the variable of
        :py:class:`~drinfeld_rh.core.polyring.Poly`) with `a` as a root.

    Raises
    ------
    ValueError
        If `F_q` is not a subfield of the field of `a`.
    """
    field = a.field
    _subfield_degree(field, q)

    conjugates: List[FieldElement] = [a]
    b = pow_q(a, q)
    while b != a:
        conjugates.append(b)
        b = pow_q(b, q)

    prod = galois.Poly.Roots(field.GF([c.code for c in conjugates]), field=field.GF)

    back = scalar_codes(q, field)
    try:
        return Poly(q, [back[int(c)] for c in prod.coeffs[::-1]])
    except KeyError as e:
        raise RuntimeError("Minimal polynomial has coefficients outside F_q.") from e
