"""The skew polynomial ring k{τ}

Elements of ``k{τ}`` with the commutation rule ``τ a = a^q τ``. Coefficients
are :py:class:`~drinfeld_rh.core.ff.FieldElement` values of a single declared
field `k` containing `F_q`. Mixing fields is an error; embed explicitly first.

Classes
=======
- :py:class:`SkewPoly`

Functions
=========
- :py:func:`mul`
- :py:func:`right_divmod`
- :py:func:`evaluate`
- :py:func:`tau_profile`
"""

from typing import NamedTuple, Tuple

import numpy as np

from . import ff
from .polyring import prime_power


class TauProfile(NamedTuple):
    """Degree, height and separability of a nonzero skew polynomial."""

    deg_tau: int
    height: int
    separable: bool


class SkewPoly:
    """An element of ``k{τ}``.

    Parameters
    ----------
    q : int
        Size of the field of constants `F_q`; ``τ`` acts as ``a -> a^q``.
    field : FieldDescriptor
        The coefficient field `k`. Must contain `F_q`.
    coeffs : sequence of FieldElement or int
        Coefficients ascending in ``τ``. Integers are read as prime field
        elements. Trailing zeros are stripped.
    """

    __slots__ = ("q", "field", "coeffs", "_e")

    def __init__(self, q: int, field: ff.FieldDescriptor, coeffs=()):
        p, e = prime_power(q)
        if p != field.p or field.s % e:
            raise ValueError(f"F_{q} is not a subfield of {field}.")

        c = []
        for x in coeffs:
            if isinstance(x, int):
                x = field.scalar(x)
            elif x.field != field:
                raise TypeError(f"Coefficient in {x.field}, expected {field}.")
            c.append(x)
        while c and c[-1].is_zero():
            c.pop()

        self.q = q
        self.field = field
        self.coeffs: Tuple[ff.FieldElement, ...] = tuple(c)
        self._e = e

    @classmethod
    def tau(cls, q: int, field: ff.FieldDescriptor, power: int = 1) -> "SkewPoly":
        """``τ^power``."""
        return cls(q, field, [0] * power + [1])

    @classmethod
    def constant(cls, q: int, field: ff.FieldDescriptor, c) -> "SkewPoly":
        return cls(q, field, [c])

    @classmethod
    def parse(cls, q: int, field: ff.FieldDescriptor, text: str) -> "SkewPoly":
        """Parse ``"1;1;1"`` style text (``τ²+τ+1`` over `F_2`)."""
        text = text.strip()
        if not text:
            return cls(q, field)
        return cls(q, field, [field.parse_element(t) for t in text.split(";")])

    @property
    def degree(self) -> int:
        """Degree in ``τ``, ``-1`` for zero."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> ff.FieldElement:
        return self.coeffs[-1] if self.coeffs else self.field.zero()

    def __getitem__(self, i: int) -> ff.FieldElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, SkewPoly):
            return NotImplemented
        return (self.q, self.field, self.coeffs) == (other.q, other.field, other.coeffs)

    def __hash__(self):
        return hash((self.q, self.field, self.coeffs))

    def twist(self, b: ff.FieldElement, i: int) -> ff.FieldElement:
        """``b^(q^i)``."""
        if b.is_zero() or i == 0:
            return b
        return b ** (self.q**i)

    def conjugate(self, h: int) -> "SkewPoly":
        """``τ^h u τ^-h``: every coefficient raised to the power ``q^h``."""
        return SkewPoly(self.q, self.field, [self.twist(c, h) for c in self.coeffs])

    def separable_part(self) -> "SkewPoly":
        """The separable `v` with ``self = v τ^h``, `h` the height."""
        h = self.tau_profile().height
        return SkewPoly(self.q, self.field, self.coeffs[h:])

    def _coerce(self, other) -> "SkewPoly":
        if isinstance(other, (int, ff.FieldElement)):
            return SkewPoly(self.q, self.field, [other])
        if not isinstance(other, SkewPoly):
            raise TypeError(f"Cannot combine SkewPoly with {type(other).__name__}.")
        if other.q != self.q:
            raise ValueError(f"Mismatched q: {self.q} and {other.q}.")
        if other.field != self.field:
            raise TypeError(f"Mismatched fields: {self.field} and {other.field}.")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return SkewPoly(self.q, self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return SkewPoly(self.q, self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return SkewPoly(self.q, self.field)

        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * self.twist(b, i)

        return SkewPoly(self.q, self.field, out)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("Negative powers are not defined in k{τ}.")
        result, base = SkewPoly.constant(self.q, self.field, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def right_divmod(self, divisor: "SkewPoly"):
        """Right Euclidean division ``self = quo * divisor + rem``.

        Raises
        ------
        ZeroDivisionError
            If `divisor` is zero.
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("Right division by zero in k{τ}.")

        zero = self.field.zero()
        db = divisor.degree
        rem = list(self.coeffs)
        quo = [zero] * max(len(rem) - db, 0)

        for shift in range(len(rem) - db - 1, -1, -1):
            top = rem[shift + db]
            if top.is_zero():
                continue
            c = top / self.twist(divisor.lead, shift)
            quo[shift] = c
            for j, b in enumerate(divisor.coeffs):
                rem[shift + j] = rem[shift + j] - c * self.twist(b, shift)

        return (
            SkewPoly(self.q, self.field, quo),
            SkewPoly(self.q, self.field, rem[:db]),
        )

    def evaluate(self, x: ff.FieldElement) -> ff.FieldElement:
        """Evaluate the `q`-polynomial ``Σ c_i x^(q^i)``.

        Raises
        ------
        ValueError
            If the field of `x` does not contain `k`.
        """
        L = x.field
        acc = L.zero()
        power = x
        for i, c in enumerate(self.coeffs):
            if i:
                power = ff.pow_q(power, self.q)
            if c:
                acc = acc + ff.embed(c, L) * power
        return acc

    def matrix_on(self, L: ff.FieldDescriptor) -> np.ndarray:
        """Matrix over `F_p` of ``x -> self(x)`` on an extension `L` of `k`."""
        p = L.p
        mat = np.zeros((L.s, L.s), dtype=np.int64)
        for i, c in enumerate(self.coeffs):
            if c:
                mult = ff.multiplication_matrix(ff.embed(c, L))
                mat = (mat + mult @ ff.frobenius_matrix(L, self._e * i)) % p
        return mat

    def tau_profile(self) -> TauProfile:
        """Degree, height (``τ``-adic valuation) and separability.

        Raises
        ------
        ValueError
            For the zero element.
        """
        if self.is_zero():
            raise ValueError("The τ-profile of zero is undefined.")
        h = next(i for i, c in enumerate(self.coeffs) if c)
        return TauProfile(self.degree, h, h == 0)

    def __str__(self):
        if not self.coeffs:
            return str(self.field.zero())
        return ";".join(str(c) for c in self.coeffs)

    def __repr__(self):
        return f"SkewPoly(q={self.q}, {self.field}: {self})"


def mul(u: SkewPoly, v: SkewPoly) -> SkewPoly:
    return u * v


def right_divmod(u: SkewPoly, d: SkewPoly):
    return u.right_divmod(d)


def evaluate(u: SkewPoly, x: ff.FieldElement) -> ff.FieldElement:
    return u.evaluate(x)


def tau_profile(u: SkewPoly) -> TauProfile:
    return u.tau_profile()
