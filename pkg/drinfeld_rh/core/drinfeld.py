"""Drinfeld modules over finite fields

A Drinfeld module of rank `r` over ``k = F_{q^n}`` is determined by the image
``φ_T = g_0 + g_1 τ + ... + g_r τ^r`` of the variable `T`. This module provides
the images ``φ_a`` of arbitrary ``a ∈ F_q[T]``, the characteristic `𝔭` and its
degree `d`, the structure morphism `γ`, the height `H` and the coordinates of
elements of ``k{τ}`` in the Anderson motive.

Coordinates in the motive are polynomials in `T` with coefficients in `k`,
stored as tuples of :py:class:`~drinfeld_rh.core.ff.FieldElement`, ascending in
`T`, without trailing zeros.

Classes
=======
- :py:class:`DrinfeldModule`

Functions
=========
- :py:func:`phi_of`
- :py:func:`characteristic`
- :py:func:`gamma`
- :py:func:`height`
- :py:func:`motive_coordinates`
- :py:func:`motive_reconstruct`
"""

from functools import cached_property
from typing import Tuple

from . import ff
from .polyring import Poly, prime_power
from .skew import SkewPoly

KPoly = Tuple[ff.FieldElement, ...]


class DrinfeldModule:
    """The Drinfeld module ``T -> g_0 + g_1 τ + ... + g_r τ^r``.

    Parameters
    ----------
    q : int
        Size of the constant field `F_q`.
    n : int
        Degree of ``k = F_{q^n}`` over `F_q`.
    g : sequence of FieldElement or int
        Coefficients ``g_0, ..., g_r`` in `k`, ascending. Integers are read as
        prime field elements.

    Raises
    ------
    ValueError
        If ``g_r`` is zero or ``r < 1``, or if the degree of the
        characteristic does not divide `n`.
    """

    def __init__(self, q: int, n: int, g):
        p, e = prime_power(q)
        if n < 1:
            raise ValueError(f"Extension degree n must be positive, got {n}.")

        self.q = q
        self.n = n
        self.field = ff.make_extension(p, e * n)

        coeffs = [self.field.scalar(x) if isinstance(x, int) else x for x in g]
        if not coeffs or coeffs[-1].is_zero():
            raise ValueError("Leading coefficient g_r must be nonzero.")
        if len(coeffs) < 2:
            raise ValueError("A rank 0 map is not a Drinfeld module.")

        self.phi_T = SkewPoly(q, self.field, coeffs)

        self.prime = ff.minpoly_over_subfield(coeffs[0], q)
        self.d = self.prime.degree
        if n % self.d:
            raise ValueError(
                f"Characteristic of degree {self.d} does not divide n={n}."
            )

    @classmethod
    def parse(cls, text: str) -> "DrinfeldModule":
        """Parse the textual form ``q=2,n=1,g=1;1;1``."""
        try:
            head, gtext = text.strip().split(",g=")
            parts = dict(kv.split("=") for kv in head.split(","))
            q, n = int(parts["q"]), int(parts["n"])
        except (KeyError, ValueError) as e:
            raise ValueError(f"Malformed Drinfeld module {text!r}.") from e

        p, e = prime_power(q)
        field = ff.make_extension(p, e * n)
        return cls(q, n, SkewPoly.parse(q, field, gtext).coeffs)

    @property
    def g(self) -> Tuple[ff.FieldElement, ...]:
        return self.phi_T.coeffs

    @property
    def rank(self) -> int:
        return self.phi_T.degree

    @property
    def frobenius(self) -> SkewPoly:
        """The Frobenius endomorphism ``π = τ^n``."""
        return SkewPoly.tau(self.q, self.field, self.n)

    def scalar(self, c: int) -> ff.FieldElement:
        """Image in `k` of the `F_q` element with code `c`."""
        return ff.scalar_embedding(self.q, self.field)[c]

    def _check_poly(self, a: Poly):
        if a.q != self.q:
            raise ValueError(f"Polynomial over F_{a.q}, module over F_{self.q}.")

    def phi_of(self, a: Poly) -> SkewPoly:
        """The image ``φ_a`` of ``a ∈ F_q[T]``, by Horner's rule."""
        self._check_poly(a)
        result = SkewPoly(self.q, self.field)
        for c in reversed(a.coeffs):
            result = result * self.phi_T + self.scalar(c)
        return result

    def gamma(self, a: Poly) -> ff.FieldElement:
        """The structure morphism: `a` evaluated at ``g_0``."""
        self._check_poly(a)
        g0 = self.phi_T[0]
        acc = self.field.zero()
        for c in reversed(a.coeffs):
            acc = acc * g0 + self.scalar(c)
        return acc

    def p_valuation(self, a: Poly):
        """Exact power of the characteristic dividing `a`."""
        self._check_poly(a)
        return a.valuation(self.prime)

    @cached_property
    def height(self) -> int:
        """``H = h(φ_𝔭) / d``."""
        h = self.phi_of(self.prime).tau_profile().height
        if h % self.d:
            raise RuntimeError(f"h(φ_𝔭)={h} is not a multiple of d={self.d}.")
        return h // self.d

    def motive_coordinates(self, u: SkewPoly) -> Tuple[KPoly, ...]:
        """Coordinates of `u` in the basis ``1, τ, ..., τ^(r-1)`` of the motive.

        `T` acts on ``k{τ}`` by right multiplication with ``φ_T``. Repeated
        right division by ``φ_T`` peels off one power of `T` at a time.

        Returns
        -------
        coords : tuple of tuple of FieldElement
            ``r`` polynomials ``c_i(T)`` over `k` with ``u = Σ c_i(T) * τ^i``.
        """
        r = self.rank
        coords = [[] for _ in range(r)]

        cur = u
        while cur:
            cur, rem = cur.right_divmod(self.phi_T)
            for i in range(r):
                coords[i].append(rem[i])

        out = []
        for c in coords:
            while c and c[-1].is_zero():
                c.pop()
            out.append(tuple(c))
        return tuple(out)

    def motive_reconstruct(self, coords) -> SkewPoly:
        """Inverse of :py:meth:`motive_coordinates`."""
        if len(coords) != self.rank:
            raise ValueError(f"Expected {self.rank} coordinates, got {len(coords)}.")

        result = SkewPoly(self.q, self.field)
        for i, c in enumerate(coords):
            tau_i = SkewPoly.tau(self.q, self.field, i)
            power = SkewPoly.constant(self.q, self.field, 1)
            for coeff in c:
                if coeff:
                    result = result + coeff * tau_i * power
                power = power * self.phi_T
        return result

    def __eq__(self, other):
        if not isinstance(other, DrinfeldModule):
            return NotImplemented
        return (self.q, self.n, self.phi_T) == (other.q, other.n, other.phi_T)

    def __hash__(self):
        return hash((self.q, self.n, self.phi_T))

    def __str__(self):
        return f"q={self.q},n={self.n},g={self.phi_T}"

    def __repr__(self):
        return f"DrinfeldModule({self})"


def phi_of(phi: DrinfeldModule, a: Poly) -> SkewPoly:
    return phi.phi_of(a)


def characteristic(phi: DrinfeldModule):
    """The characteristic ``(𝔭, d)``."""
    return phi.prime, phi.d


def gamma(phi: DrinfeldModule, a: Poly) -> ff.FieldElement:
    return phi.gamma(a)


def height(phi: DrinfeldModule) -> int:
    return phi.height


def motive_coordinates(phi: DrinfeldModule, u: SkewPoly):
    return phi.motive_coordinates(u)


def motive_reconstruct(phi: DrinfeldModule, coords) -> SkewPoly:
    return phi.motive_reconstruct(coords)
