"""Endomorphisms and their characteristic polynomials

An endomorphism `u` of a Drinfeld module `φ` is an element of ``k{τ}`` that
commutes with ``φ_T``. It is integral over ``A = F_q[T]``; its minimal
polynomial ``m(T, x)`` is found here by a direct linear relation search in
``k{τ}`` and the characteristic polynomial is ``P = m^(r/s)`` with
``s = deg_x m``.

The relation search solves, for ``s = 1, 2, ..., r`` and a `T`-degree budget
``D = 0, 1, ..., deg_τ(u)``, the linear system

.. math::

    \\sum_{i < s} \\phi_{a_i} u^i = -u^s, \\qquad \\deg a_i \\le D

over `F_p`, taking as unknowns the `F_p` coordinates of the coefficients of
the ``a_i``. The first solution found is the minimal polynomial.

Classes
=======
- :py:class:`CharPoly`

Functions
=========
- :py:func:`is_endomorphism`
- :py:func:`minimal_polynomial`
- :py:func:`char_polynomial`
- :py:func:`shifted_determinant`
- :py:func:`evaluate_charpoly`
- :py:func:`switch_minimal_polynomial`
- :py:func:`swap_variables`
- :py:func:`equal_up_to_scalar`
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from ..core import ff, linalg
from ..core.drinfeld import DrinfeldModule
from ..core.errors import VerificationError
from ..core.polyring import Poly, prime_power
from ..core.skew import SkewPoly


@dataclass(frozen=True)
class CharPoly:
    """A polynomial in `x`, monic, with coefficients in ``F_q[T]``.

    Attributes
    ----------
    coeffs : tuple of Poly
        Coefficients ascending in `x`. The last one is 1.
    kind : str
        ``"m"`` for a minimal polynomial, ``"P"`` for a characteristic
        polynomial.
    power : int
        For ``kind == "P"``, the exponent ``r / deg_x m`` used to build it.
    modulus : Poly, optional
        Set when the coefficients are residues modulo this polynomial.
    """

    coeffs: Tuple[Poly, ...]
    kind: str = field(default="P", compare=False)
    power: int = field(default=1, compare=False)
    modulus: Optional[Poly] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] != 1:
            raise ValueError("CharPoly must be monic in x.")
        if self.kind not in ("m", "P"):
            raise ValueError(f"Unknown kind {self.kind!r}.")

    @property
    def q(self) -> int:
        return self.coeffs[0].q

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Poly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Poly(self.q)

    @property
    def constant_term(self) -> Poly:
        return self.coeffs[0]

    def at(self, x) -> Poly:
        """Substitute a polynomial (or scalar) in ``F_q[T]`` for `x`."""
        acc = Poly(self.q)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.modulus is not None:
            acc = acc % self.modulus
        return acc

    def reduce(self, modulus: Poly) -> "CharPoly":
        """Coefficients reduced modulo `modulus`."""
        return CharPoly(
            tuple(c % modulus for c in self.coeffs), self.kind, self.power, modulus
        )

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        out = [Poly(self.q)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return CharPoly(tuple(out), "P", 1, self.modulus)

    def __pow__(self, k: int) -> "CharPoly":
        result = CharPoly((Poly.constant(self.q, 1),), "P", 1, self.modulus)
        for _ in range(k):
            result = result * self
        return result

    def __str__(self):
        return "|".join(str(c) for c in self.coeffs)

    @classmethod
    def parse(cls, q: int, text: str, kind: str = "P") -> "CharPoly":
        """Parse ``"1,1|1|1"`` style text (``(T+1) + x + x^2``)."""
        return cls(tuple(Poly.parse(q, t) for t in text.split("|")), kind)


def is_endomorphism(phi: DrinfeldModule, u: SkewPoly) -> bool:
    """Whether `u` commutes with ``φ_T``."""
    return phi.phi_T * u == u * phi.phi_T


def _flatten(v: SkewPoly, length: int) -> np.ndarray:
    # F_p coordinates of the τ-coefficients, concatenated
    s = v.field.s
    out = np.zeros(length * s, dtype=np.int64)
    for i, c in enumerate(v.coeffs):
        out[i * s : (i + 1) * s] = c.coeffs
    return out


def fq_frame(q: int, k: ff.FieldDescriptor):
    """Images in `k` of the `F_p` basis ``ω^t`` of `F_q` (code ``p^t``)."""
    p, e = prime_power(q)
    scalars = ff.scalar_embedding(q, k)
    return [scalars[p**t] for t in range(e)]


def fp_to_code(digits, p: int) -> int:
    """The `F_q` code with `F_p` coordinates `digits` in the basis ``ω^t``."""
    return sum(int(c) * p**t for t, c in enumerate(digits))


def _find_relation(phi: DrinfeldModule, u: SkewPoly, max_s: int, max_deg: int):
    q = phi.q
    p, e = prime_power(q)
    omegas = fq_frame(q, phi.field)

    phi_powers = [SkewPoly.constant(q, phi.field, 1)]
    for _ in range(max_deg):
        phi_powers.append(phi_powers[-1] * phi.phi_T)

    u_powers = [SkewPoly.constant(q, phi.field, 1)]
    for _ in range(max_s):
        u_powers.append(u_powers[-1] * u)

    blocks = {}

    def block(i, j, t):
        if (i, j, t) not in blocks:
            blocks[(i, j, t)] = omegas[t] * phi_powers[j] * u_powers[i]
        return blocks[(i, j, t)]

    for s in range(1, max_s + 1):
        target = u_powers[s]
        for D in range(max_deg + 1):
            cols = [
                block(i, j, t)
                for i in range(s)
                for j in range(D + 1)
                for t in range(e)
            ]
            length = max(c.degree for c in cols + [target]) + 1

            mat = np.stack([_flatten(c, length) for c in cols], axis=1)
            rhs = (-_flatten(target, length)) % p

            sol = linalg.solve(mat, rhs, p)
            if sol is None:
                continue

            coeffs = []
            for i in range(s):
                base = i * (D + 1) * e
                codes = [
                    fp_to_code(sol[base + j * e : base + (j + 1) * e], p)
                    for j in range(D + 1)
                ]
                coeffs.append(Poly(q, codes))
            coeffs.append(Poly.constant(q, 1))

            return tuple(coeffs)

    return None


def minimal_polynomial(phi: DrinfeldModule, u: SkewPoly) -> CharPoly:
    """Minimal polynomial ``m(T, x)`` of the endomorphism `u`.

    Parameters
    ----------
    phi : DrinfeldModule
    u : SkewPoly
        An endomorphism of `phi`.

    Returns
    -------
    m : CharPoly
        Kind ``"m"``; its `x`-degree divides the rank.

    Raises
    ------
    ValueError
        If `u` is not an endomorphism.
    VerificationError
        If no relation is found within the degree bounds.
    """
    if not is_endomorphism(phi, u):
        raise ValueError(f"{u!r} is not an endomorphism of {phi}.")

    q = phi.q
    if u.is_zero():
        return CharPoly((Poly(q), Poly.constant(q, 1)), "m")

    coeffs = _find_relation(phi, u, phi.rank, u.degree)
    if coeffs is None:
        raise VerificationError(
            f"Relation search exhausted for u={u} on {phi} "
            f"(s <= {phi.rank}, deg <= {u.degree})."
        )

    return CharPoly(coeffs, "m")


def _signed(a: Poly, r: int) -> Poly:
    return -a if r % 2 else a


def char_polynomial(phi: DrinfeldModule, u: SkewPoly, m: CharPoly = None):
    """Characteristic polynomial ``P = m^(r/s)`` and ``det(u)``.

    Parameters
    ----------
    phi : DrinfeldModule
    u : SkewPoly
        An endomorphism.
    m : CharPoly, optional
        The minimal polynomial of `u` if already known.

    Returns
    -------
    P : CharPoly
        Kind ``"P"``, of `x`-degree ``r``.
    det : Poly
        ``(-1)^r P(T, 0)``.
    """
    if m is None:
        m = minimal_polynomial(phi, u)

    r, s = phi.rank, m.degree
    if r % s:
        raise VerificationError(f"deg_x m = {s} does not divide r = {r}.")

    P = CharPoly((m**(r // s)).coeffs, "P", r // s)
    return P, _signed(P.constant_term, r)


def shifted_determinant(P: CharPoly) -> Poly:
    """``det(u - 1) = (-1)^r P(T, 1)``."""
    return _signed(P.at(Poly.constant(P.q, 1)), P.degree)


def evaluate_charpoly(phi: DrinfeldModule, P: CharPoly, u: SkewPoly) -> SkewPoly:
    """``Σ φ_{a_i} u^i`` in ``k{τ}``; zero iff `u` is a root of `P`."""
    acc = SkewPoly(phi.q, phi.field)
    for c in reversed(P.coeffs):
        acc = acc * u + phi.phi_of(c)
    return acc


def swap_variables(m: CharPoly) -> Tuple[Poly, ...]:
    """Exchange the roles of `T` and `x`.

    Returns
    -------
    coeffs : tuple of Poly
        ``m(x, T)`` as polynomials in the old `x`, ascending in the old `T`.
        The result need not be monic.
    """
    q = m.q
    width = max(c.degree for c in m.coeffs) + 1
    return tuple(Poly(q, [c[j] for c in m.coeffs]) for j in range(width))


def equal_up_to_scalar(a: Sequence[Poly], b: Sequence[Poly]):
    """Find ``c ∈ F_q^×`` with ``a = c b`` coefficientwise.

    Returns
    -------
    c : int or None
        The code of the scalar, or None if there is none.
    """
    a, b = list(a), list(b)
    if len(a) != len(b) or not b or b[-1].is_zero():
        return None

    GF = b[-1].field
    c = int(GF(a[-1].lead) / GF(b[-1].lead))
    if c == 0:
        return None

    if all(x == y.scale(c) for x, y in zip(a, b)):
        return c
    return None


def switch_minimal_polynomial(phi: DrinfeldModule, u: SkewPoly) -> CharPoly:
    """Minimal polynomial of ``φ_T`` as an endomorphism of ``ψ_x = u``.

    The result is a polynomial in `y` (standing for ``φ_T``) with coefficients
    in ``F_q[x]``; it agrees with ``swap_variables(m)`` up to a unit of `F_q`.

    Raises
    ------
    ValueError
        If ``deg_τ u < 1``, so that `u` does not define a Drinfeld module.
    """
    if u.degree < 1:
        raise ValueError("Switching needs deg_τ(u) >= 1.")

    psi = DrinfeldModule(phi.q, phi.n, u.coeffs)
    return minimal_polynomial(psi, phi.phi_T)
