"""Checks of the Riemann hypothesis for Drinfeld modules

For the Frobenius characteristic polynomial
``P = x^r + a_{r-1} x^{r-1} + ... + a_0`` of a rank `r` module over
``k = F_{q^n}`` with characteristic `𝔭` of degree `d`:

- *bounds*: ``r deg a_i <= (r - i) n`` for ``0 <= i < r``;
- *a0*: ``a_0 = c 𝔭^(n/d)`` with ``c ∈ F_q^×``;
- *abs*: every root ``α`` has ``|α|_* = q^(n/r)``, i.e.
  ``r deg m(T, 0) = n deg_x m``;
- *newton*: the Newton polygon at infinity is one segment of slope ``n/r``.

All exponents are exact :py:class:`fractions.Fraction` values.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from ..core.drinfeld import DrinfeldModule
from ..core.errors import VerificationError
from ..core.polyring import INFINITY, Poly, v_inf
from .endo import CharPoly


def abs_star_exponent(m: CharPoly) -> Fraction:
    """The exponent ``ρ`` with ``|α|_* = q^ρ`` for the roots ``α`` of `m`.

    Raises
    ------
    ValueError
        If the constant term of `m` is zero.
    """
    if m.constant_term.is_zero():
        raise ValueError("Minimal polynomial with zero constant term.")
    return Fraction(m.constant_term.degree, m.degree)


def newton_slopes(P: CharPoly) -> List[Tuple[Fraction, int]]:
    """Slopes and lengths of the Newton polygon at infinity.

    The polygon is the lower convex hull of the points ``(i, v_∞(a_i))`` over
    the nonzero coefficients. Collinear pieces are merged.

    Returns
    -------
    slopes : list of (Fraction, int)
        Ascending slopes with their horizontal lengths.
    """
    one = Poly.constant(P.q, 1)
    points = [(i, v_inf(a, one)) for i, a in enumerate(P.coeffs)]
    points = [pt for pt in points if pt[1] is not INFINITY]

    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # Drop the middle point if it is on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)

    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes.append((Fraction(y2 - y1, x2 - x1), x2 - x1))

    return slopes


@dataclass
class RHItem:
    """Verdict and witness of one check."""

    passed: bool
    witness: str = ""
    skipped: bool = False

    def to_dict(self) -> dict:
        out = {"pass": self.passed, "witness": self.witness}
        if self.skipped:
            out["skipped"] = True
        return out


@dataclass
class RHReport:
    """The four checks for one module."""

    module: str
    charpoly: str
    minpoly: str
    rho: Fraction
    slopes: List[Tuple[Fraction, int]]
    items: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.items.values())

    @property
    def consistent(self) -> bool:
        """The Newton verdict agrees with bounds and abs taken together."""
        newton = self.items["newton"].passed
        return newton == (self.items["bounds"].passed and self.items["abs"].passed)

    def to_dict(self) -> dict:
        return {name: item.to_dict() for name, item in self.items.items()}


def _check_bounds(P: CharPoly, n: int) -> RHItem:
    r = P.degree
    for i in range(r):
        a = P[i]
        if a and a.degree * r > (r - i) * n:
            return RHItem(False, f"i={i}: deg a_i={a.degree} > {(r - i) * n}/{r}")

    # deg P(T, 1) is reported, the verdict rests on the bounds alone
    shifted = P.at(Poly.constant(P.q, 1)).degree
    return RHItem(True, f"deg P(T,1)={shifted}")


def _check_a0(P: CharPoly, phi: DrinfeldModule) -> RHItem:
    if phi.n % phi.d:
        raise VerificationError(f"d={phi.d} does not divide n={phi.n}.")

    target = phi.prime ** (phi.n // phi.d)
    quo, rem = divmod(P.constant_term, target)
    if rem or quo.degree != 0:
        return RHItem(False, f"a0={P.constant_term} is not c*p^{phi.n // phi.d}")

    return RHItem(True, f"a0={quo.lead}*p^{phi.n // phi.d}")


def _check_abs(m: CharPoly, n: int, r: int) -> Tuple[RHItem, Fraction]:
    try:
        rho = abs_star_exponent(m)
    except ValueError as e:
        return RHItem(False, str(e)), None

    ok = r * m.constant_term.degree == n * m.degree
    return RHItem(ok, f"rho={rho}"), rho


def _check_newton(slopes, n: int, r: int) -> RHItem:
    ok = slopes == [(Fraction(n, r), r)]
    witness = ";".join(f"{s}x{length}" for s, length in slopes)
    return RHItem(ok, witness)


def check_rh(phi: DrinfeldModule, P: CharPoly, m: CharPoly) -> RHReport:
    """Run the bounds, a0, abs and newton checks.

    Parameters
    ----------
    phi : DrinfeldModule
    P, m : CharPoly
        Characteristic and minimal polynomials of the Frobenius.

    Returns
    -------
    report : RHReport

    Raises
    ------
    VerificationError
        If `d` does not divide `n`.
    """
    if P is None or m is None:
        raise ValueError("check_rh needs both P and m.")

    n, r = phi.n, phi.rank
    slopes = newton_slopes(P)
    abs_item, rho = _check_abs(m, n, r)

    report = RHReport(
        module=str(phi), charpoly=str(P), minpoly=str(m), rho=rho, slopes=slopes
    )
    report.items["bounds"] = _check_bounds(P, n)
    report.items["a0"] = _check_a0(P, phi)
    report.items["abs"] = abs_item
    report.items["newton"] = _check_newton(slopes, n, r)

    return report
