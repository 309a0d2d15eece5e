"""Characteristic polynomial of the Frobenius endomorphism

Two independent routes to ``P_{φ,π}(T, x)`` for ``π = τ^n``:

- :py:func:`frobenius_charpoly_direct` runs the relation search of
  :py:mod:`drinfeld_rh.analysis.endo` on ``π``.
- :py:func:`frobenius_charpoly_crt` computes ``P mod 𝔩`` on the torsion
  ``φ[𝔩]``, modelled over ``k`` by remainders modulo ``φ_𝔩``, for primes
  ``𝔩 ≠ 𝔭`` in canonical order until their degrees add up to ``n + 1``, and
  glues the residues with the Chinese remainder theorem.

:py:func:`frobenius_charpoly` runs both and compares them.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Tuple

from ..core.drinfeld import DrinfeldModule
from ..core.errors import CapExceededError, VerificationError
from ..core.polyring import Poly, crt_reconstruct, irreducibles, prime_power
from . import endo, torsion

logger = logging.getLogger(__name__)

# Give up on the CRT route once primes of this degree are reached
MAX_PRIME_DEGREE = 8


@dataclass
class FrobeniusResult:
    """Frobenius polynomials from both methods and how they were obtained."""

    P: endo.CharPoly
    m: endo.CharPoly
    det: Poly
    P_crt: endo.CharPoly = None
    primes: List[Poly] = field(default_factory=list)
    skipped: List[Tuple[Poly, str]] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.P_crt is not None and self.P_crt == self.P


def frobenius_charpoly_direct(phi: DrinfeldModule, m: endo.CharPoly = None):
    """``P_{φ,π}`` from the minimal polynomial of ``π``.

    Returns
    -------
    P : CharPoly
    m : CharPoly
    det : Poly
    """
    pi = phi.frobenius
    if m is None:
        m = endo.minimal_polynomial(phi, pi)
    P, det = endo.char_polynomial(phi, pi, m)
    return P, m, det


def _prime_degree_bound(
    phi: DrinfeldModule, max_extension_factor: int, max_field_bits: int
) -> int:
    # A prime of degree δ needs F_{q^δ} inside the caps
    p, e = prime_power(phi.q)
    bound = 0
    while (
        bound < MAX_PRIME_DEGREE
        and bound + 1 <= max_extension_factor * phi.n
        and p ** (e * (bound + 1)) <= 2**max_field_bits
    ):
        bound += 1
    return bound


def frobenius_charpoly_crt(
    phi: DrinfeldModule,
    max_extension_factor: int = torsion.MAX_EXTENSION_FACTOR,
    max_field_bits: int = torsion.MAX_FIELD_BITS,
):
    """``P_{φ,π}`` glued from its reductions modulo primes ``𝔩 ≠ 𝔭``.

    Each reduction is read off the :py:class:`~.torsion.KernelModel` of
    ``φ[𝔩]`` inside ``F_{q^lcm(n, deg 𝔩)}``. Primes of degree too large for
    the caps are never enumerated; primes whose field is over the caps are
    skipped and replaced by the next one in canonical order.

    Returns
    -------
    P : CharPoly
    primes : list of Poly
        Primes used.
    skipped : list of (Poly, str)
        Primes skipped and the reason.

    Raises
    ------
    CapExceededError
        If the primes within the caps do not suffice.
    """
    pi = phi.frobenius
    need = phi.n + 1
    max_degree = _prime_degree_bound(phi, max_extension_factor, max_field_bits)

    residues, primes, skipped = [], [], []
    total = 0
    for prime in irreducibles(phi.q, max_degree=max_degree):
        if total >= need:
            break
        if prime == phi.prime:
            continue

        try:
            res = torsion.endo_charpoly_mod(
                torsion.torsion_model(phi, prime),
                pi,
                max_extension_factor,
                max_field_bits,
            )
        except CapExceededError as e:
            logger.info("Skipping 𝔩 = %s for %s: %s", prime, phi, e)
            skipped.append((prime, str(e)))
            continue

        residues.append(res)
        primes.append(prime)
        total += prime.degree

    if total < need:
        raise CapExceededError(
            f"Primes of degree <= {max_degree} give only {total} of {need}.",
            degree=max_degree + 1,
        )

    coeffs = tuple(
        crt_reconstruct([(res[i], res.modulus) for res in residues])
        for i in range(phi.rank + 1)
    )

    return endo.CharPoly(coeffs, "P"), primes, skipped


def frobenius_charpoly(
    phi: DrinfeldModule,
    strict: bool = False,
    m: endo.CharPoly = None,
    max_extension_factor: int = torsion.MAX_EXTENSION_FACTOR,
    max_field_bits: int = torsion.MAX_FIELD_BITS,
) -> FrobeniusResult:
    """Run both methods.

    Parameters
    ----------
    phi : DrinfeldModule
    strict : bool
        Raise :py:class:`VerificationError` if the two methods disagree.
    m : CharPoly, optional
        Minimal polynomial of the Frobenius, if already known.

    Returns
    -------
    result : FrobeniusResult
        ``P_crt`` is None if the CRT route hit the caps.
    """
    P, m, det = frobenius_charpoly_direct(phi, m)
    result = FrobeniusResult(P=P, m=m, det=det)

    try:
        P_crt, primes, skipped = frobenius_charpoly_crt(
            phi, max_extension_factor, max_field_bits
        )
    except CapExceededError as e:
        logger.info("CRT route unavailable for %s: %s", phi, e)
        result.skipped.append((None, str(e)))
        return result

    result.P_crt, result.primes, result.skipped = P_crt, primes, skipped

    if strict and not result.agree:
        raise VerificationError(
            f"Direct P = {P} and CRT P = {P_crt} disagree for {phi}."
        )

    return result
