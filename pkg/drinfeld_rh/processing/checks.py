"""Verification checks run on each sampled module

Every check is a small configurable task. It takes a :py:class:`SampleContext`
holding one Drinfeld module and the quantities shared between checks (the
Frobenius polynomials, the RH report) and returns a verdict with a short
witness string.

A check that hits a field or extension cap is *skipped*; a
:py:class:`~drinfeld_rh.core.errors.VerificationError` is a failure.

Tasks
=====

.. autosummary::
    :toctree:

    Bounds
    A0
    Abs
    Newton
    Agreement
    TorsionStructure
    Prop32
    Prop33
    DegDet
    Switch
    Kernel
"""

import logging
import zlib
from functools import cached_property
from typing import Dict, List

import numpy as np
from caput import config

from ..analysis import endo, frobenius, rh_verify, torsion
from ..analysis.rh_verify import RHItem
from ..core.drinfeld import DrinfeldModule
from ..core.errors import CapExceededError, VerificationError
from ..core.polyring import Poly, irreducibles


class SampleContext:
    """One sampled module and the quantities shared by the checks.

    Parameters
    ----------
    phi : DrinfeldModule
    seed, index : int
        Key of the sample; used to derive the randomness of the checks.
    max_extension_factor, max_field_bits : int
        Caps for torsion computations.
    """

    def __init__(
        self,
        phi: DrinfeldModule,
        seed: int = 0,
        index: int = 0,
        max_extension_factor: int = torsion.MAX_EXTENSION_FACTOR,
        max_field_bits: int = torsion.MAX_FIELD_BITS,
    ):
        self.phi = phi
        self.seed = seed
        self.index = index
        self.caps = dict(
            max_extension_factor=max_extension_factor, max_field_bits=max_field_bits
        )

    @cached_property
    def direct(self):
        """``(P, m, det)`` of the Frobenius by the relation search."""
        return frobenius.frobenius_charpoly_direct(self.phi)

    @property
    def P(self) -> endo.CharPoly:
        return self.direct[0]

    @property
    def m(self) -> endo.CharPoly:
        return self.direct[1]

    @cached_property
    def frobenius(self) -> frobenius.FrobeniusResult:
        return frobenius.frobenius_charpoly(self.phi, m=self.m, **self.caps)

    @cached_property
    def rh(self) -> rh_verify.RHReport:
        return rh_verify.check_rh(self.phi, self.P, self.m)

    def rng(self, name: str) -> np.random.Generator:
        """Generator private to this sample and the named check."""
        phi = self.phi
        key = np.random.SeedSequence(
            [self.seed, phi.q, phi.n, phi.rank, self.index, zlib.crc32(name.encode())]
        )
        return np.random.Generator(np.random.Philox(key))

    def random_poly(self, rng: np.random.Generator, max_degree: int) -> Poly:
        """A random nonzero polynomial of degree at most `max_degree`."""
        q = self.phi.q
        while True:
            deg = int(rng.integers(0, max_degree + 1))
            a = Poly(q, [int(c) for c in rng.integers(0, q, size=deg + 1)])
            if a:
                return a

    def primes(self, max_degree: int) -> List[Poly]:
        """Primes ``𝔩 ≠ 𝔭`` of degree at most `max_degree`, canonical order."""
        return [
            prime
            for prime in irreducibles(self.phi.q, max_degree=max_degree)
            if prime != self.phi.prime
        ]


class Check(config.Reader):
    """Base class for checks.

    Subclasses set `name` and implement :py:meth:`process`.
    """

    name = None

    @property
    def log(self) -> logging.Logger:
        return logging.getLogger(f"{__name__}.{type(self).__name__}")

    def run(self, ctx: SampleContext) -> RHItem:
        """Run the check, turning caps into skips and internal errors into fails."""
        try:
            verdict = self.process(ctx)
        except CapExceededError as e:
            self.log.warning(f"Skipped {self.name} on {ctx.phi}: {e}")
            return RHItem(False, str(e), skipped=True)
        except VerificationError as e:
            verdict = RHItem(False, str(e))

        if not verdict.passed and not verdict.skipped:
            self.log.error(f"{self.name} failed on {ctx.phi}: {verdict.witness}")

        return verdict

    def process(self, ctx: SampleContext) -> RHItem:
        raise NotImplementedError(f"{type(self).__name__} must implement process.")


class Bounds(Check):
    """``r deg a_i <= (r - i) n`` and ``deg P(T, 1) = n``."""

    name = "bounds"

    def process(self, ctx):
        return ctx.rh.items["bounds"]


class A0(Check):
    """``a_0 = c 𝔭^(n/d)``."""

    name = "a0"

    def process(self, ctx):
        return ctx.rh.items["a0"]


class Abs(Check):
    """``|α|_* = q^(n/r)`` through ``r deg m(T, 0) = n deg_x m``."""

    name = "abs"

    def process(self, ctx):
        return ctx.rh.items["abs"]


class Newton(Check):
    """Single Newton slope ``n/r``, consistent with the bounds and abs checks."""

    name = "newton"

    def process(self, ctx):
        item = ctx.rh.items["newton"]
        if not ctx.rh.consistent:
            return RHItem(False, f"{item.witness} inconsistent with bounds/abs")
        return item


class Agreement(Check):
    """Direct and CRT Frobenius polynomials agree exactly."""

    name = "agreement"

    def process(self, ctx):
        res = ctx.frobenius
        if res.P_crt is None:
            return RHItem(False, res.skipped[-1][1], skipped=True)

        used = ";".join(str(prime) for prime in res.primes)
        if not res.agree:
            return RHItem(False, f"crt={res.P_crt} primes={used}")
        return RHItem(True, f"primes={used}")


class TorsionStructure(Check):
    """Invariant factors of ``φ[𝔩]``, ``dim φ[𝔭]`` and the height law.

    Attributes
    ----------
    max_prime_degree : int
        Test ``φ[𝔩]`` for primes ``𝔩 ≠ 𝔭`` up to this degree.
    num_height_samples : int
        Number of random ``a`` for the law ``h(φ_a) = H v_𝔭(a) d``.
    max_valuation : int
        Largest ``v_𝔭(a)`` drawn for the height law.
    """

    name = "torsion-structure"

    max_prime_degree = config.Property(proptype=int, default=1)
    num_height_samples = config.Property(proptype=int, default=4)
    max_valuation = config.Property(proptype=int, default=2)

    def process(self, ctx):
        phi = ctx.phi
        r, H, d = phi.rank, phi.height, phi.d

        for prime in ctx.primes(self.max_prime_degree):
            factors = torsion.module_structure(torsion.torsion_model(phi, prime))
            if tuple(factors) != (prime,) * r:
                return RHItem(False, f"factors of φ[{prime}] = {factors}")

        tm = torsion.torsion_model(phi, phi.prime)
        if tm.dim != (r - H) * d:
            return RHItem(False, f"dim φ[p]={tm.dim} != {(r - H) * d}")

        rng = ctx.rng(self.name)
        for _ in range(self.num_height_samples):
            v = int(rng.integers(0, self.max_valuation + 1))
            b = ctx.random_poly(rng, 2)
            while b.gcd(phi.prime).degree > 0:
                b = ctx.random_poly(rng, 2)
            a = phi.prime**v * b

            h = phi.phi_of(a).tau_profile().height
            if h != H * v * d:
                return RHItem(False, f"h(φ_a)={h} != {H * v * d} for a={a}")

        return RHItem(True, f"H={H} dim φ[p]={tm.dim}")


class Prop32(Check):
    """``P mod 𝔩`` equals the characteristic polynomial of ``π`` on ``φ[𝔩]``.

    Attributes
    ----------
    max_prime_degree : int
        Test primes ``𝔩 ≠ 𝔭`` up to this degree.
    """

    name = "prop32"

    max_prime_degree = config.Property(proptype=int, default=2)

    def process(self, ctx):
        phi, P = ctx.phi, ctx.P
        done, skipped = [], []

        for prime in ctx.primes(self.max_prime_degree):
            try:
                res = torsion.endo_charpoly_mod(
                    torsion.torsion_model(phi, prime), phi.frobenius, **ctx.caps
                )
            except CapExceededError as e:
                self.log.debug(f"A/{prime} over the caps: {e}")
                skipped.append(str(prime))
                continue

            if res != P.reduce(prime):
                return RHItem(False, f"l={prime}: {res} != {P.reduce(prime)}")
            done.append(str(prime))

        witness = f"checked={';'.join(done)}"
        if skipped:
            return RHItem(False, f"{witness} capped={';'.join(skipped)}", skipped=True)
        return RHItem(True, witness)


class Prop33(Check):
    """``v_𝔩(det u) deg 𝔩 = dim U_𝔩`` for ``u ∈ {φ_𝔩, φ_𝔩², π}``.

    Attributes
    ----------
    max_prime_degree : int
        Test primes ``𝔩 ≠ 𝔭`` up to this degree.
    """

    name = "prop33"

    max_prime_degree = config.Property(proptype=int, default=1)

    def process(self, ctx):
        phi = ctx.phi

        for prime in ctx.primes(self.max_prime_degree):
            endos = {
                "phi_l": phi.phi_of(prime),
                "phi_l2": phi.phi_of(prime**2),
                "pi": phi.frobenius,
            }
            for label, u in endos.items():
                _, det = endo.char_polynomial(phi, u)
                _, dim = torsion.kernel_data(phi, u, prime, **ctx.caps)
                lhs = det.valuation(prime) * prime.degree
                if lhs != dim:
                    return RHItem(
                        False, f"l={prime} u={label}: v*deg={lhs} dim U={dim}"
                    )

        return RHItem(True, f"max_deg={self.max_prime_degree}")


class DegDet(Check):
    """``deg det u = deg_τ u`` on a family of endomorphisms.

    Also checks ``Σ φ_{a_i} u^i = 0``, ``deg det(u - 1) = deg det(u)`` for
    inseparable `u` and ``deg m(T, 1) = deg m(T, 0)`` when ``deg_τ u >= 1``.

    Attributes
    ----------
    max_a_degree : int
        Degree bound on the random auxiliary ``a``.
    """

    name = "degdet"

    max_a_degree = config.Property(proptype=int, default=2)

    def process(self, ctx):
        phi = ctx.phi
        pi = phi.frobenius
        a = ctx.random_poly(ctx.rng(self.name), self.max_a_degree)
        phi_a = phi.phi_of(a)

        endos = {
            "phi_a": phi_a,
            "pi": pi,
            "pi+phi_a": pi + phi_a,
            "phi_a*pi": phi_a * pi,
        }

        for label, u in endos.items():
            if u.is_zero():
                continue

            m = endo.minimal_polynomial(phi, u)
            P, det = endo.char_polynomial(phi, u, m)
            profile = u.tau_profile()

            if det.degree != profile.deg_tau:
                return RHItem(
                    False, f"{label}: deg det={det.degree} deg_tau={profile.deg_tau}"
                )

            if endo.evaluate_charpoly(phi, P, u):
                return RHItem(False, f"{label}: P(u) != 0")

            if not profile.separable:
                shifted = endo.shifted_determinant(P)
                if shifted.degree != det.degree:
                    return RHItem(
                        False, f"{label}: deg det(u-1)={shifted.degree} != {det.degree}"
                    )

            if profile.deg_tau >= 1:
                one = Poly.constant(phi.q, 1)
                if m.at(one).degree != m.constant_term.degree:
                    return RHItem(False, f"{label}: deg m(T,1) != deg m(T,0)")

        return RHItem(True, f"a={a}")


class Switch(Check):
    """Minimal polynomial of ``φ_T`` over ``ψ_x = π`` is ``c m(x, T)``."""

    name = "switch"

    def process(self, ctx):
        phi = ctx.phi
        switched = endo.switch_minimal_polynomial(phi, phi.frobenius)
        swapped = endo.swap_variables(ctx.m)

        c = endo.equal_up_to_scalar(switched.coeffs, swapped)
        if c is None:
            return RHItem(False, f"switched={switched}")
        return RHItem(True, f"c={c}")


class Kernel(Check):
    """``ker(π - 1) = k`` splits along the primes of ``det(π - 1)``."""

    name = "kernel"

    def process(self, ctx):
        phi = ctx.phi
        u = phi.frobenius - 1
        det = endo.shifted_determinant(ctx.P)

        parts = torsion.kernel_decomposition(phi, u, det, **ctx.caps)
        witness = ";".join(f"{p.prime}:{p.valuation}:{p.dim}" for p in parts)

        total = sum(p.dim for p in parts)
        if total != u.degree or not all(p.consistent for p in parts):
            return RHItem(False, witness)
        return RHItem(True, witness)


# Check names in report order
CHECKS: Dict[str, type] = {
    cls.name: cls
    for cls in (
        Bounds,
        A0,
        Abs,
        Newton,
        Agreement,
        TorsionStructure,
        Prop32,
        Prop33,
        DegDet,
        Switch,
        Kernel,
    )
}


def build_checks(names, checks_config: dict = None) -> List[Check]:
    """Instantiate the named checks with their per-check configuration."""
    checks_config = checks_config or {}

    unknown = set(checks_config) - set(CHECKS)
    if unknown:
        raise config.CaputConfigError(f"Unknown checks in config: {sorted(unknown)}")

    return [CHECKS[name].from_config(checks_config.get(name, {})) for name in names]
