"""Torsion spaces of Drinfeld modules

The `a`-torsion ``φ[a]`` is the `F_q`-space of roots in ``k̄`` of the
`q`-polynomial ``φ_a``. It is realised in two ways.

:py:class:`TorsionModule`
    An explicit `F_q` basis inside the least extension ``L = F_{q^m}`` of
    ``k`` holding ``φ[a]``, found by linear algebra over `F_p` on the
    coefficient vectors of `L`.

:py:class:`KernelModel`
    Stays inside ``k``. Write ``w = v τ^h`` with ``v`` separable of
    ``τ``-degree ``N``. Then ``x -> x^(q^h)`` maps ``ker w`` onto ``ker v``,
    and an operator `u` preserving ``ker w`` becomes ``u' = τ^h u τ^-h`` on
    ``ker v``. Row ``i`` of the *remainder matrix* of `u` holds the
    coefficients of the remainder of ``τ^i u'`` on right division by ``v``.
    Applied to ``(y, y^q, ..., y^(q^(N-1)))`` for a root ``y`` of ``v`` it
    gives the same vector for ``u'(y)``, so the Moore matrix of an `F_q`
    basis of ``ker v`` conjugates the remainder matrix into the `F_q` matrix
    of `u`. Ranks, the `A`-module structure and characteristic polynomials
    are read off it without building the field that holds the roots.

The order of the remainder matrix of ``π = τ^n`` is the least `j` with
``ker w ⊂ F_{q^(nj)}``. Explicit realisations go straight to that field, or
fail before building anything when it is over the caps.

Classes
=======
- :py:class:`TorsionModule`
- :py:class:`KernelModel`
- :py:class:`KernelPart`

Functions
=========
- :py:func:`torsion_space`
- :py:func:`torsion_model`
- :py:func:`torsion_dimension`
- :py:func:`module_structure`
- :py:func:`endo_charpoly_mod`
- :py:func:`kernel_data`
- :py:func:`kernel_decomposition`
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Tuple, Union

import galois
import numpy as np

from ..core import ff, linalg
from ..core.drinfeld import DrinfeldModule
from ..core.errors import CapExceededError, VerificationError
from ..core.polyring import (
    InvariantFactors,
    Poly,
    SmithForm,
    charpoly,
    prime_power,
    smith_form,
)
from ..core.skew import SkewPoly
from .endo import CharPoly, fp_to_code, fq_frame, is_endomorphism

logger = logging.getLogger(__name__)

# Default caps: m <= 24 n and at most 2^24 field elements
MAX_EXTENSION_FACTOR = 24
MAX_FIELD_BITS = 24


class _FqFrame:
    """`F_q`-linear algebra on the `F_p` coefficient vectors of `L`."""

    def __init__(self, q: int, L: ff.FieldDescriptor):
        self.p, self.e = prime_power(q)
        self.mult = [ff.multiplication_matrix(w) for w in fq_frame(q, L)]

    def spread(self, vectors) -> List[np.ndarray]:
        # ω^t v for each v, v-major
        return [(m @ v) % self.p for v in vectors for m in self.mult]

    def basis(self, vectors) -> List[np.ndarray]:
        """Greedy `F_q` basis extracted from an `F_p` spanning set."""
        chosen, span = [], []
        for v in vectors:
            cand = span + self.spread([v])
            if linalg.rank(np.array(cand), self.p) == len(cand):
                chosen.append(v)
                span = cand
        return chosen

    def coordinates(self, basis, targets) -> np.ndarray:
        """`F_q` codes of each target in `basis`; shape ``(len(basis), ntargets)``."""
        cols = np.stack(self.spread(basis), axis=1)
        rhs = np.stack(targets, axis=1)

        sol = linalg.solve(cols, rhs, self.p)
        if sol is None:
            raise VerificationError("Vector outside the span of the torsion basis.")

        e = self.e
        return np.array(
            [
                [
                    fp_to_code(sol[j * e : (j + 1) * e, k], self.p)
                    for k in range(sol.shape[1])
                ]
                for j in range(len(basis))
            ],
            dtype=np.int64,
        )


def _max_multiple(
    phi: DrinfeldModule, max_extension_factor: int, max_field_bits: int
) -> int:
    # Largest j with F_{q^(nj)} inside both caps
    p, e = prime_power(phi.q)
    j = 0
    while j < max_extension_factor and p ** (e * phi.n * (j + 1)) <= 2**max_field_bits:
        j += 1
    return j


def _check_caps(
    phi: DrinfeldModule, m: int, max_extension_factor: int, max_field_bits: int
):
    p, e = prime_power(phi.q)
    if m > max_extension_factor * phi.n:
        raise CapExceededError(
            f"Extension of degree {m} exceeds {max_extension_factor} n.", degree=m
        )
    if p ** (e * m) > 2**max_field_bits:
        raise CapExceededError(
            f"F_{phi.q}^{m} exceeds 2^{max_field_bits} elements.", degree=m
        )


class KernelModel:
    """``ker w ⊂ k̄`` modelled on ``k^N`` by remainders modulo ``v``.

    Parameters
    ----------
    phi : DrinfeldModule
    w : SkewPoly
        A nonzero `q`-polynomial over ``k``.
    level : Poly, optional
        The level `a` when ``w = φ_a``.

    Attributes
    ----------
    height : int
        The ``τ``-adic valuation `h` of `w`.
    separable : SkewPoly
        ``v`` with ``w = v τ^h``.
    dim : int
        ``dim_{F_q} ker w``, the ``τ``-degree of ``v``.
    """

    def __init__(self, phi: DrinfeldModule, w: SkewPoly, level: Poly = None):
        if w.is_zero():
            raise ValueError("The zero map has no finite kernel.")

        self.phi = phi
        self.w = w
        self.level = level
        self.height = w.tau_profile().height
        self.separable = w.separable_part()
        self.dim = self.separable.degree

    def matrix(self, u: SkewPoly):
        """Remainder matrix of `u`, acting on columns.

        `u` must map ``ker w`` into itself, e.g. an endomorphism of ``φ``.

        Returns
        -------
        mat : galois.FieldArray
            ``N x N`` matrix over the field class of ``k``.
        """
        k = self.phi.field
        N, v = self.dim, self.separable
        if N == 0:
            return k.GF.Zeros((0, 0))

        tau = SkewPoly.tau(self.phi.q, k)
        rem = u.conjugate(self.height).right_divmod(v)[1]

        rows = []
        for _ in range(N):
            rows.append([rem[j].code for j in range(N)])
            rem = (tau * rem).right_divmod(v)[1]

        return k.GF(rows)

    def kernel_dim(self, u: SkewPoly) -> int:
        """``dim_{F_q}`` of the kernel of `u` on ``ker w``."""
        if self.dim == 0:
            return 0
        return self.dim - int(np.linalg.matrix_rank(self.matrix(u)))

    def splitting_degree(self, max_multiple: int):
        """Least `j` with ``ker w ⊂ F_{q^(nj)}``, None if above `max_multiple`."""
        if self.dim == 0:
            return 1

        frob = self.matrix(self.phi.frobenius)
        eye = type(frob).Identity(self.dim)
        power = frob
        for j in range(1, max_multiple + 1):
            if np.array_equal(power, eye):
                return j
            power = power @ frob
        return None

    def _poly_at(self, a: Poly, mat):
        # a(mat), with the F_q coefficients of a sent into k
        GF = type(mat)
        scalars = ff.scalar_embedding(self.phi.q, self.phi.field)
        eye = GF.Identity(mat.shape[0])
        acc = GF.Zeros(mat.shape)
        for c in reversed(a.coeffs):
            acc = acc @ mat + GF(scalars[c].code) * eye
        return acc

    @property
    def factors(self) -> InvariantFactors:
        """Non-unit invariant factors of ``ker φ_a`` as an `A`-module.

        For each prime ``𝔩 | a`` the growth of ``dim ker 𝔩(Θ)^j``, ``Θ`` the
        remainder matrix of ``φ_T``, counts the cyclic summands ``A/𝔩^i``
        with ``i >= j``.

        Raises
        ------
        ValueError
            If the model has no level.
        """
        if self.level is None:
            raise ValueError("Module structure needs the level of the torsion.")

        q, N = self.phi.q, self.dim
        if N == 0:
            return InvariantFactors(())

        theta = self.matrix(self.phi.phi_T)
        exponents, found = {}, 0
        for prime, mult in self.level.factors():
            step = self._poly_at(prime, theta)
            power, dims = step, [0]
            for _ in range(mult):
                dims.append(N - int(np.linalg.matrix_rank(power)))
                power = power @ step

            growth = [b - a for a, b in zip(dims, dims[1:])]
            if any(g % prime.degree for g in growth):
                raise VerificationError(
                    f"Kernel dimensions {dims} along {prime!r} are not multiples "
                    f"of its degree."
                )
            at_least = [g // prime.degree for g in growth] + [0]
            exponents[prime] = [
                j + 1 for j in range(mult) for _ in range(at_least[j] - at_least[j + 1])
            ]
            found += dims[-1]

        if found != N:
            raise VerificationError(
                f"Primary parts of φ[{self.level}] have dimension {found}, not {N}."
            )

        length = max(len(exps) for exps in exponents.values())
        factors = []
        for t in range(length):
            d = Poly.constant(q, 1)
            for prime, exps in exponents.items():
                padded = [0] * (length - len(exps)) + exps
                d = d * prime ** padded[t]
            factors.append(d)

        return InvariantFactors(tuple(factors))

    def __repr__(self):
        return f"KernelModel({self.phi}, w={self.w}, dim={self.dim})"


def torsion_model(phi: DrinfeldModule, a: Poly) -> KernelModel:
    """The :py:class:`KernelModel` of ``φ[a]``.

    Raises
    ------
    ValueError
        If `a` is zero or a unit.
    """
    if a.degree < 1:
        raise ValueError(f"Torsion level {a!r} must be nonconstant.")
    return KernelModel(phi, phi.phi_of(a), level=a)


def _splitting_degree(
    phi: DrinfeldModule,
    model: KernelModel,
    max_extension_factor: int,
    max_field_bits: int,
) -> int:
    # Least m, a multiple of n, with ker w inside F_{q^m}
    top = _max_multiple(phi, max_extension_factor, max_field_bits)
    j = model.splitting_degree(top)
    if j is None:
        raise CapExceededError(
            f"Roots of {model.w} need an extension of degree above {top * phi.n}.",
            degree=(top + 1) * phi.n,
        )
    return j * phi.n


def expected_dimension(phi: DrinfeldModule, a: Poly) -> int:
    """``dim_{F_q} φ[a] = r deg a - H v_𝔭(a) d``."""
    return phi.rank * a.degree - phi.height * phi.p_valuation(a) * phi.d


@dataclass(frozen=True, eq=False)
class TorsionModule:
    """The torsion ``φ[a]`` realised inside ``L = F_{q^m}``.

    Attributes
    ----------
    phi : DrinfeldModule
    level : Poly
        The level `a`.
    m : int
        Degree of the ambient field `L` over `F_q`.
    ambient : FieldDescriptor
        The field `L`.
    basis : tuple of FieldElement
        An `F_q` basis of ``φ[a]``.
    action : np.ndarray
        `F_q` codes of the matrix of ``φ_T`` in `basis` (columns are images).
    smith : SmithForm
        Smith form of ``T I - action``.
    """

    phi: DrinfeldModule
    level: Poly
    m: int
    ambient: ff.FieldDescriptor
    basis: Tuple[ff.FieldElement, ...]
    action: np.ndarray
    smith: SmithForm

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def frame(self) -> _FqFrame:
        return _FqFrame(self.phi.q, self.ambient)

    @property
    def factors(self) -> InvariantFactors:
        return InvariantFactors(tuple(d for d in self.smith.diagonal if d)).nonunit()

    def generators(self) -> List[Tuple[Poly, ff.FieldElement]]:
        """Cyclic generators ``(d_k, g_k)`` with ``φ[a] = ⊕ (A/d_k) g_k``."""
        ui = self.smith.U_inv
        out = []
        for k, d in enumerate(self.smith.diagonal):
            if d.is_unit():
                continue
            g = self.ambient.zero()
            for i, b in enumerate(self.basis):
                g = g + self.phi.phi_of(ui[i][k]).evaluate(b)
            out.append((d, g))
        return out


def _action_matrix(phi: DrinfeldModule, L, basis_vecs, frame: _FqFrame):
    if not basis_vecs:
        return np.zeros((0, 0), dtype=np.int64)
    mphi = phi.phi_T.matrix_on(L)
    images = [(mphi @ v) % L.p for v in basis_vecs]
    return frame.coordinates(basis_vecs, images)


def _smith_of_action(q: int, action: np.ndarray) -> SmithForm:
    d = action.shape[0]
    mat = [
        [
            Poly(q, [0, 1 if i == j else 0]) - Poly.constant(q, int(action[i, j]))
            for j in range(d)
        ]
        for i in range(d)
    ]
    return smith_form(mat, q)


def torsion_space(
    phi: DrinfeldModule,
    a: Poly,
    max_extension_factor: int = MAX_EXTENSION_FACTOR,
    max_field_bits: int = MAX_FIELD_BITS,
) -> TorsionModule:
    """Realise ``φ[a]`` in the least ``F_{q^m}``, ``n | m``, that contains it.

    The degree `m` is read off the :py:class:`KernelModel` of ``φ[a]``, so
    only the field that is needed gets built.

    Parameters
    ----------
    phi : DrinfeldModule
    a : Poly
        A nonzero, nonconstant level.
    max_extension_factor : int
        Largest ``m / n`` allowed.
    max_field_bits : int
        Largest ambient field is ``2^max_field_bits`` elements.

    Returns
    -------
    tm : TorsionModule

    Raises
    ------
    ValueError
        If `a` is zero or a unit.
    CapExceededError
        If the field holding the whole torsion is over the caps.
    """
    model = torsion_model(phi, a)

    q = phi.q
    p, e = prime_power(q)
    expected = expected_dimension(phi, a)
    if model.dim != expected:
        raise VerificationError(
            f"φ_{a} has separable τ-degree {model.dim}, expected {expected}."
        )

    m = _splitting_degree(phi, model, max_extension_factor, max_field_bits)
    L = ff.make_extension(p, e * m)

    kern = linalg.kernel(phi.phi_of(a).matrix_on(L), p)
    logger.debug("φ[%s] in F_%i^%i: F_p-dimension %i", a, q, m, len(kern))

    frame = _FqFrame(q, L)
    basis_vecs = frame.basis(list(kern))
    if len(basis_vecs) != expected:
        raise VerificationError(
            f"φ[{a}] has F_q-dimension {len(basis_vecs)} in F_{q}^{m}, "
            f"expected {expected}."
        )

    action = _action_matrix(phi, L, basis_vecs, frame)

    return TorsionModule(
        phi=phi,
        level=a,
        m=m,
        ambient=L,
        basis=tuple(L.from_vector(v) for v in basis_vecs),
        action=action,
        smith=_smith_of_action(q, action),
    )


def torsion_dimension(phi: DrinfeldModule, a: Poly, m: int) -> int:
    """`F_q`-dimension of the roots of ``φ_a`` inside ``F_{q^m}``."""
    p, e = prime_power(phi.q)
    L = ff.make_extension(p, e * m)
    return len(linalg.kernel(phi.phi_of(a).matrix_on(L), p)) // e


Torsion = Union[TorsionModule, KernelModel]


def module_structure(tm: Torsion) -> InvariantFactors:
    """Non-unit invariant factors of ``φ[a]`` as an `A`-module."""
    return tm.factors


def _scalars_through(phi: DrinfeldModule, K: ff.FieldDescriptor, table):
    # F_q inside K, through k, so that it agrees with the lifted matrices
    scalars = ff.scalar_embedding(phi.q, phi.field)
    return K.GF(table[[a.code for a in scalars]])


def _least_root(prime: Poly, K: ff.FieldDescriptor, fq, q: int):
    # Least-coded root of the prime in K; it lies in F_{q^deg}
    f = galois.Poly(fq[list(prime.coeffs)], order="asc")

    cands = K.GF([a.code for a in ff.subfield_elements(K, q**prime.degree)])
    roots = cands[f(cands) == 0]
    if roots.size == 0:
        raise VerificationError(f"{prime!r} has no root in {K}.")
    return K.GF(int(np.min(roots.view(np.ndarray))))


def _residues(phi: DrinfeldModule, prime: Poly, fq, theta, values) -> List[Poly]:
    # Each value lies in F_q(θ); write it as b(θ) with deg b < deg 𝔩
    q = phi.q
    p, e = prime_power(q)
    delta = prime.degree

    omegas = fq[[p**s for s in range(e)]]
    powers = theta ** np.arange(delta)
    span = (powers[:, np.newaxis] * omegas[np.newaxis, :]).reshape(-1)

    sol = linalg.solve(
        ff.coefficient_columns(span), ff.coefficient_columns(values), p
    )
    if sol is None:
        raise VerificationError("Characteristic polynomial is not defined over A/𝔩.")

    return [
        Poly(q, [fp_to_code(sol[t * e : (t + 1) * e, i], p) for t in range(delta)])
        for i in range(len(values))
    ]


def _model_charpoly(
    model: KernelModel, u: SkewPoly, max_extension_factor: int, max_field_bits: int
) -> CharPoly:
    phi, prime = model.phi, model.level
    p, e = prime_power(phi.q)

    # K holds k and A/𝔩
    m = math.lcm(phi.n, prime.degree)
    _check_caps(phi, m, max_extension_factor, max_field_bits)
    K = ff.make_extension(p, e * m)

    table = ff.embedding_table(phi.field, K)

    def lift(mat):
        return K.GF(table[np.asarray(mat.view(np.ndarray), dtype=np.int64)])

    fq = _scalars_through(phi, K, table)
    theta = _least_root(prime, K, fq, phi.q)
    N, r = model.dim, phi.rank

    # The θ-eigenspace of φ_T is a K-form of φ[𝔩] ⊗ K of dimension r
    shifted = lift(model.matrix(phi.phi_T)) - theta * K.GF.Identity(N)
    eigen = shifted.null_space()
    if eigen.shape[0] != r:
        raise VerificationError(
            f"θ-eigenspace of φ_T on φ[{prime}] has dimension {eigen.shape[0]}, "
            f"expected {r}."
        )
    eigen = eigen.row_reduce()

    pivots = [int(np.flatnonzero(row)[0]) for row in eigen.view(np.ndarray)]
    images = lift(model.matrix(u)) @ eigen.T
    restricted = images[pivots, :]

    cp = restricted.characteristic_poly()
    residues = _residues(phi, prime, fq, theta, cp.coeffs[::-1])

    return CharPoly(tuple(residues), "P", 1, prime)


def endo_charpoly_mod(
    tm: Torsion,
    u: SkewPoly,
    max_extension_factor: int = MAX_EXTENSION_FACTOR,
    max_field_bits: int = MAX_FIELD_BITS,
) -> CharPoly:
    """Characteristic polynomial of `u` acting on ``φ[𝔩^e]`` over ``A/𝔩^e``.

    On a :py:class:`KernelModel` of prime level ``𝔩`` it is read off the
    ``θ``-eigenspace of ``φ_T``, ``θ`` the least-coded root of ``𝔩`` in the
    least extension of ``k`` containing ``A/𝔩``. Models of higher level are
    first realised with :py:func:`torsion_space`.

    Parameters
    ----------
    tm : TorsionModule or KernelModel
        Torsion at a level coprime to the characteristic.
    u : SkewPoly
        An endomorphism.
    max_extension_factor, max_field_bits : int
        Caps on the fields built on the way.

    Returns
    -------
    P : CharPoly
        Coefficients reduced modulo the level.

    Raises
    ------
    ValueError
        If the level is not coprime to `𝔭` or `u` is not an endomorphism.
    CapExceededError
        If a field needed is over the caps.
    """
    phi, level = tm.phi, tm.level
    if level is None or level.gcd(phi.prime).degree > 0:
        raise ValueError(f"Level {level!r} is not coprime to 𝔭 = {phi.prime!r}.")
    if not is_endomorphism(phi, u):
        raise ValueError(f"{u!r} is not an endomorphism of {phi}.")

    if isinstance(tm, KernelModel):
        if level.is_irreducible():
            return _model_charpoly(tm, u, max_extension_factor, max_field_bits)
        tm = torsion_space(phi, level, max_extension_factor, max_field_bits)

    gens = tm.generators()
    if len(gens) != phi.rank or any(d != level for d, _ in gens):
        raise VerificationError(
            f"φ[{level}] is not free of rank {phi.rank} over A/({level})."
        )

    q, L = phi.q, tm.ambient
    frame = tm.frame
    mphi = phi.phi_T.matrix_on(L)
    deg = level.degree

    # F_q basis {φ_{T^t}(g_j)}, ordered (j, t)
    basis = []
    for _, g in gens:
        v = g.vector
        for _ in range(deg):
            basis.append(v)
            v = (mphi @ v) % L.p

    images = [u.evaluate(g).vector for _, g in gens]
    coords = frame.coordinates(basis, images)

    mat = [
        [
            Poly(q, [int(c) for c in coords[i * deg : (i + 1) * deg, j]])
            for j in range(phi.rank)
        ]
        for i in range(phi.rank)
    ]

    return CharPoly(tuple(charpoly(mat, q, modulus=level)), "P", 1, level)


def _kernel_field(
    phi: DrinfeldModule, u: SkewPoly, max_extension_factor: int, max_field_bits: int
):
    # Least ambient field holding every root of u
    p, e = prime_power(phi.q)
    model = KernelModel(phi, u)
    m = _splitting_degree(phi, model, max_extension_factor, max_field_bits)

    L = ff.make_extension(p, e * m)
    umat = u.matrix_on(L)
    if len(linalg.kernel(umat, p)) != model.dim * e:
        raise VerificationError(f"ker u does not split in F_{phi.q}^{m}.")

    logger.debug("ker u splits in F_%i^%i", phi.q, m)
    return L, umat


def _intersection_dim(phi, L, umat, level: Poly) -> int:
    lmat = phi.phi_of(level).matrix_on(L)
    return len(linalg.kernel(np.vstack([umat, lmat]), L.p))


def kernel_data(
    phi: DrinfeldModule,
    u: SkewPoly,
    prime: Poly,
    max_extension_factor: int = MAX_EXTENSION_FACTOR,
    max_field_bits: int = MAX_FIELD_BITS,
    method: str = "model",
    _field=None,
):
    """Stabilised `𝔩`-primary part ``U_𝔩`` of ``ker u``.

    Parameters
    ----------
    phi : DrinfeldModule
    u : SkewPoly
        A nonzero endomorphism.
    prime : Poly
        Monic irreducible `𝔩`. May equal `𝔭` only for separable `u`.
    max_extension_factor, max_field_bits : int
        Caps, used by the ``field`` method only.
    method : {"model", "field"}
        ``model`` takes ``dim(φ[𝔩^e] ∩ ker u)`` as the corank of the remainder
        matrix of `u` on ``φ[𝔩^e]``. ``field`` intersects both kernels inside
        the field of definition of ``ker u``.

    Returns
    -------
    e : int
        The first level with ``dim(φ[𝔩^(e+1)] ∩ ker u) = dim(φ[𝔩^e] ∩ ker u)``.
    dim : int
        ``dim_{F_q} U_𝔩``.
    """
    if u.is_zero():
        raise ValueError("kernel_data needs a nonzero endomorphism.")
    if prime == phi.prime and not u.tau_profile().separable:
        raise ValueError("kernel_data at 𝔩 = 𝔭 needs a separable endomorphism.")

    if method == "model":

        def dim_at(level):
            return torsion_model(phi, level).kernel_dim(u)

    elif method == "field":
        _, e_q = prime_power(phi.q)
        L, umat = _field or _kernel_field(
            phi, u, max_extension_factor, max_field_bits
        )

        def dim_at(level):
            return _intersection_dim(phi, L, umat, level) // e_q

    else:
        raise ValueError(f"Unknown method {method!r}.")

    e = 1
    dim = dim_at(prime)
    while True:
        nxt = dim_at(prime ** (e + 1))
        if nxt == dim:
            return e, dim
        e, dim = e + 1, nxt


@dataclass(frozen=True)
class KernelPart:
    """One prime of ``det(u)`` with its valuation and ``dim U_𝔩``."""

    prime: Poly
    valuation: int
    level: int
    dim: int

    @property
    def consistent(self) -> bool:
        return self.valuation * self.prime.degree == self.dim


def kernel_decomposition(
    phi: DrinfeldModule,
    u: SkewPoly,
    det: Poly,
    max_extension_factor: int = MAX_EXTENSION_FACTOR,
    max_field_bits: int = MAX_FIELD_BITS,
    method: str = "model",
) -> List[KernelPart]:
    """Split ``ker u`` along the primes dividing ``det(u)``.

    `u` must be separable; then ``Σ dim U_𝔩 = deg_τ(u)``.
    """
    if not u.tau_profile().separable:
        raise ValueError("kernel_decomposition needs a separable endomorphism.")

    field = None
    if method == "field":
        field = _kernel_field(phi, u, max_extension_factor, max_field_bits)

    parts = []
    for prime, v in det.factors():
        level, dim = kernel_data(
            phi,
            u,
            prime,
            max_extension_factor,
            max_field_bits,
            method=method,
            _field=field,
        )
        parts.append(KernelPart(prime, v, level, dim))

    return parts
