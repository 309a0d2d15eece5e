"""Arithmetic in A = F_q[T]

Polynomials over `F_q` are :py:class:`galois.Poly` objects over the canonical
field `F_q` of :py:mod:`drinfeld_rh.core.ff`, wrapped so that they carry `q`
and expose their coefficients as *codes*. The code of an element of `F_q` is
its integer representation in :py:mod:`galois`: the base-``p`` digits of the
code are its coefficients over `F_p`, constant term least significant. For a
prime ``q`` a code is simply the residue in ``[0, q)``.

Ideals of `A` are always represented by their monic generator.

Classes
=======
- :py:class:`Poly`
- :py:class:`InvariantFactors`
- :py:class:`SmithForm`

Functions
=========
- :py:func:`scalar_field`
- :py:func:`scalar_inverse`
- :py:func:`irreducibles`
- :py:func:`crt_reconstruct`
- :py:func:`v_inf`
- :py:func:`smith_form`
- :py:func:`invariant_factors`
- :py:func:`charpoly`
"""

import functools
import itertools
from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

import galois


def is_prime(n: int) -> bool:
    return n >= 2 and galois.is_prime(n)


@functools.lru_cache(maxsize=None)
def prime_power(q: int) -> Tuple[int, int]:
    """Split a prime power into ``(p, e)`` with ``q = p^e``.

    Raises
    ------
    ValueError
        If `q` is not a prime power.
    """
    if q < 2 or not galois.is_prime_power(q):
        raise ValueError(f"{q} is not a prime power.")

    primes, exponents = galois.factors(q)
    return int(primes[0]), int(exponents[0])


def digits(code: int, base: int, length: int) -> List[int]:
    """Base-`base` digits of `code`, least significant first, zero padded."""
    out = []
    for _ in range(length):
        code, d = divmod(code, base)
        out.append(d)
    return out


class _Infinity:
    """Valuation of zero: larger than every integer, absorbing under addition."""

    __slots__ = ()

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITY")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INFINITY = _Infinity()


@functools.lru_cache(maxsize=None)
def scalar_field(q: int) -> type:
    """The :py:mod:`galois` field class of `F_q` with the canonical modulus."""
    # Deferred: ff builds its fields with the helpers above
    from .ff import make_extension

    p, e = prime_power(q)
    return make_extension(p, e).GF


def scalar_inverse(q: int, c: int) -> int:
    """Code of the inverse of the `F_q` element with code `c`."""
    if c == 0:
        raise ZeroDivisionError("Inverse of zero in F_q.")
    return int(scalar_field(q)(c) ** -1)


class Poly:
    """A polynomial in `F_q[T]`.

    Parameters
    ----------
    q : int
        Size of the coefficient field.
    coeffs : sequence of int
        Coefficient codes, ascending in `T`. For a prime `q` they are reduced
        modulo `q`; otherwise they must lie in ``[0, q)``. Trailing zeros are
        stripped so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("q", "coeffs", "_poly")

    def __init__(self, q: int, coeffs=()):
        GF = scalar_field(q)
        c = []
        for x in coeffs:
            x = int(x)
            if GF.degree == 1:
                x %= q
            elif not 0 <= x < q:
                raise ValueError(f"{x} is not a valid code for F_{q}.")
            c.append(x)
        while c and c[-1] == 0:
            c.pop()

        self.q = q
        self.coeffs: Tuple[int, ...] = tuple(c)
        self._poly = None

    @classmethod
    def from_galois(cls, q: int, poly: galois.Poly) -> "Poly":
        """Wrap a :py:class:`galois.Poly` over :py:func:`scalar_field` ``(q)``."""
        out = cls(q, [int(c) for c in poly.coeffs[::-1]])
        out._poly = poly
        return out

    @property
    def poly(self) -> galois.Poly:
        """The underlying :py:class:`galois.Poly`."""
        if self._poly is None:
            self._poly = galois.Poly(
                self.coeffs or (0,), field=scalar_field(self.q), order="asc"
            )
        return self._poly

    @classmethod
    def T(cls, q: int) -> "Poly":
        """The variable `T`."""
        return cls(q, (0, 1))

    @classmethod
    def constant(cls, q: int, c: int) -> "Poly":
        return cls(q, (c,))

    @classmethod
    def monomial(cls, q: int, degree: int, c: int = 1) -> "Poly":
        return cls(q, [0] * degree + [c])

    @classmethod
    def parse(cls, q: int, text: str) -> "Poly":
        """Parse the textual form, e.g. ``"1,1,0,1"`` for ``1 + T + T^3``."""
        text = text.strip()
        if not text:
            return cls(q)
        return cls(q, [int(t) for t in text.split(",")])

    @property
    def field(self) -> type:
        return scalar_field(self.q)

    @property
    def degree(self) -> int:
        """Degree in `T`, ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def is_monic(self) -> bool:
        return self.lead == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.constant(self.q, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def _coerce(self, other) -> "Poly":
        if isinstance(other, int):
            return Poly.constant(self.q, other)
        if not isinstance(other, Poly):
            raise TypeError(f"Cannot combine Poly with {type(other).__name__}.")
        if other.q != self.q:
            raise ValueError(f"Mismatched base fields: q={self.q} and q={other.q}.")
        return other

    def _wrap(self, poly: galois.Poly) -> "Poly":
        return Poly.from_galois(self.q, poly)

    def __add__(self, other):
        return self._wrap(self.poly + self._coerce(other).poly)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.poly)

    def __sub__(self, other):
        return self._wrap(self.poly - self._coerce(other).poly)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return self._wrap(self.poly * self._coerce(other).poly)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        """Multiply by the scalar with code `c`."""
        # A bare int would be read by galois as repeated addition
        return self * Poly.constant(self.q, c)

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("Polynomial division by zero.")
        quo, rem = divmod(self.poly, other.poly)
        return self._wrap(quo), self._wrap(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("Negative powers are not defined in F_q[T].")
        return self._wrap(self.poly**k)

    def powmod(self, k: int, modulus: "Poly") -> "Poly":
        """``self ** k`` reduced modulo `modulus`."""
        return self._wrap(pow(self.poly, k, self._coerce(modulus).poly))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(scalar_inverse(self.q, self.lead))

    def gcd(self, other) -> "Poly":
        """Monic greatest common divisor (zero if both inputs are zero)."""
        other = self._coerce(other)
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        return self._wrap(galois.gcd(self.poly, other.poly))

    def xgcd(self, other):
        """Extended Euclid.

        Returns
        -------
        g, s, t : Poly
            Monic ``g = gcd(self, other)`` with ``g = s*self + t*other``.
        """
        other = self._coerce(other)
        zero = Poly(self.q)
        if self.is_zero() and other.is_zero():
            return zero, zero, zero

        g, s, t = galois.egcd(self.poly, other.poly)
        return self._wrap(g), self._wrap(s), self._wrap(t)

    def evaluate(self, x: int) -> int:
        """Evaluate at the scalar with code `x`."""
        return int(self.poly(self.field(x)))

    def valuation(self, prime: "Poly"):
        """Exact power of `prime` dividing this polynomial.

        Returns :py:data:`INFINITY` for the zero polynomial.
        """
        if self.is_zero():
            return INFINITY
        if prime.degree < 1:
            raise ValueError("Valuation at a unit is undefined.")

        v, a = 0, self
        while True:
            quo, rem = divmod(a, prime)
            if rem:
                return v
            a, v = quo, v + 1

    def is_irreducible(self) -> bool:
        d = self.degree
        if d < 1:
            return False
        return d == 1 or self.poly.is_irreducible()

    def factors(self) -> List[Tuple["Poly", int]]:
        """Monic irreducible factors with multiplicities, in canonical order."""
        if self.degree < 1:
            return []
        primes, mults = self.monic().poly.factors()
        out = [(self._wrap(f), int(k)) for f, k in zip(primes, mults)]
        return sorted(out, key=lambda fk: (fk[0].degree, int(fk[0].poly)))

    def __str__(self):
        return ",".join(str(c) for c in self.coeffs) if self.coeffs else "0"

    def __repr__(self):
        if not self.coeffs:
            return f"Poly(q={self.q}, 0)"

        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")

        return f"Poly(q={self.q}, {' + '.join(terms)})"


def v_inf(numerator: Poly, denominator: Poly):
    """The valuation at infinity of ``numerator / denominator``.

    Parameters
    ----------
    numerator, denominator : Poly
        The fraction. The denominator must be nonzero.

    Returns
    -------
    v : int or INFINITY
        ``deg(denominator) - deg(numerator)``, and :py:data:`INFINITY` for a
        zero numerator.
    """
    if denominator.is_zero():
        raise ValueError("Zero denominator in v_inf.")

    if numerator.is_zero():
        return INFINITY

    return denominator.degree - numerator.degree


def irreducibles(q: int, max_degree: int = None):
    """Stream the monic irreducible polynomials of `F_q[T]` in canonical order.

    The order is by ascending degree, then by the coefficient sequence read as
    a base-`q` integer with the constant term least significant.

    Parameters
    ----------
    q : int
        A prime power.
    max_degree : int, optional
        Stop after this degree. The stream is infinite by default.

    Yields
    ------
    poly : Poly
    """
    GF = scalar_field(q)

    for deg in itertools.count(1):
        if max_degree is not None and deg > max_degree:
            return

        # Monic of degree deg: integer representations q^deg + code
        for code in range(q**deg):
            f = galois.Poly.Int(q**deg + code, field=GF)
            if deg == 1 or f.is_irreducible():
                yield Poly.from_galois(q, f)


def crt_reconstruct(residues) -> Poly:
    """Reconstruct a polynomial from its residues modulo coprime moduli.

    Parameters
    ----------
    residues : sequence of (Poly, Poly)
        Pairs ``(residue, modulus)``. Moduli must be monic, nonconstant and
        pairwise coprime, each residue reduced modulo its modulus.

    Returns
    -------
    poly : Poly
        The unique polynomial of degree less than the sum of the degrees of the
        moduli with the given residues.
    """
    residues = list(residues)
    if not residues:
        raise ValueError("No residues given.")

    for res, mod in residues:
        if mod.degree < 1 or not mod.is_monic():
            raise ValueError(f"Modulus {mod!r} must be monic and nonconstant.")
        if res.degree >= mod.degree:
            raise ValueError(f"Residue {res!r} is not reduced modulo {mod!r}.")

    for (_, m1), (_, m2) in itertools.combinations(residues, 2):
        if m1.gcd(m2).degree > 0:
            raise ValueError(f"Moduli {m1!r} and {m2!r} are not coprime.")

    q = residues[0][1].q
    x = galois.crt([res.poly for res, _ in residues], [mod.poly for _, mod in residues])
    return Poly.from_galois(q, x)


@dataclass(frozen=True)
class InvariantFactors:
    """The divisibility chain ``d_1 | d_2 | ... | d_l`` of a module over `A`."""

    factors: Tuple[Poly, ...]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    def nonunit(self) -> "InvariantFactors":
        """Drop the unit factors."""
        return InvariantFactors(tuple(f for f in self.factors if not f.is_unit()))

    def product(self, q: int) -> Poly:
        """Generator of the fitting ideal."""
        out = Poly.constant(q, 1)
        for f in self.factors:
            out = out * f
        return out

    def __str__(self):
        return "(" + ", ".join(repr(f) for f in self.factors) + ")"


class SmithForm(NamedTuple):
    """Smith normal form ``U @ M @ V = D`` with unimodular ``U`` and ``V``."""

    diagonal: List[Poly]
    U: List[List[Poly]]
    U_inv: List[List[Poly]]
    V: List[List[Poly]]


def identity(n: int, q: int) -> List[List[Poly]]:
    one, zero = Poly.constant(q, 1), Poly(q)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def smith_form(matrix, q: int) -> SmithForm:
    """Smith normal form of a matrix over `F_q[T]`.

    The pivot is always a nonzero entry of minimal degree in the remaining
    submatrix, ties broken by the least ``(row, column)`` index. Diagonal
    entries are made monic.

    Parameters
    ----------
    matrix : list of list of Poly
        Rectangular matrix.
    q : int
        Size of the coefficient field.

    Returns
    -------
    snf : SmithForm
    """
    a = [list(row) for row in matrix]
    nrow = len(a)
    ncol = len(a[0]) if nrow else 0

    U, Ui, V = identity(nrow, q), identity(nrow, q), identity(ncol, q)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):
        # row_i += c * row_j, and the inverse operation on the columns of Ui
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]
        for row in Ui:
            row[j] = row[j] - c * row[i]

    def scale_row(i, u):
        a[i] = [x.scale(u) for x in a[i]]
        U[i] = [x.scale(u) for x in U[i]]
        uinv = scalar_inverse(q, u)
        for row in Ui:
            row[i] = row[i].scale(uinv)

    def swap_cols(i, j):
        for mat in (a, V):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_col(i, j, c):
        # col_i += c * col_j
        for mat in (a, V):
            for row in mat:
                row[i] = row[i] + c * row[j]

    t = 0
    while t < min(nrow, ncol):
        pivot = None
        for i in range(t, nrow):
            for j in range(t, ncol):
                if a[i][j] and (pivot is None or a[i][j].degree < best):
                    pivot, best = (i, j), a[i][j].degree

        if pivot is None:
            break

        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])

        # Clear the pivot row and column. A nonzero remainder has smaller
        # degree than the pivot and is picked up by the next pivot search.
        dirty = False
        for i in range(t + 1, nrow):
            if a[i][t]:
                quo, rem = divmod(a[i][t], a[t][t])
                add_row(i, t, -quo)
                dirty |= bool(rem)
        for j in range(t + 1, ncol):
            if a[t][j]:
                quo, rem = divmod(a[t][j], a[t][t])
                add_col(j, t, -quo)
                dirty |= bool(rem)

        if dirty:
            continue

        # Enforce divisibility of the rest of the matrix by the pivot
        offender = next(
            (
                i
                for i in range(t + 1, nrow)
                for j in range(t + 1, ncol)
                if a[i][j] % a[t][t]
            ),
            None,
        )
        if offender is not None:
            add_row(t, offender, Poly.constant(q, 1))
            continue

        scale_row(t, scalar_inverse(q, a[t][t].lead))
        t += 1

    diagonal = [a[i][i] for i in range(min(nrow, ncol))]

    return SmithForm(diagonal, U, Ui, V)


def invariant_factors(matrix, q: int = None) -> InvariantFactors:
    """Invariant factors of a matrix over `F_q[T]`.

    Unit factors are kept, so the number of factors equals the rank.

    Parameters
    ----------
    matrix : list of list of Poly
        Rectangular matrix; an empty matrix gives an empty chain.
    q : int, optional
        Size of the coefficient field, inferred from the entries if omitted.
    """
    if not matrix or not matrix[0]:
        return InvariantFactors(())

    if q is None:
        q = matrix[0][0].q

    snf = smith_form(matrix, q)
    return InvariantFactors(tuple(d for d in snf.diagonal if d))


def _dot(row, col):
    acc = Poly(row[0].q) if row else None
    for x, y in zip(row, col):
        acc = acc + x * y
    return acc


def charpoly(matrix, q: int, modulus: Poly = None) -> List[Poly]:
    """Characteristic polynomial ``det(x I - M)`` of a square matrix.

    Uses the division-free Berkowitz recurrence, so it works over the residue
    rings ``A/(modulus)`` as well as over `A`.

    Parameters
    ----------
    matrix : list of list of Poly
        Square matrix.
    q : int
        Size of the coefficient field.
    modulus : Poly, optional
        Reduce all entries and results modulo this polynomial.

    Returns
    -------
    coeffs : list of Poly
        Coefficients ascending in ``x``; the last one is 1.
    """

    def red(f):
        return f % modulus if modulus is not None else f

    n = len(matrix)
    one = Poly.constant(q, 1)
    if n == 0:
        return [one]

    a = [[red(x) for x in row] for row in matrix]

    # Coefficients highest degree first
    vect = [one, red(-a[0][0])]

    for k in range(1, n):
        row = a[k][:k]
        col = [a[i][k] for i in range(k)]
        lead = [r[:k] for r in a[:k]]

        toeplitz = [one, red(-a[k][k])]
        w = col
        for _ in range(2, k + 2):
            toeplitz.append(red(-_dot(row, w)))
            w = [red(_dot(lead[i], w)) for i in range(k)]

        new = []
        for i in range(k + 2):
            acc = Poly(q)
            for j in range(min(i, k) + 1):
                acc = acc + toeplitz[i - j] * vect[j]
            new.append(red(acc))
        vect = new

    return vect[::-1]
