import pytest
from hypothesis import given, strategies as st

from drinfeld_rh.core import drinfeld, ff
from drinfeld_rh.core.drinfeld import DrinfeldModule
from drinfeld_rh.core.polyring import Poly
from drinfeld_rh.core.skew import SkewPoly


def P(text):
    return Poly.parse(2, text)


def test_phi_of(phi_rank2, F2):
    assert phi_rank2.phi_of(P("0,1")) == phi_rank2.phi_T
    assert phi_rank2.phi_of(P("0,0,1")) == SkewPoly.parse(2, F2, "1;0;1;0;1")
    assert phi_rank2.phi_of(P("1")) == SkewPoly.constant(2, F2, 1)

    with pytest.raises(ValueError):
        phi_rank2.phi_of(Poly.T(3))


@given(
    st.lists(st.integers(0, 1), max_size=4), st.lists(st.integers(0, 1), max_size=4)
)
def test_phi_is_ring_homomorphism(a, b):
    phi = DrinfeldModule.parse("q=2,n=2,g=1,1;0,1;1")
    a, b = Poly(2, a), Poly(2, b)
    assert phi.phi_of(a * b) == phi.phi_of(a) * phi.phi_of(b)
    assert phi.phi_of(a + b) == phi.phi_of(a) + phi.phi_of(b)


@pytest.mark.parametrize(
    "text, prime, d",
    [
        ("q=2,n=1,g=1;1;1", "1,1", 1),
        ("q=2,n=2,g=0,1;1", "1,1,1", 2),
        ("q=2,n=1,g=0;1", "0,1", 1),
    ],
)
def test_characteristic(text, prime, d):
    assert drinfeld.characteristic(DrinfeldModule.parse(text)) == (P(prime), d)


def test_gamma(F4):
    phi = DrinfeldModule.parse("q=2,n=2,g=0,1;1")
    g0 = phi.g[0]
    assert phi.gamma(P("0,1")) == g0
    assert phi.gamma(P("0,0,1")) == g0 * g0
    assert phi.gamma(P("1")) == F4.one()
    assert phi.gamma(phi.prime).is_zero()


@pytest.mark.parametrize(
    "text, height",
    [("q=2,n=1,g=1;1;1", 1), ("q=2,n=1,g=0;0;1", 2), ("q=2,n=2,g=1;1", 1)],
)
def test_height(text, height):
    assert drinfeld.height(DrinfeldModule.parse(text)) == height


def test_motive_coordinates(phi_rank2, F2):
    one, zero = F2.one(), F2.zero()
    tau = SkewPoly.tau(2, F2)

    assert phi_rank2.motive_coordinates(tau) == ((), (one,))
    assert phi_rank2.motive_coordinates(phi_rank2.phi_T) == ((zero, one), ())
    assert phi_rank2.motive_coordinates(tau**3) == ((one, one), (zero, one))


@given(st.lists(st.integers(0, 15), max_size=8))
def test_motive_round_trip(codes):
    phi = DrinfeldModule.parse("q=4,n=2,g=0,1;0,0,1;1")
    u = SkewPoly(4, phi.field, [phi.field.from_code(c) for c in codes])
    coords = phi.motive_coordinates(u)
    assert len(coords) == phi.rank
    assert all(len(c) == 0 or c[-1] for c in coords)
    assert phi.motive_reconstruct(coords) == u


def test_invalid_modules(F2):
    with pytest.raises(ValueError):
        DrinfeldModule(2, 1, [1, 0])
    with pytest.raises(ValueError):
        DrinfeldModule(2, 1, [1])
    with pytest.raises(ValueError):
        DrinfeldModule(2, 0, [1, 1])
    with pytest.raises(ValueError):
        DrinfeldModule.parse("q=2,g=1;1")


def test_text_form(phi_rank2):
    assert str(phi_rank2) == "q=2,n=1,g=1;1;1"
    assert DrinfeldModule.parse(str(phi_rank2)) == phi_rank2


def test_frobenius_is_central(phi_rank1):
    pi = phi_rank1.frobenius
    assert pi == SkewPoly.tau(2, phi_rank1.field, 2)
    for a in phi_rank1.field.elements():
        assert pi * a == a * pi


def test_scalar(phi_rank1):
    F16 = ff.make_extension(2, 4)
    phi = DrinfeldModule(4, 2, [F16.gen, 1])
    assert phi.scalar(0).is_zero()
    assert phi.scalar(1) == F16.one()
    assert len({phi.scalar(c) for c in range(4)}) == 4
    assert phi_rank1.scalar(1) == phi_rank1.field.one()
