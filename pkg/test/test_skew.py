import numpy as np
import pytest
from hypothesis import given, strategies as st

from drinfeld_rh.core import ff
from drinfeld_rh.core.skew import SkewPoly, TauProfile

F4 = ff.make_extension(2, 2)
F16 = ff.make_extension(2, 4)


def skew_f4(max_degree=4):
    codes = st.lists(st.integers(min_value=0, max_value=3), max_size=max_degree + 1)
    return codes.map(lambda c: SkewPoly(2, F4, [F4.from_code(x) for x in c]))


def S(field, text, q=2):
    return SkewPoly.parse(q, field, text)


def test_commutation_rule():
    z = F4.gen
    tau = SkewPoly.tau(2, F4)
    assert tau * SkewPoly.constant(2, F4, z) == SkewPoly(2, F4, [0, z + 1])


def test_square_over_f2(F2):
    u = S(F2, "1;1;1")
    assert u * u == S(F2, "1;0;1;0;1")
    assert u**2 == u * u


def test_identity(F2):
    u = S(F2, "1;0;1")
    one = SkewPoly.constant(2, F2, 1)
    assert one * u == u == u * one


def test_right_divmod(F2):
    quo, rem = SkewPoly.tau(2, F2, 3).right_divmod(S(F2, "1;1;1"))
    assert quo == S(F2, "1;1")
    assert rem == S(F2, "1")

    u = S(F2, "1;1;1")
    quo, rem = (u * u).right_divmod(u)
    assert quo == u and rem.is_zero()

    with pytest.raises(ZeroDivisionError):
        u.right_divmod(SkewPoly(2, F2))


def test_evaluate(F2, F8):
    u = S(F2, "1;1;1")
    theta = F8.gen
    assert u.evaluate(theta).is_zero()
    assert u.evaluate(F8.zero()).is_zero()
    assert SkewPoly.constant(2, F2, 1).evaluate(theta) == theta


@pytest.mark.parametrize(
    "text, profile",
    [("0;0;1;0;1", (4, 2, False)), ("1;1;1", (2, 0, True)), ("1", (0, 0, True))],
)
def test_tau_profile(F2, text, profile):
    assert S(F2, text).tau_profile() == TauProfile(*profile)


def test_tau_profile_of_zero(F2):
    with pytest.raises(ValueError):
        SkewPoly(2, F2).tau_profile()


def test_field_checks(F2, F8):
    with pytest.raises(ValueError):
        SkewPoly(4, F8, [1])
    with pytest.raises(TypeError):
        SkewPoly(2, F2, [F8.gen])
    with pytest.raises(TypeError):
        S(F2, "1;1") + S(F8, "1;1")
    with pytest.raises(ValueError):
        SkewPoly(2, F4, [1]) + SkewPoly(4, F4, [1])


def test_text_form():
    u = SkewPoly(2, F4, [F4.gen, 0, 1])
    assert str(u) == "0,1;0,0;1,0"
    assert SkewPoly.parse(2, F4, str(u)) == u


@given(skew_f4(), skew_f4(), skew_f4())
def test_ring_laws(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert u * (v + w) == u * v + u * w
    assert (u + v) * w == u * w + v * w
    assert u - u == SkewPoly(2, F4)


@given(skew_f4(), skew_f4(3))
def test_division_invariant(u, d):
    if d.is_zero():
        return
    quo, rem = u.right_divmod(d)
    assert quo * d + rem == u
    assert rem.degree < d.degree


@given(skew_f4(3), skew_f4(3), st.integers(min_value=0, max_value=15))
def test_action_is_composition(u, v, code):
    x = F16.from_code(code)
    assert (u * v).evaluate(x) == u.evaluate(v.evaluate(x))


@given(skew_f4(3), st.integers(min_value=0, max_value=15))
def test_matrix_on(u, code):
    x = F16.from_code(code)
    mat = u.matrix_on(F16)
    assert np.array_equal(mat @ x.vector % 2, u.evaluate(x).vector)


@given(skew_f4(3), skew_f4(3))
def test_degree_is_additive(u, v):
    if u and v:
        assert (u * v).degree == u.degree + v.degree


def test_conjugate():
    z = F4.gen
    u = SkewPoly(2, F4, [z, 1])
    assert u.conjugate(0) == u
    assert u.conjugate(1) == SkewPoly(2, F4, [z + 1, 1])
    assert u.conjugate(2) == u

    # τ u = u.conjugate(1) τ
    tau = SkewPoly.tau(2, F4)
    assert tau * u == u.conjugate(1) * tau


def test_separable_part(F2):
    assert S(F2, "0;0;1;1").separable_part() == S(F2, "1;1")
    assert S(F2, "1;1").separable_part() == S(F2, "1;1")


@given(skew_f4())
def test_separable_part_factorisation(u):
    if u.is_zero():
        return
    h = u.tau_profile().height
    v = u.separable_part()
    assert v.tau_profile().separable
    assert v * SkewPoly.tau(2, F4, h) == u
