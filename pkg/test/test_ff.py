import numpy as np
import pytest
from hypothesis import given, strategies as st

from drinfeld_rh.core import ff
from drinfeld_rh.core.errors import CapExceededError
from drinfeld_rh.core.polyring import Poly


@pytest.mark.parametrize(
    "p, s, modulus",
    [(2, 1, (0, 1)), (2, 2, (1, 1, 1)), (2, 3, (1, 1, 0, 1)), (3, 2, (1, 0, 1))],
)
def test_make_extension_modulus(p, s, modulus):
    field = ff.make_extension(p, s)
    assert field.modulus == modulus
    assert field.size == p**s


def test_make_extension_errors():
    with pytest.raises(ValueError):
        ff.make_extension(4, 1)
    with pytest.raises(ValueError):
        ff.make_extension(2, 0)
    with pytest.raises(CapExceededError) as exc:
        ff.make_extension(2, 25)
    assert exc.value.degree == 25


def test_descriptor_text(F4):
    assert str(F4) == "p=2,s=2,mod=1,1,1"
    assert ff.FieldDescriptor.parse(str(F4)) is F4

    with pytest.raises(ValueError):
        ff.FieldDescriptor.parse("p=2,s=2,mod=1,0,1")
    with pytest.raises(ValueError):
        ff.FieldDescriptor.parse("garbage")


def test_codes(F8):
    assert [a.code for a in F8.elements()] == list(range(8))
    assert F8.parse_element("0,1,1").code == 6
    with pytest.raises(ValueError):
        F8.from_code(8)


def test_pow_q(F4, F8):
    z = F4.gen
    assert ff.pow_q(z, 2) == z + 1
    assert ff.pow_q(F4.one(), 2) == F4.one()

    w = F8.gen
    assert ff.pow_q(w, 2) == F8.parse_element("0,0,1")

    with pytest.raises(ValueError):
        ff.pow_q(w, 3)


def test_embed(F2, F4, F16):
    assert ff.embed(F2.one(), F4) == F4.one()

    z = F4.gen
    ez = ff.embed(z, F16)
    assert ez * ez + ez + 1 == F16.zero()
    assert ff.embed(z * (z + 1), F16) == F16.one()

    with pytest.raises(ValueError):
        ff.embed(z, ff.make_extension(2, 3))


def test_embedding_through_prime_tower(F2, F4, F16):
    # Prime field elements have a single embedding, so the tower commutes
    for a in F2.elements():
        assert ff.embed(ff.embed(a, F4), F16) == ff.embed(a, F16)


def test_mixed_fields(F4, F8):
    with pytest.raises(TypeError):
        F4.gen + F8.gen


def test_inverse(F8):
    with pytest.raises(ZeroDivisionError):
        F8.zero().inverse()
    for a in list(F8.elements())[1:]:
        assert a * a.inverse() == F8.one()
        assert a**-1 == a.inverse()


@pytest.mark.parametrize("a_text, q, expected", [("1", 2, "1,1"), ("0,1", 2, "1,1,1")])
def test_minpoly_over_subfield(F4, a_text, q, expected):
    a = F4.parse_element(a_text)
    assert ff.minpoly_over_subfield(a, q) == Poly.parse(q, expected)


def test_minpoly_of_zero(F8):
    assert ff.minpoly_over_subfield(F8.zero(), 2) == Poly.T(2)


def test_minpoly_over_f4(F16):
    # Over F_4 every element of F_16 has degree at most 2
    for a in F16.elements():
        m = ff.minpoly_over_subfield(a, 4)
        assert m.degree in (1, 2)
        assert m.is_irreducible()


def test_subfield_elements(F16):
    sub = ff.subfield_elements(F16, 4)
    assert len(sub) == 4
    assert all(a**4 == a for a in sub)
    assert [a.code for a in sub] == sorted(a.code for a in sub)

    with pytest.raises(ValueError):
        ff.subfield_elements(F16, 8)


def test_frobenius_matrix(F16):
    mat = ff.frobenius_matrix(F16)
    with pytest.raises(ValueError):
        mat[0, 0] = 1

    for a in F16.elements():
        assert F16.from_vector(mat @ a.vector % 2) == a**2


def test_multiplication_matrix(F8):
    a = F8.parse_element("1,0,1")
    mat = ff.multiplication_matrix(a)
    for b in F8.elements():
        assert F8.from_vector(mat @ b.vector % 2) == a * b


def test_scalar_embedding(F16):
    images = ff.scalar_embedding(4, F16)
    assert len(images) == 4
    assert images[0] == F16.zero() and images[1] == F16.one()
    assert {ff.scalar_codes(4, F16)[a.code] for a in images} == {0, 1, 2, 3}


F9 = ff.make_extension(3, 2)
F8_ = ff.make_extension(2, 3)


@pytest.mark.parametrize("field", [F8_, F9])
@given(data=st.data())
def test_field_axioms(field, data):
    code = st.integers(min_value=0, max_value=field.size - 1)
    a, b, c = (field.from_code(data.draw(code)) for _ in range(3))

    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == field.zero()
    if b:
        assert (a / b) * b == a


@given(st.integers(min_value=0, max_value=8))
def test_frobenius_is_additive(code):
    a = F9.from_code(code)
    b = F9.from_code((7 * code + 3) % 9)
    assert ff.pow_q(a + b, 3) == ff.pow_q(a, 3) + ff.pow_q(b, 3)
    assert np.array_equal(ff.embed(a, F9).vector, a.vector)


def test_embedding_table(F2, F4, F16):
    table = ff.embedding_table(F4, F16)
    assert table.shape == (4,)
    assert list(table[:2]) == [0, 1]
    for code in range(4):
        assert table[code] == ff.embed(F4.from_code(code), F16).code
    assert not table.flags.writeable

    assert list(ff.embedding_table(F2, F16)) == [0, 1]
    assert list(ff.embedding_table(F4, F4)) == [0, 1, 2, 3]

    with pytest.raises(ValueError):
        ff.embedding_table(F16, F4)


def test_coefficient_columns(F8):
    # x^2 + 1 and x, ascending coefficients as columns
    cols = ff.coefficient_columns(F8.GF([5, 2]))
    assert cols.tolist() == [[1, 0], [0, 1], [1, 0]]
