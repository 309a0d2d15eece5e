from fractions import Fraction

import pytest

from drinfeld_rh.analysis import rh_verify
from drinfeld_rh.analysis.endo import CharPoly
from drinfeld_rh.core.errors import VerificationError


def X(text, kind="P"):
    return CharPoly.parse(2, text, kind)


@pytest.mark.parametrize(
    "m, rho",
    [("1,1|1|1", Fraction(1, 2)), ("1,0,1|1", Fraction(2)), ("0,1|1", Fraction(1))],
)
def test_abs_star_exponent(m, rho):
    assert rh_verify.abs_star_exponent(X(m, "m")) == rho


def test_abs_star_exponent_zero_constant():
    with pytest.raises(ValueError):
        rh_verify.abs_star_exponent(X("0|1", "m"))


@pytest.mark.parametrize(
    "P, slopes",
    [
        ("1,1|1|1", [(Fraction(1, 2), 2)]),
        ("0,1|1", [(Fraction(1), 1)]),
        ("0,0,1|0,1|1", [(Fraction(1), 2)]),
        ("0,0,1|1|1", [(Fraction(1), 2)]),
        ("1|0,0,1|1", [(Fraction(-2), 1), (Fraction(2), 1)]),
        ("1|0|1", [(Fraction(0), 2)]),
    ],
)
def test_newton_slopes(P, slopes):
    assert rh_verify.newton_slopes(X(P)) == slopes


def test_fixture_rank2(phi_rank2):
    P = X("1,1|1|1")
    report = rh_verify.check_rh(phi_rank2, P, X("1,1|1|1", "m"))

    assert report.passed and report.consistent
    assert report.rho == Fraction(1, 2)
    assert report.slopes == [(Fraction(1, 2), 2)]
    assert report.items["newton"].witness == "1/2x2"
    assert report.items["a0"].witness == "a0=1*p^1"
    assert list(report.to_dict()) == ["bounds", "a0", "abs", "newton"]


def test_fixture_rank1(phi_rank1):
    P = X("1,0,1|1")
    report = rh_verify.check_rh(phi_rank1, P, X("1,0,1|1", "m"))
    assert report.passed
    assert report.rho == Fraction(2)
    assert report.items["a0"].witness == "a0=1*p^2"


def test_bound_violation(phi_rank2):
    bad = X("1,1|0,1|1")
    report = rh_verify.check_rh(phi_rank2, bad, X("1,1|1|1", "m"))

    assert not report.items["bounds"].passed
    assert report.items["bounds"].witness.startswith("i=1")
    assert not report.items["newton"].passed
    assert not report.passed


def test_a0_violation(phi_rank2):
    report = rh_verify.check_rh(phi_rank2, X("0,1|1|1"), X("0,1|1|1", "m"))
    assert not report.items["a0"].passed


def test_abs_violation(phi_rank2):
    report = rh_verify.check_rh(phi_rank2, X("1,1|1|1"), X("1,1|1", "m"))
    assert not report.items["abs"].passed
    assert report.rho == Fraction(1)


def test_check_rh_needs_polynomials(phi_rank2):
    with pytest.raises(ValueError):
        rh_verify.check_rh(phi_rank2, None, None)


def test_characteristic_must_divide_n(phi_rank2, monkeypatch):
    monkeypatch.setattr(phi_rank2, "d", 2)
    with pytest.raises(VerificationError):
        rh_verify.check_rh(phi_rank2, X("1,1|1|1"), X("1,1|1|1", "m"))


def test_item_dict():
    assert rh_verify.RHItem(True, "ok").to_dict() == {"pass": True, "witness": "ok"}
    assert rh_verify.RHItem(False, "cap", skipped=True).to_dict() == {
        "pass": False,
        "witness": "cap",
        "skipped": True,
    }


def test_bounds_ignore_degree_at_one(phi_rank2):
    # P(T, 1) = 1 has degree 0 != n, yet every coefficient is within bounds
    report = rh_verify.check_rh(phi_rank2, X("1|1|1"), X("1|1|1", "m"))
    assert report.items["bounds"].passed
    assert report.items["bounds"].witness == "deg P(T,1)=0"
    assert not report.items["a0"].passed
