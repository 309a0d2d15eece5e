import time

import pytest

from drinfeld_rh.analysis import frobenius
from drinfeld_rh.analysis.endo import CharPoly
from drinfeld_rh.core.drinfeld import DrinfeldModule
from drinfeld_rh.core.errors import CapExceededError, VerificationError
from drinfeld_rh.core.polyring import Poly
from drinfeld_rh.processing import sampling


def P(text):
    return Poly.parse(2, text)


def X(text):
    return CharPoly.parse(2, text)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("q=2,n=1,g=1;1;1", "1,1|1|1"),
        ("q=2,n=2,g=1;1", "1,0,1|1"),
        ("q=2,n=1,g=0;1", "0,1|1"),
    ],
)
def test_direct(text, expected):
    P_pi, m, det = frobenius.frobenius_charpoly_direct(DrinfeldModule.parse(text))
    assert P_pi == X(expected)
    assert m.kind == "m"


def test_crt(phi_rank2, phi_rank1):
    P_crt, primes, skipped = frobenius.frobenius_charpoly_crt(phi_rank2)
    assert P_crt == X("1,1|1|1")
    assert primes == [P("0,1"), P("1,1,1")]
    assert skipped == []

    P_crt, primes, _ = frobenius.frobenius_charpoly_crt(phi_rank1)
    assert P_crt == X("1,0,1|1")
    assert primes == [P("0,1"), P("1,1,1")]


def test_crt_runs_out_of_primes(phi_rank2):
    # Only T is usable inside F_2, and n + 1 = 2
    with pytest.raises(CapExceededError) as err:
        frobenius.frobenius_charpoly_crt(phi_rank2, max_field_bits=1)
    assert err.value.degree == 2


def test_crt_in_small_fields(phi_rank2):
    # A/(T) sits in k and A/(T^2 + T + 1) in F_4, whatever φ[𝔩] needs
    P_crt, primes, _ = frobenius.frobenius_charpoly_crt(phi_rank2, max_field_bits=2)
    assert P_crt == X("1,1|1|1")
    assert primes == [P("0,1"), P("1,1,1")]


def test_prime_degree_bound(phi_rank2, phi_rank1):
    assert frobenius._prime_degree_bound(phi_rank2, 24, 24) == frobenius.MAX_PRIME_DEGREE
    assert frobenius._prime_degree_bound(phi_rank2, 24, 3) == 3
    assert frobenius._prime_degree_bound(phi_rank2, 2, 24) == 2
    assert frobenius._prime_degree_bound(phi_rank1, 1, 24) == 2


def test_crt_large_cell_is_fast():
    phi = sampling.sample_module(3, 2, 3, seed=42, index=0)

    start = time.perf_counter()
    P_crt, primes, skipped = frobenius.frobenius_charpoly_crt(phi)
    elapsed = time.perf_counter() - start

    assert elapsed < 20.0
    assert skipped == []
    assert sum(prime.degree for prime in primes) >= phi.n + 1
    assert P_crt == frobenius.frobenius_charpoly_direct(phi)[0]


def test_agreement(phi_rank2):
    res = frobenius.frobenius_charpoly(phi_rank2, strict=True)
    assert res.agree
    assert res.P == res.P_crt == X("1,1|1|1")
    assert res.det == P("1,1")


def test_capped_crt_route(phi_rank2):
    res = frobenius.frobenius_charpoly(phi_rank2, max_field_bits=1)
    assert res.P_crt is None
    assert not res.agree
    assert res.skipped


def test_strict_disagreement(phi_rank2, monkeypatch):
    def fake(phi, *args):
        return X("0,1|1|1"), [], []

    monkeypatch.setattr(frobenius, "frobenius_charpoly_crt", fake)
    with pytest.raises(VerificationError):
        frobenius.frobenius_charpoly(phi_rank2, strict=True)

    assert not frobenius.frobenius_charpoly(phi_rank2).agree
