import json

import pytest
from hypothesis import given, strategies as st

from aksverify.errors import DomainError, PropertyViolation
from aksverify import fastdiv
from aksverify.fastdiv import (bench_divide, ks_divide, newton_inverse, reverse, schoolbook_divide,
                               truncated_geom_inverse)
from aksverify.polyring import ModPoly, poly_long_div

P = lambda m, *c: ModPoly(m, list(c))  # noqa: E731
primes = st.sampled_from([2, 3, 5, 7, 101, 65537, 2**31 - 1])


@st.composite
def division_pairs(draw, max_deg=40):
    m = draw(primes)
    num = ModPoly(m, draw(st.lists(st.integers(0, m - 1), max_size=max_deg + 1)))
    ds = draw(st.integers(0, max_deg))
    den = draw(st.lists(st.integers(0, m - 1), min_size=ds, max_size=ds))
    return num, ModPoly(m, den + [draw(st.integers(1, m - 1))])


def test_reverse_examples():
    assert reverse(P(5, 3, 2, 1), 2) == P(5, 1, 2, 3)
    assert reverse(ModPoly.x(5), 2) == ModPoly.x(5)
    with pytest.raises(DomainError):
        reverse(P(5, 1, 1, 1), 1)


@given(division_pairs())
def test_reverse_involution(pair):
    f, _ = pair
    if f.degree is None:
        return
    assert reverse(reverse(f, f.degree), f.degree) == f


def test_geometric_inverse_examples():
    assert truncated_geom_inverse(P(5, 1), 7) == P(5, 1)
    assert truncated_geom_inverse(P(5, 1, 1), 2) == P(5, 1, 4, 1)
    with pytest.raises(DomainError):
        truncated_geom_inverse(P(5, 2, 1), 3)


@given(division_pairs(max_deg=20), st.integers(0, 30))
def test_inverses_agree(pair, k):
    _, s = pair
    s_rev = ModPoly(s.modulus, [1] + list(s.coeffs[1:]))
    geo = truncated_geom_inverse(s_rev, k)
    assert geo == newton_inverse(s_rev, k)
    assert (s_rev * geo).truncate(k + 1) == ModPoly.const(s.modulus, 1)
    # the literal identity: s * sum (1-s)^i = 1 - (1-s)^(k+1)
    one = ModPoly.const(s.modulus, 1)
    assert (s_rev * geo).truncate(k + 1) == (one - (one - s_rev) ** (k + 1)).truncate(k + 1)


def test_ks_divide_examples():
    res = ks_divide(P(5, 4, 0, 1), P(5, 4, 1))
    assert (res.quotient, res.remainder) == (P(5, 1, 1), ModPoly(5))
    res = ks_divide(P(5, 1, 2), P(5, 1, 2, 3))
    assert res.quotient.is_zero() and res.remainder == P(5, 1, 2)
    res = ks_divide(P(5, 1, 2, 0, 1), P(5, 1, 1))
    assert (res.quotient, res.remainder) == (P(5, 3, 4, 1), P(5, 3))
    assert res.method == "kung-sieveking"
    with pytest.raises(ZeroDivisionError):
        ks_divide(P(5, 1), ModPoly(5))


@given(division_pairs())
def test_ks_divide_matches_long_division(pair):
    num, den = pair
    for inverse in ("newton", "geometric"):
        res = ks_divide(num, den, inverse=inverse)
        assert (res.quotient, res.remainder) == poly_long_div(num, den)
        assert den * res.quotient + res.remainder == num


def test_schoolbook_method_tag():
    assert schoolbook_divide(P(5, 1, 1), P(5, 1)).method == "schoolbook"


def test_bench_report_shape():
    report = bench_divide([8, 32], 101, trials=2)
    assert [r.degree for r in report.rows] == [8, 32]
    doc = json.loads(report.to_json())
    assert doc["modulus"] == 101
    assert set(doc["rows"][0]) == {"degree", "schoolbook_ns", "ks_ns", "ratio"}
    assert report.to_csv().splitlines()[0] == "degree,schoolbook_ns,ks_ns,ratio"
    assert bench_divide([], 101, trials=1).rows == []


def test_bench_rejects_bad_input():
    with pytest.raises(DomainError):
        bench_divide([8], 15, trials=1)
    with pytest.raises(DomainError):
        bench_divide([32, 8], 101, trials=1)


def test_bench_mismatch_is_hard_failure(monkeypatch):
    real = fastdiv.ks_divide

    def broken(P_, S_, inverse="newton"):
        res = real(P_, S_, inverse)
        return fastdiv.DivisionResult(res.quotient + 1, res.remainder, res.method)

    monkeypatch.setattr(fastdiv, "ks_divide", broken)
    with pytest.raises(PropertyViolation):
        bench_divide([8], 101, trials=1)
