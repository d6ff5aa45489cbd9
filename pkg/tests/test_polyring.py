import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

from aksverify.errors import DomainError, ModulusMismatchError, PropertyViolation
from aksverify.numtheory import divisors, mult_order, primes_up_to, totient
from aksverify.polyring import (ModPoly, PrimeField, QuotientField, SparsePoly,
                                build_cyclotomic_field, cyclic_powmod_batch, cyclotomic, divides,
                                irreducible_factor, is_irreducible, monic_polys, poly_derivative,
                                poly_gcd, poly_long_div, poly_xgcd, powmod, reduce_mod, rub_index)

P = lambda m, *c: ModPoly(m, list(c))  # noqa: E731
X = lambda m: ModPoly.x(m)  # noqa: E731

primes = st.sampled_from([2, 3, 5, 7, 11, 13, 101, 65537])


@st.composite
def polys(draw, p=None, max_deg=12):
    m = p if p is not None else draw(primes)
    coeffs = draw(st.lists(st.integers(0, m - 1), max_size=max_deg + 1))
    return ModPoly(m, coeffs)


@st.composite
def poly_pairs(draw, max_deg=12):
    m = draw(primes)
    return draw(polys(m, max_deg)), draw(polys(m, max_deg))


def test_normalization():
    f = ModPoly(5, [1, 7, 0, 5])
    assert f.coeffs == (1, 2)
    assert ModPoly(5, [0, 0]).degree is None
    assert ModPoly(5, [5]).is_zero()


def test_arith_examples():
    f = P(7, 3, 1, 4)
    assert f + ModPoly(7) == f
    assert (X(2) + 1) * (X(2) + 1) == P(2, 1, 0, 1)
    assert ModPoly.monomial(5, 2).compose_power(3) == ModPoly.monomial(5, 6)
    with pytest.raises(ModulusMismatchError):
        P(5, 1) + P(7, 1)


@given(poly_pairs(), st.data())
def test_ring_laws(pair, data):
    f, g = pair
    h = data.draw(polys(f.modulus))
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == ModPoly(f.modulus)


def test_large_modulus_multiplication_paths():
    rng = random.Random(3)
    for m in (2**31 - 1, 2**61 - 1, 10**30 + 57):
        a = ModPoly(m, [rng.randrange(m) for _ in range(40)])
        b = ModPoly(m, [rng.randrange(m) for _ in range(35)])
        naive = [0] * 74
        for i, x in enumerate(a.coeffs):
            for j, y in enumerate(b.coeffs):
                naive[i + j] += x * y
        assert a * b == ModPoly(m, naive)


def test_long_div_examples():
    q, r = poly_long_div(P(5, 4, 0, 1), P(5, 4, 1))
    assert q == P(5, 1, 1) and r.is_zero()
    q, r = poly_long_div(P(5, 1, 2), P(5, 1, 2, 3))
    assert q.is_zero() and r == P(5, 1, 2)
    q, r = poly_long_div(P(5, 1, 2, 0, 1), P(5, 1, 1))
    assert q == P(5, 3, 4, 1) and r == P(5, 3)
    with pytest.raises(ZeroDivisionError):
        poly_long_div(P(5, 1), ModPoly(5))


@given(poly_pairs())
def test_long_div_contract(pair):
    f, g = pair
    if g.is_zero():
        return
    q, r = poly_long_div(f, g)
    assert g * q + r == f
    assert r.degree is None or r.degree < g.degree


def test_xgcd_examples():
    h, u, v = poly_xgcd(P(5, 2, 4), ModPoly(5))
    assert h == P(5, 3, 1) and h.is_monic()
    h, _, _ = poly_xgcd(P(5, 4, 0, 1), P(5, 0, 4, 1))
    assert h == P(5, 4, 1)
    with pytest.raises(DomainError):
        poly_xgcd(ModPoly(5), ModPoly(5))


@given(poly_pairs())
def test_xgcd_contract(pair):
    f, g = pair
    if f.is_zero() and g.is_zero():
        return
    h, u, v = poly_xgcd(f, g)
    assert h.is_monic()
    assert u * f + v * g == h
    assert divides(h, f) and divides(h, g)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 30), st.integers(1, 30))
def test_xk_minus_one_identities(p, k, l):
    xk, xl = ModPoly.x_pow_minus_one(p, k), ModPoly.x_pow_minus_one(p, l)
    if l % k == 0:
        assert divides(xk, xl)
    assert poly_xgcd(xk, xl)[0] == ModPoly.x_pow_minus_one(p, gcd(k, l))


def test_derivative_examples():
    assert poly_derivative(P(5, 3)).is_zero()
    assert poly_derivative(P(5, 0, 1, 0, 1)) == P(5, 1, 0, 3)
    assert poly_derivative(ModPoly.monomial(5, 5)).is_zero()


@given(poly_pairs())
def test_derivative_product_rule(pair):
    f, g = pair
    d = poly_derivative
    assert d(f * g) == d(f) * g + f * d(g)
    assert d(f + g) == d(f) + d(g)


@given(poly_pairs(max_deg=6))
def test_squarefree_criterion(pair):
    f, g = pair
    for cand in (f, f * g * g):
        if cand.is_zero() or cand.degree == 0:
            continue
        if poly_gcd(cand, poly_derivative(cand)).degree == 0:
            # no square of a non-constant divides cand
            for h in (g, f):
                if h.degree and h.degree >= 1:
                    assert not divides(h * h, cand)


@given(polys(p=13), st.integers(0, 12))
def test_factor_theorem(f, alpha):
    root_linear = ModPoly.x_plus(13, -alpha)
    assert (f(alpha) == 0) == divides(root_linear, f)


def test_powmod_examples():
    g = P(3, 2, 0, 1)
    assert powmod(P(3, 4, 5), 0, g) == P(3, 1)
    assert powmod(X(3) + 1, 3, g) == X(3) + 1
    for p, r in [(7, 3), (11, 4), (101, 10)]:
        assert powmod(X(p), p, ModPoly.x_pow_minus_one(p, r)) == ModPoly.monomial(p, p % r)


def test_powmod_needs_unit_lead():
    with pytest.raises(DomainError):
        powmod(X(6) + 1, 3, P(6, 1, 0, 2))


@given(polys(p=7, max_deg=8), st.integers(1, 40), st.integers(1, 40), st.integers(2, 9))
def test_powmod_recursive_and_product(f, l, k, r):
    g = ModPoly.x_pow_minus_one(7, r)
    assert powmod(f, l, g) == reduce_mod(powmod(f, l - 1, g) * f, g)
    assert powmod(powmod(f, l, g), k, g) == powmod(f, l * k, g)
    assert powmod(f, l, g) == reduce_mod(f**l, g)


@given(polys(p=5, max_deg=8), st.integers(0, 60), st.integers(1, 6), st.integers(1, 4))
def test_powmod_divisor_restriction(f, l, k0, mult):
    g0 = ModPoly.x_pow_minus_one(5, k0)
    g = ModPoly.x_pow_minus_one(5, k0 * mult)
    assert reduce_mod(powmod(f, l, g), g0) == powmod(f, l, g0)


@given(polys(p=5, max_deg=5), polys(p=5, max_deg=5), st.integers(0, 20), st.integers(2, 8))
def test_powmod_commutes_with_evaluation(f1, f2, l, r):
    g = ModPoly.x_pow_minus_one(5, r)
    assert reduce_mod((f1**l).compose(f2), g) == powmod(f1.compose(f2), l, g)


@given(polys(p=5, max_deg=5), polys(p=5, max_deg=5), st.integers(0, 30), st.integers(2, 8))
def test_powmod_congruence_composition(f1, f2, l, r):
    g = ModPoly.x_pow_minus_one(5, r)
    # f1 == f1 + g*f2 mod g, so their powers agree
    assert powmod(f1, l, g) == powmod(f1 + g * f2, l, g)


@given(polys(max_deg=10), st.integers(0, 10**6), st.integers(2, 40))
def test_powmod_composite_modulus(f, e, r):
    m = 561
    base = ModPoly(m, f.coeffs)
    g = ModPoly.x_pow_minus_one(m, r)
    acc = ModPoly.const(m, 1)
    b = reduce_mod(base, g)
    ee = e
    while ee:
        if ee & 1:
            acc = reduce_mod(acc * b, g)
        b = reduce_mod(b * b, g)
        ee >>= 1
    assert powmod(base, e, g) == acc


@pytest.mark.parametrize("m,r", [(19997, 229), (7919, 173), (2**31 - 1, 97), (10**9 + 7, 300), (6, 5), (2, 3)])
def test_batched_power_matches_powmod(m, r):
    rng = random.Random(m)
    bases = [ModPoly.x_plus(m, a) for a in range(12)]
    bases += [ModPoly(m, [rng.randrange(m) for _ in range(r + 5)]) for _ in range(4)]
    g = ModPoly.x_pow_minus_one(m, r)
    for e in (0, 1, 2, m, m + 12345):
        assert cyclic_powmod_batch(bases, e, r) == [powmod(b, e, g) for b in bases]


def test_cyclotomic_examples():
    assert cyclotomic(7, 1) == P(7, 6, 1)
    assert cyclotomic(7, 4) == P(7, 1, 0, 1)
    assert cyclotomic(7, 6) == P(7, 1, 6, 1)
    with pytest.raises(DomainError):
        cyclotomic(7, 7)


@pytest.mark.parametrize("p", primes_up_to(40))
def test_cyclotomic_product_and_coprimality(p):
    for r in range(1, p):
        prod = ModPoly.const(p, 1)
        for d in divisors(r):
            prod = prod * cyclotomic(p, d)
        assert prod == ModPoly.x_pow_minus_one(p, r)
        q = cyclotomic(p, r)
        assert q.degree == totient(r)
        for s in range(1, r):
            assert poly_gcd(q, cyclotomic(p, s)).degree == 0


def _trial_division_factor(f):
    # the literal search: first monic divisor by degree, then canonical order
    f = f.monic()
    for d in range(1, f.degree // 2 + 1):
        for cand in monic_polys(f.modulus, d):
            if divides(cand, f):
                return cand
    return f


def test_monic_polys_order():
    assert [g.coeffs for g in monic_polys(3, 1)] == [(0, 1), (1, 1), (2, 1)]
    listed = [g.coeffs for g in monic_polys(2, 2)]
    assert listed == [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]


def test_irreducible_factor_examples():
    assert irreducible_factor(P(7, 1, 0, 1)) == P(7, 1, 0, 1)
    # X^2 - 1 = (X + 1)(X + 4); constant-term-first order puts X + 1 first
    assert irreducible_factor(P(5, 4, 0, 1)) == P(5, 1, 1)
    assert irreducible_factor(P(5, 3, 2)) == P(5, 4, 1)


@given(st.sampled_from([2, 3, 5, 7]), st.data())
def test_irreducible_factor_matches_trial_division(p, data):
    deg = data.draw(st.integers(1, 7))
    coeffs = data.draw(st.lists(st.integers(0, p - 1), min_size=deg, max_size=deg))
    f = ModPoly(p, coeffs + [1])
    h = irreducible_factor(f)
    assert h == _trial_division_factor(f)
    assert is_irreducible(h) and divides(h, f)


def test_is_irreducible_against_enumeration():
    for p in (2, 3):
        for d in (2, 3, 4):
            for f in monic_polys(p, d):
                assert is_irreducible(f) == (_trial_division_factor(f) == f)


def test_build_cyclotomic_field_examples():
    fld = build_cyclotomic_field(7, 5)
    assert cyclotomic(7, 5).degree == 4
    assert divides(fld.h, ModPoly.x_pow_minus_one(7, 5)) and fld.degree >= 2
    fld = build_cyclotomic_field(11, 4)
    assert fld.degree == mult_order(11, 4) >= 2
    with pytest.raises(DomainError):
        build_cyclotomic_field(7, 3)
    fld = build_cyclotomic_field(101, 53)
    assert fld.degree == 52


def test_quotient_field_rejects_reducible():
    with pytest.raises(DomainError):
        QuotientField(5, P(5, 4, 0, 1))


def test_quotient_field_arithmetic():
    fld = build_cyclotomic_field(5, 3)
    elems = list(fld.elements())
    assert len(elems) == fld.order == 25
    assert elems[:3] == [ModPoly(5), ModPoly(5, [0, 1]), ModPoly(5, [0, 2])]
    for a in elems[1:]:
        assert fld.mul(a, fld.inverse(a)) == fld.one
        assert fld.pow(a, fld.order - 1) == fld.one


def test_rub_examples():
    assert rub_index(PrimeField(5), P(5, 4, 0, 1)) == {1: 1, 4: 2}
    assert rub_index(PrimeField(5), P(5, 2, 0, 1)) == {}
    sparse = SparsePoly(3, ((3, 1), (1, 2)))
    assert rub_index(PrimeField(3), sparse) == {0: 1, 1: 2, 2: 3}
    with pytest.raises(DomainError):
        rub_index(PrimeField(5), ModPoly(5))


@given(st.sampled_from(primes_up_to(101)), st.data())
def test_rub_injective_and_bounded(p, data):
    deg = data.draw(st.integers(0, 10))
    coeffs = data.draw(st.lists(st.integers(0, p - 1), min_size=deg, max_size=deg))
    g = ModPoly(p, coeffs + [data.draw(st.integers(1, p - 1))])
    idx = rub_index(PrimeField(p), g)
    roots = [a for a in range(p) if g(a) == 0]
    assert list(idx) == roots
    assert list(idx.values()) == list(range(1, len(roots) + 1))
    assert len(roots) <= deg


def test_rub_quotient_field_sparse():
    fld = build_cyclotomic_field(5, 3)
    # every element of F satisfies Y^25 = Y
    idx = rub_index(fld, SparsePoly(5, ((25, 1), (1, 4))))
    assert len(idx) == 25 and max(idx.values()) == 25


def test_rub_violation_is_reported():
    # over Z/8 (not a field) X^2 - 1 has four roots: force the check via a fake field
    class Ring8:
        p, order, zero = 8, 8, 0

        def elements(self):
            return iter(range(8))

        def evaluate(self, g, a):
            return g(a)

    with pytest.raises(PropertyViolation):
        rub_index(Ring8(), P(8, 7, 0, 1))


def test_sparse_poly_limits():
    s = SparsePoly(7, ((10**30, 3), (0, 1), (10**30, 4)))
    assert s.terms == ((0, 1),)
    with pytest.raises(DomainError):
        SparsePoly(7, tuple((i, 1) for i in range(65)))
