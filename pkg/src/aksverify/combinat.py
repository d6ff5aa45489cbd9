"""Binomial coefficients and the injection chain rank -> mask -> s.o.p. -> exponents.

Bit positions in a strictly order-preserving (s.o.p.) function are 1-based,
so a mask with bit 0 set maps to f(1) = 1. Masks themselves are plain ints.
"""

from __future__ import annotations

from math import comb, factorial

from .errors import DomainError
from .polyring import ModPoly

SopFunction = tuple[int, ...]
ExponentTuple = tuple[int, ...]


def binom(x: int, y: int) -> int:
    """x choose y for naturals, 0 when y > x."""
    if x < 0 or y < 0:
        raise DomainError("binom expects naturals")
    return comb(x, y)


def binomial_expand(a: int, b: int, modulus: int) -> ModPoly:
    """(X + a)^b with coefficient of X^i equal to binom(b, i) * a^(b-i)."""
    if modulus < 2:
        raise DomainError("modulus must be >= 2")
    return ModPoly(modulus, [comb(b, i) * pow(a, b - i, modulus) for i in range(b + 1)])


def cns_rank_to_subset(k: int, m: int, i: int) -> int:
    """The rank-i mask with k ones among m bits (1 <= i <= binom(m, k)).

    Unrolls f_k^{m}(i) = f_k^{m-1}(i) for i <= binom(m-1, k), and
    f_{k-1}^{m-1}(i - binom(m-1, k)) + 2^(m-1) otherwise, down to f_0^0(1) = 0.
    """
    if not 0 <= k <= m:
        raise DomainError(f"need 0 <= k <= m (k={k}, m={m})")
    if not 1 <= i <= comb(m, k):
        raise DomainError(f"rank {i} outside 1..{comb(m, k)}")
    x = 0
    below = comb(m - 1, k) if m else 0
    while m > 0:
        # below = binom(m-1, k); step it to binom(m-2, k) or binom(m-2, k-1)
        if i > below:
            i -= below
            x |= 1 << (m - 1)
            below = below * k // (m - 1) if m > 1 else 0
            k -= 1
        else:
            below = below * (m - 1 - k) // (m - 1) if m > 1 else 0
        m -= 1
    return x


def subset_to_rank(k: int, m: int, x: int) -> int:
    """Inverse of cns_rank_to_subset."""
    if x.bit_length() > m or bin(x).count("1") != k:
        raise DomainError("mask does not have k ones within m bits")
    i = 1
    while m > 0:
        if x >> (m - 1) & 1:
            i += comb(m - 1, k)
            k -= 1
        m -= 1
    return i


def bits_to_sop(t: int, ell: int, x: int) -> SopFunction:
    """1-based positions of the set bits of x, lowest first."""
    if bin(x).count("1") != ell + 1:
        raise DomainError(f"mask needs exactly {ell + 1} ones")
    if x.bit_length() > t + ell:
        raise DomainError(f"mask wider than {t + ell} bits")
    out = []
    pos = 1
    while x:
        if x & 1:
            out.append(pos)
        x >>= 1
        pos += 1
    return tuple(out)


def sop_to_exponents(t: int, ell: int, f: SopFunction) -> ExponentTuple:
    """Gap lengths: e_0 = f(1) - 1, e_i = f(i+1) - f(i) - 1."""
    if len(f) != ell + 1:
        raise DomainError(f"s.o.p. function must have {ell + 1} values")
    if any(b <= a for a, b in zip(f, f[1:])) or f[0] < 1 or f[-1] > t + ell:
        raise DomainError("not a strictly order-preserving map into 1..t+ell")
    return (f[0] - 1,) + tuple(b - a - 1 for a, b in zip(f, f[1:]))


def exponents_to_sop(e: ExponentTuple) -> SopFunction:
    out, pos = [], 0
    for gap in e:
        pos += gap + 1
        out.append(pos)
    return tuple(out)


def sigma(t: int, ell: int, i: int) -> ExponentTuple:
    """Exponent tuple of the rank-i product prod_a (X + a)^{e_a}, sum e_a <= t - 1."""
    if t < 1 or ell < 0:
        raise DomainError("need t >= 1 and ell >= 0")
    x = cns_rank_to_subset(ell + 1, t + ell, i)
    return sop_to_exponents(t, ell, bits_to_sop(t, ell, x))


def grid_rank(k: int, l: int) -> tuple[int, int]:
    """l = i*(k+1) + j + 1 with 0 <= i, j <= k."""
    if k < 0 or not 1 <= l <= (k + 1) ** 2:
        raise DomainError(f"l={l} outside 1..{(k + 1) ** 2}")
    return divmod(l - 1, k + 1)


def factorial_identity(x: int, y: int) -> bool:
    return binom(x, y) * factorial(y) * factorial(x - y) == factorial(x)


def pascal_identity(x: int, y: int) -> bool:
    return binom(x, y) == binom(x - 1, y) + (binom(x - 1, y - 1) if y >= 1 else 0)


def binom_monotone(k: int, l: int, s: int) -> bool:
    """binom(k+l, k) >= binom(s+l, s) for k >= s."""
    if k < s:
        raise DomainError("need k >= s")
    return binom(k + l, k) >= binom(s + l, s)


def central_binom_bound(k: int) -> bool:
    """binom(2k+1, k) > 2^(k+2), valid for k >= 6."""
    if k < 6:
        raise DomainError("bound is stated for k >= 6")
    return binom(2 * k + 1, k) > 2 ** (k + 2)
