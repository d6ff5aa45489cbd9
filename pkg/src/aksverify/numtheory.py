"""Integer-side primitives used by the AKS test and its correctness instruments.

Everything here works on plain Python ints (arbitrary precision, nonnegative
unless stated otherwise). ``bitlen(x)`` is the binary length |x|, and
``bitlen(x) - 1`` stands in for floor(log2 x) throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import DomainError, NotCoprimeError, PropertyViolation


def bitlen(x: int) -> int:
    """Length of the binary representation of x; bitlen(0) == 0."""
    if x < 0:
        raise DomainError("bitlen of a negative number")
    return x.bit_length()


def floor_log2(x: int) -> int:
    if x < 1:
        raise DomainError("floor_log2 needs x >= 1")
    return x.bit_length() - 1


@dataclass(frozen=True)
class Bezout:
    g: int
    u: int
    v: int


def xgcd(x: int, y: int) -> Bezout:
    """Extended Euclid: returns (g, u, v) with g = gcd(x, y) = u*x + v*y.

    u and v are signed. gcd(x, 0) = x.
    """
    if x < 0 or y < 0:
        raise DomainError("xgcd expects naturals")
    if x == 0 and y == 0:
        raise DomainError("xgcd(0, 0) is undefined")
    r0, r1 = x, y
    u0, u1 = 1, 0
    v0, v1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    return Bezout(r0, u0, v0)


def padic_valuation(p: int, x: int) -> int:
    """Exponent of p in x, with the convention nu_p(0) = 0."""
    if p < 2:
        raise DomainError("p must be a prime")
    if x == 0:
        return 0
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def legendre_valuation(p: int, n: int) -> int:
    """nu_p(n!) computed as sum_{i>=1} floor(n / p^i)."""
    if p < 2:
        raise DomainError("p must be a prime")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def lcm_range(m: int) -> int:
    """lcm(1, ..., m) by folding lcm(a, b) = a*b / gcd(a, b)."""
    if m < 1:
        raise DomainError("lcm_range needs m >= 1")
    acc = 1
    for i in range(2, m + 1):
        acc = acc * i // gcd(acc, i)
    return acc


def totient(r: int) -> int:
    """Count of 1 <= i <= r coprime to r (direct enumeration)."""
    if r < 1:
        raise DomainError("totient needs r >= 1")
    return sum(1 for i in range(1, r + 1) if gcd(i, r) == 1)


def divisors(r: int) -> list[int]:
    if r < 1:
        raise DomainError("divisors needs r >= 1")
    small, large = [], []
    for d in range(1, isqrt(r) + 1):
        if r % d == 0:
            small.append(d)
            if d != r // d:
                large.append(r // d)
    return small + large[::-1]


def mult_order(y: int, r: int) -> int:
    """Least i > 0 with y^i = 1 (mod r), found by repeated multiplication."""
    if r < 2:
        raise DomainError("mult_order needs r >= 2")
    if gcd(y, r) != 1:
        raise NotCoprimeError(f"gcd({y}, {r}) != 1")
    base = y % r
    x, i = base, 1
    while x != 1:
        x = x * base % r
        i += 1
    return i


def _order_exceeds(y: int, r: int, bound: int) -> int | None:
    # Returns ord_r(y) if it is > bound, else None; stops early on small orders.
    base = y % r
    x = base
    for i in range(1, r):
        if x == 1:
            return None if i <= bound else i
        x = x * base % r
    raise PropertyViolation(f"{y} has no order modulo {r}")


def _integer_root(x: int, b: int) -> int:
    # Largest a with a**b <= x, by binary search.
    lo, hi = 0, 1 << (x.bit_length() // b + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**b <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


def is_perfect_power(x: int) -> tuple[int, int] | None:
    """Witness (a, b) with b >= 2 and a**b == x, or None.

    x <= 1 counts as a perfect power and is reported as (x, 2). Exponents are
    tried in increasing order 2..bitlen(x)+1, so the witness has the smallest
    exponent.
    """
    if x < 0:
        raise DomainError("is_perfect_power expects a natural")
    if x <= 1:
        return (x, 2)
    for b in range(2, bitlen(x) + 2):
        a = _integer_root(x, b)
        if a >= 2 and a**b == x:
            return (a, b)
    return None


def find_r(n: int) -> tuple[int, int]:
    """Smallest r coprime to n with ord_r(n) > bitlen(n)^2; returns (r, ord_r(n)).

    Raises PropertyViolation if no such r exists up to 2*bitlen(n)^6.
    """
    if n < 2:
        raise DomainError("find_r needs n >= 2")
    length = bitlen(n)
    threshold = length * length
    bound = 2 * length**6
    # ord_r(n) <= r - 1, so no r <= threshold + 1 can qualify
    r = max(2, threshold + 2)
    while r <= bound:
        if gcd(n, r) == 1:
            order = _order_exceeds(n, r, threshold)
            if order is not None:
                return r, order
        r += 1
    raise PropertyViolation(f"no r <= {bound} with ord_r({n}) > {threshold}")


@dataclass(frozen=True)
class Factorization:
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = 1
        for q, e in self.factors:
            out *= q**e
        return out

    def primes(self) -> list[int]:
        return [q for q, _ in self.factors]


def trial_factorize(n: int) -> Factorization:
    """Factor n >= 2 by ascending trial division up to sqrt(n)."""
    if n < 2:
        raise DomainError("trial_factorize needs n >= 2")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return Factorization(tuple(out))


def is_prime_trial(n: int) -> bool:
    """Ground-truth primality by trial division."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_up_to(limit: int) -> list[int]:
    return [q for q in range(2, limit + 1) if is_prime_trial(q)]
