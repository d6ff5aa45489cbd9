"""Dense polynomials over Z/m, finite-field constructions, and root indexing.

A ``ModPoly`` stores coefficients constant-term first, reduced into [0, m),
with no trailing zeros; the zero polynomial has no coefficients and degree
``None``. Add, subtract and multiply work for any modulus m >= 2. Division
needs the divisor's leading coefficient to be a unit. gcd, factoring and the
field constructions need m prime.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterator, Union

import numpy as np

from .errors import DomainError, ModulusMismatchError, PropertyViolation
from .numtheory import divisors, is_prime_trial, totient

_INT64_LIMIT = 1 << 62


@lru_cache(maxsize=256)
def _is_prime_cached(m: int) -> bool:
    return is_prime_trial(m)


def require_prime(m: int) -> None:
    if not _is_prime_cached(m):
        raise DomainError(f"modulus {m} is not prime")


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _wrap(m: int, coeffs: list[int]) -> ModPoly:
    # coeffs must already lie in [0, m)
    obj = object.__new__(ModPoly)
    object.__setattr__(obj, "modulus", m)
    object.__setattr__(obj, "coeffs", tuple(_trim(coeffs)))
    return obj


def _kronecker_mul(a: list[int], b: list[int], m: int) -> list[int]:
    slot_bits = 2 * (m - 1).bit_length() + min(len(a), len(b)).bit_length() + 1
    k = (slot_bits + 7) // 8
    pa = int.from_bytes(b"".join(c.to_bytes(k, "little") for c in a), "little")
    pb = int.from_bytes(b"".join(c.to_bytes(k, "little") for c in b), "little")
    n = len(a) + len(b) - 1
    raw = (pa * pb).to_bytes(k * n, "little")
    return [int.from_bytes(raw[i * k:(i + 1) * k], "little") % m for i in range(n)]


def _mul_coeffs(a: list[int] | tuple[int, ...], b: list[int] | tuple[int, ...], m: int) -> list[int]:
    if not a or not b:
        return []
    short = min(len(a), len(b))
    if short <= 4:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return [c % m for c in out]
    if short * (m - 1) ** 2 < _INT64_LIMIT:
        conv = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return (conv % m).tolist()
    return _kronecker_mul(list(a), list(b), m)


def _inverse_mod(c: int, m: int) -> int:
    try:
        return pow(c, -1, m)
    except ValueError:
        raise DomainError(f"{c} is not invertible modulo {m}") from None


@dataclass(frozen=True)
class ModPoly:
    modulus: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        m = self.modulus
        if m < 2:
            raise DomainError("modulus must be >= 2")
        object.__setattr__(self, "coeffs", tuple(_trim([c % m for c in self.coeffs])))

    # --- constructors -------------------------------------------------
    @classmethod
    def const(cls, m: int, c: int) -> ModPoly:
        return cls(m, (c,))

    @classmethod
    def x(cls, m: int) -> ModPoly:
        return _wrap(m, [0, 1])

    @classmethod
    def monomial(cls, m: int, k: int, c: int = 1) -> ModPoly:
        return cls(m, (0,) * k + (c,))

    @classmethod
    def x_pow_minus_one(cls, m: int, k: int) -> ModPoly:
        """X^k - 1."""
        if k < 1:
            raise DomainError("k must be >= 1")
        c = [0] * (k + 1)
        c[0] = m - 1
        c[k] = 1
        return _wrap(m, c)

    @classmethod
    def x_plus(cls, m: int, a: int) -> ModPoly:
        """X + a."""
        return cls(m, (a, 1))

    # --- basic queries ------------------------------------------------
    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x: int) -> int:
        """Evaluate at an integer point, modulo the modulus."""
        m = self.modulus
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % m
        return acc

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ModPoly({self.modulus}, {list(self.coeffs)})"

    # --- ring operations ----------------------------------------------
    def _check(self, other: ModPoly) -> None:
        if other.modulus != self.modulus:
            raise ModulusMismatchError(f"moduli differ: {self.modulus} vs {other.modulus}")

    def _lift(self, other: Union[ModPoly, int]) -> ModPoly:
        if isinstance(other, int):
            return ModPoly(self.modulus, (other,))
        self._check(other)
        return other

    def __add__(self, other: Union[ModPoly, int]) -> ModPoly:
        other = self._lift(other)
        a, b, m = self.coeffs, other.coeffs, self.modulus
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % m
        return _wrap(m, out)

    __radd__ = __add__

    def __neg__(self) -> ModPoly:
        m = self.modulus
        return _wrap(m, [(m - c) % m for c in self.coeffs])

    def __sub__(self, other: Union[ModPoly, int]) -> ModPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other: int) -> ModPoly:
        return self._lift(other) - self

    def __mul__(self, other: Union[ModPoly, int]) -> ModPoly:
        if isinstance(other, int):
            m = self.modulus
            return _wrap(m, [c * other % m for c in self.coeffs])
        self._check(other)
        return _wrap(self.modulus, _mul_coeffs(self.coeffs, other.coeffs, self.modulus))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ModPoly:
        if e < 0:
            raise DomainError("negative exponent")
        result = ModPoly.const(self.modulus, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other: ModPoly) -> tuple[ModPoly, ModPoly]:
        return poly_long_div(self, other)

    def __floordiv__(self, other: ModPoly) -> ModPoly:
        return poly_long_div(self, other)[0]

    def __mod__(self, other: ModPoly) -> ModPoly:
        return poly_long_div(self, other)[1]

    def monic(self) -> ModPoly:
        if not self.coeffs:
            raise DomainError("the zero polynomial has no monic form")
        return self * _inverse_mod(self.lead, self.modulus)

    def compose_power(self, k: int) -> ModPoly:
        """f(X^k)."""
        if k < 0:
            raise DomainError("negative exponent")
        if k == 0:
            return ModPoly.const(self.modulus, sum(self.coeffs))
        out = [0] * ((len(self.coeffs) - 1) * k + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return _wrap(self.modulus, out)

    def compose(self, g: ModPoly) -> ModPoly:
        """f(g(X)) by Horner's rule."""
        self._check(g)
        acc = ModPoly(self.modulus)
        for c in reversed(self.coeffs):
            acc = acc * g + c
        return acc

    def truncate(self, k: int) -> ModPoly:
        """f mod X^k."""
        return _wrap(self.modulus, list(self.coeffs[:k]))

    def shift(self, k: int) -> ModPoly:
        """X^k * f."""
        if not self.coeffs:
            return self
        return _wrap(self.modulus, [0] * k + list(self.coeffs))


def compose_power(f: ModPoly, k: int) -> ModPoly:
    return f.compose_power(k)


# --- division, gcd, derivative -----------------------------------------

def poly_long_div(P: ModPoly, S: ModPoly) -> tuple[ModPoly, ModPoly]:
    """Schoolbook long division: P = S*Q + R with deg R < deg S."""
    P._check(S)
    if S.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    m = P.modulus
    inv = _inverse_mod(S.lead, m)
    ds = len(S.coeffs) - 1
    rem = list(P.coeffs)
    if len(rem) <= ds:
        return ModPoly(m), P
    quo = [0] * (len(rem) - ds)
    s = S.coeffs
    for i in range(len(rem) - 1, ds - 1, -1):
        c = rem[i] % m
        if not c:
            continue
        q = c * inv % m
        quo[i - ds] = q
        base = i - ds
        for j in range(ds):
            rem[base + j] -= q * s[j]
        rem[i] = 0
    return _wrap(m, quo), _wrap(m, [c % m for c in rem[:ds]])


def poly_xgcd(f: ModPoly, g: ModPoly) -> tuple[ModPoly, ModPoly, ModPoly]:
    """(h, u, v) with h = gcd(f, g) monic and h = u*f + v*g."""
    f._check(g)
    require_prime(f.modulus)
    if f.is_zero() and g.is_zero():
        raise DomainError("gcd of two zero polynomials is undefined")
    m = f.modulus
    zero, one = ModPoly(m), ModPoly.const(m, 1)
    r0, r1 = f, g
    u0, u1 = one, zero
    v0, v1 = zero, one
    while not r1.is_zero():
        q, r = poly_long_div(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    inv = _inverse_mod(r0.lead, m)
    return r0 * inv, u0 * inv, v0 * inv


def poly_gcd(f: ModPoly, g: ModPoly) -> ModPoly:
    f._check(g)
    require_prime(f.modulus)
    if f.is_zero() and g.is_zero():
        raise DomainError("gcd of two zero polynomials is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, poly_long_div(a, b)[1]
    return a.monic()


def poly_derivative(f: ModPoly) -> ModPoly:
    m = f.modulus
    return _wrap(m, [(i * c) % m for i, c in enumerate(f.coeffs)][1:])


def divides(d: ModPoly, f: ModPoly) -> bool:
    return poly_long_div(f, d)[1].is_zero()


# --- modular exponentiation --------------------------------------------

class _Reducer:
    """Remainder modulo a fixed g whose leading coefficient is a unit."""

    def __init__(self, g: ModPoly):
        m = g.modulus
        if g.is_zero():
            raise ZeroDivisionError("reduction modulo the zero polynomial")
        try:
            g = g.monic()
        except DomainError:
            raise DomainError(f"leading coefficient of {g!r} is not invertible mod {m}") from None
        self.m = m
        self.g = g
        self.d = len(g.coeffs) - 1
        inner = g.coeffs[1:-1]
        # X^d + c0: reduction folds X^d -> -c0
        self.fold = None if any(inner) else (m - g.coeffs[0]) % m

    def __call__(self, c: list[int]) -> list[int]:
        m, d = self.m, self.d
        if len(c) <= d:
            return c
        if d == 0:
            return []
        c = list(c)
        if self.fold is not None:
            w = self.fold
            for i in range(len(c) - 1, d - 1, -1):
                if c[i]:
                    c[i - d] = (c[i - d] + c[i] * w) % m
            return _trim(c[:d])
        g = self.g.coeffs
        for i in range(len(c) - 1, d - 1, -1):
            q = c[i] % m
            if q:
                base = i - d
                for j in range(d):
                    c[base + j] -= q * g[j]
        return _trim([x % m for x in c[:d]])


def _powmod_cyclic_numpy(base: list[int], e: int, r: int, m: int) -> list[int]:
    # square-and-multiply modulo (X^r - 1, m) in int64; caller checks overflow bound
    b = np.zeros(r, dtype=np.int64)
    b[:len(base)] = base
    acc = np.zeros(r, dtype=np.int64)
    acc[0] = 1 % m

    def mulred(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        full = np.convolve(x, y)
        out = full[:r].copy()
        out[:r - 1] += full[r:]
        return out % m

    for bit in bin(e)[2:]:
        acc = mulred(acc, acc)
        if bit == "1":
            acc = mulred(acc, b)
    return acc.tolist()


def powmod(f: ModPoly, e: int, g: ModPoly) -> ModPoly:
    """f^e modulo (g, m) by left-to-right square-and-multiply.

    Every intermediate product is reduced modulo g. The modulus m may be
    composite as long as g's leading coefficient is a unit modulo m.
    """
    f._check(g)
    if e < 0:
        raise DomainError("negative exponent")
    m = f.modulus
    red = _Reducer(g)
    base = red(list(f.coeffs))
    d = red.d
    if d == 0:
        return ModPoly(m)
    if red.fold == 1 and d > 8 and d * (m - 1) ** 2 < _INT64_LIMIT:
        return ModPoly(m, tuple(_powmod_cyclic_numpy(base, e, d, m)))
    acc = [1 % m]
    for bit in bin(e)[2:] if e else "":
        acc = red(_mul_coeffs(acc, acc, m))
        if bit == "1":
            acc = red(_mul_coeffs(acc, base, m))
    return _wrap(m, _trim(acc))


# convolution sums are kept below 2^42 so float64 rounding stays far from 0.5
_FFT_MAGNITUDE_BITS = 42


class _PrecisionLoss(ArithmeticError):
    pass


def _fft_size(r: int) -> int:
    # power of two holding a full linear product, folded back mod X^r - 1
    return 1 << (2 * r - 2).bit_length()


def _limb_layout(r: int, m: int) -> tuple[int, int] | None:
    # (limb bits, limb count) with nl * r * 2^(2b) <= 2^_FFT_MAGNITUDE_BITS
    bits = max((m - 1).bit_length(), 1)
    for nl in range(1, 4):
        b = -(-bits // nl)
        if 2 * b + (r * nl).bit_length() <= _FFT_MAGNITUDE_BITS:
            return b, nl
    return None


def _cyclic_mulmod_fft(fx: list[np.ndarray], fy: list[np.ndarray], r: int, m: int, b: int) -> np.ndarray:
    # fx, fy: rfft spectra of the b-bit limbs of two (batch, r) arrays
    nl = len(fx)
    size = _fft_size(r)
    out = np.zeros((fx[0].shape[0], r), dtype=np.int64)
    for s in range(2 * nl - 1):
        spec = sum(fx[i] * fy[s - i] for i in range(max(0, s - nl + 1), min(s, nl - 1) + 1))
        c = np.fft.irfft(spec, n=size, axis=1)[:, :2 * r - 1]
        ci = np.rint(c)
        if np.max(np.abs(c - ci), initial=0.0) > 0.2:
            raise _PrecisionLoss
        ci = ci.astype(np.int64)
        folded = ci[:, :r].copy()
        folded[:, :r - 1] += ci[:, r:]
        out = (out + (folded % m) * pow(2, b * s, m)) % m
    return out


def _limb_spectra(a: np.ndarray, r: int, b: int, nl: int) -> list[np.ndarray]:
    size = _fft_size(r)
    if nl == 1:
        return [np.fft.rfft(a, n=size, axis=1)]
    mask = (1 << b) - 1
    return [np.fft.rfft((a >> (b * i)) & mask, n=size, axis=1) for i in range(nl)]


def cyclic_powmod_batch(bases: list[ModPoly], e: int, r: int) -> list[ModPoly]:
    """[b^e mod (X^r - 1) for b in bases], all over one modulus.

    Runs every base through the same square-and-multiply schedule at once,
    multiplying by cyclic convolution through a float FFT, splitting
    coefficients into limbs when m is too large for one pass.
    Each product is checked to round exactly; if it does not, or the sizes are
    outside the safe range, it falls back to ``powmod`` per base.
    """
    if not bases:
        return []
    m = bases[0].modulus
    if any(b.modulus != m for b in bases):
        raise ModulusMismatchError("bases must share a modulus")
    g = ModPoly.x_pow_minus_one(m, r)
    layout = _limb_layout(r, m) if 2 <= r <= 1 << 16 and m < 1 << 31 else None
    if layout is None:
        return [powmod(b, e, g) for b in bases]
    lb, nl = layout
    red = _Reducer(g)
    base = np.zeros((len(bases), r), dtype=np.int64)
    for row, b in enumerate(bases):
        c = red(list(b.coeffs))
        base[row, :len(c)] = c
    acc = np.zeros_like(base)
    acc[:, 0] = 1 % m
    try:
        base_spec = _limb_spectra(base, r, lb, nl)
        for bit in bin(e)[2:] if e else "":
            spec = _limb_spectra(acc, r, lb, nl)
            acc = _cyclic_mulmod_fft(spec, spec, r, m, lb)
            if bit == "1":
                acc = _cyclic_mulmod_fft(_limb_spectra(acc, r, lb, nl), base_spec, r, m, lb)
    except _PrecisionLoss:
        return [powmod(b, e, g) for b in bases]
    return [ModPoly(m, row) for row in acc.tolist()]


def reduce_mod(f: ModPoly, g: ModPoly) -> ModPoly:
    """f mod g for g with unit leading coefficient (any modulus)."""
    f._check(g)
    return _wrap(f.modulus, _Reducer(g)(list(f.coeffs)))


# --- cyclotomic polynomials and irreducible factors --------------------

def cyclotomic(p: int, r: int) -> ModPoly:
    """Q_r over Z/p: Q_1 = X - 1, Q_r = (X^r - 1) / prod_{d | r, d < r} Q_d.

    Requires p prime and 1 <= r < p. Each division is checked to be exact.
    """
    require_prime(p)
    if not 1 <= r < p:
        raise DomainError(f"cyclotomic needs 1 <= r < p (got r={r}, p={p})")
    memo: dict[int, ModPoly] = {}
    for d in divisors(r):
        if d == 1:
            memo[1] = ModPoly.x_pow_minus_one(p, 1)
            continue
        denom = ModPoly.const(p, 1)
        for e in divisors(d)[:-1]:
            denom = denom * memo[e]
        q, rem = poly_long_div(ModPoly.x_pow_minus_one(p, d), denom)
        if not rem.is_zero():
            raise PropertyViolation(f"prod of Q_e (e | {d}, e < {d}) does not divide X^{d}-1 mod {p}")
        memo[d] = q
    return memo[r]


def monic_polys(p: int, d: int) -> Iterator[ModPoly]:
    """All monic degree-d polynomials over Z/p in canonical order.

    Lexicographic on (c_0, ..., c_{d-1}), constant term most significant.
    """
    for low in itertools.product(range(p), repeat=d):
        yield _wrap(p, list(low) + [1])


def _canonical_key(f: ModPoly) -> tuple:
    return (len(f.coeffs), f.coeffs[:-1])


def _x_pow_p_chain(f: ModPoly) -> Iterator[ModPoly]:
    # yields X^{p^i} mod f for i = 1, 2, ...
    p = f.modulus
    h = reduce_mod(ModPoly.x(p), f)
    while True:
        h = powmod(h, p, f)
        yield h


def _split_equal_degree(g: ModPoly, d: int, rng: random.Random) -> list[ModPoly]:
    # Cantor-Zassenhaus: g monic, squarefree, all irreducible factors of degree d
    p = g.modulus
    n = g.degree
    if n == d:
        return [g]
    while True:
        a = ModPoly(p, [rng.randrange(p) for _ in range(n)])
        if a.degree is None or a.degree < 1:
            continue
        if p == 2:
            b, term = a, a
            for _ in range(d - 1):
                term = reduce_mod(term * term, g)
                b = b + term
        else:
            b = powmod(a, (p**d - 1) // 2, g) - 1
        if b.is_zero():
            continue
        u = poly_gcd(g, b)
        if 0 < u.degree < n:
            return _split_equal_degree(u, d, rng) + _split_equal_degree(g // u, d, rng)


def irreducible_factor(f: ModPoly) -> ModPoly:
    """The first monic irreducible divisor of f in canonical enumeration order.

    Canonical order is by degree, then lexicographic with the constant term
    first. The answer equals what trial division over that enumeration finds;
    it is computed by distinct-degree factorization plus a seeded equal-degree
    split so that fields of degree ~100 stay reachable.
    """
    p = f.modulus
    require_prime(p)
    if f.degree is None or f.degree < 1:
        raise DomainError("irreducible_factor needs deg f >= 1")
    f = f.monic()
    if f.degree == 1:
        return f
    x = ModPoly.x(p)
    chain = _x_pow_p_chain(f)
    for d in range(1, f.degree // 2 + 1):
        xq = next(chain)
        g = poly_gcd(f, xq - x)
        if g.degree:
            factors = _split_equal_degree(g, d, random.Random(p * 1_000_003 + d))
            return min(factors, key=_canonical_key)
    return f


def is_irreducible(f: ModPoly) -> bool:
    """Rabin's test over a prime field."""
    p = f.modulus
    require_prime(p)
    n = f.degree
    if n is None or n < 1:
        return False
    if n == 1:
        return True
    f = f.monic()
    x = ModPoly.x(p)
    powers = [x]
    for _ in range(n):
        powers.append(powmod(powers[-1], p, f))
    if powers[n] != x:
        return False
    for q in {q for q in divisors(n) if q > 1 and is_prime_trial(q)}:
        if poly_gcd(f, powers[n // q] - x).degree:
            return False
    return True


# --- fields -------------------------------------------------------------

@dataclass(frozen=True)
class SparsePoly:
    """Sum of c * Y^e terms over Z/p; exponents may be huge, term count may not."""

    modulus: int
    terms: tuple[tuple[int, int], ...]
    max_terms: int = field(default=64, compare=False)

    def __post_init__(self) -> None:
        m = self.modulus
        merged: dict[int, int] = {}
        for e, c in self.terms:
            if e < 0:
                raise DomainError("negative exponent in sparse polynomial")
            merged[e] = (merged.get(e, 0) + c) % m
        terms = tuple(sorted((e, c) for e, c in merged.items() if c))
        if len(terms) > self.max_terms:
            raise DomainError(f"sparse polynomial has {len(terms)} terms (limit {self.max_terms})")
        object.__setattr__(self, "terms", terms)

    @property
    def degree(self) -> int | None:
        return self.terms[-1][0] if self.terms else None

    def is_zero(self) -> bool:
        return not self.terms


@dataclass(frozen=True)
class PrimeField:
    """Z/p with elements 0..p-1 in their natural order."""

    p: int

    def __post_init__(self) -> None:
        require_prime(self.p)

    @property
    def order(self) -> int:
        return self.p

    @property
    def zero(self) -> int:
        return 0

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def evaluate(self, g: ModPoly | SparsePoly, alpha: int) -> int:
        p = self.p
        if isinstance(g, SparsePoly):
            return sum(c * pow(alpha, e, p) for e, c in g.terms) % p
        return g(alpha)


@dataclass(frozen=True)
class QuotientField:
    """F = Z/p[X]/(h) for a monic irreducible h of degree >= 2.

    Elements are ModPoly residues of degree < deg h, enumerated
    lexicographically on (c_0, ..., c_{d-1}).
    """

    p: int
    h: ModPoly

    def __post_init__(self) -> None:
        require_prime(self.p)
        if self.h.modulus != self.p:
            raise ModulusMismatchError("h must be a polynomial over Z/p")
        if not self.h.is_monic() or (self.h.degree or 0) < 2:
            raise DomainError("h must be monic of degree >= 2")
        if not is_irreducible(self.h):
            raise DomainError(f"{self.h} is reducible over Z/{self.p}")

    @property
    def degree(self) -> int:
        return self.h.degree

    @property
    def order(self) -> int:
        return self.p**self.degree

    @property
    def zero(self) -> ModPoly:
        return ModPoly(self.p)

    @property
    def one(self) -> ModPoly:
        return ModPoly.const(self.p, 1)

    def reduce(self, f: ModPoly) -> ModPoly:
        return reduce_mod(f, self.h)

    def mul(self, a: ModPoly, b: ModPoly) -> ModPoly:
        return reduce_mod(a * b, self.h)

    def pow(self, a: ModPoly, e: int) -> ModPoly:
        return powmod(a, e, self.h)

    def inverse(self, a: ModPoly) -> ModPoly:
        h, u, _ = poly_xgcd(self.reduce(a), self.h)
        if h.degree != 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.reduce(u)

    def elements(self) -> Iterator[ModPoly]:
        p = self.p
        for c in itertools.product(range(p), repeat=self.degree):
            yield _wrap(p, list(c))

    def evaluate(self, g: ModPoly | SparsePoly, alpha: ModPoly) -> ModPoly:
        """g(alpha) in F for g with coefficients in the prime subfield."""
        if isinstance(g, SparsePoly):
            acc = self.zero
            for e, c in g.terms:
                acc = acc + self.pow(alpha, e) * c
            return self.reduce(acc)
        acc = self.zero
        for c in reversed(g.coeffs):
            acc = self.mul(acc, alpha) + c
        return acc


def build_cyclotomic_field(p: int, r: int) -> QuotientField:
    """F = Z/p[X]/(h) with h an irreducible factor of Q_r.

    Needs 1 <= r < p, r not dividing p - 1 and gcd(p, r) = 1. The chosen h is
    checked to have degree >= 2 and to divide no X^{r'} - 1 with r' < r.
    """
    require_prime(p)
    if not 1 <= r < p:
        raise DomainError(f"need 1 <= r < p (r={r}, p={p})")
    if (p - 1) % r == 0:
        raise DomainError(f"r={r} divides p-1={p - 1}")
    if gcd(p, r) != 1:
        raise DomainError("gcd(p, r) != 1")
    q = cyclotomic(p, r)
    if q.degree != totient(r):
        raise PropertyViolation(f"deg Q_{r} = {q.degree} != phi({r})")
    h = irreducible_factor(q)
    if h.degree < 2:
        raise PropertyViolation(f"irreducible factor {h} of Q_{r} mod {p} has degree < 2")
    x = reduce_mod(ModPoly.x(p), h)
    xk = x
    for rp in range(1, r):
        if xk == ModPoly.const(p, 1):
            raise PropertyViolation(f"h divides X^{rp}-1")
        xk = reduce_mod(xk * x, h)
    if xk != ModPoly.const(p, 1):
        raise PropertyViolation("h does not divide X^r-1")
    return QuotientField(p, h)


Field = Union[PrimeField, QuotientField]


def rub_index(fld: Field, g: ModPoly | SparsePoly, max_order: int = 2_000_000) -> dict:
    """Injective map from the roots of g in the field into {1, ..., deg g}.

    Field elements are scanned in canonical order and a root a is sent to the
    number of roots <= a. Exceeding deg g is a PropertyViolation.
    """
    if g.is_zero():
        raise DomainError("rub_index of the zero polynomial")
    p = fld.p
    if g.modulus != p:
        raise ModulusMismatchError("polynomial and field characteristic differ")
    if fld.order > max_order:
        raise DomainError(f"field of order {fld.order} is too large to enumerate")
    deg = g.degree
    zero = fld.zero
    out: dict = {}
    for alpha in fld.elements():
        if fld.evaluate(g, alpha) == zero:
            out[alpha] = len(out) + 1
    if len(out) > deg:
        raise PropertyViolation(f"{len(out)} roots exceed degree {deg}")
    return out
