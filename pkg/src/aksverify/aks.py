"""The AKS primality test with a full decision trace, and the instruments that
check each step of its correctness argument on concrete parameters.

``aks_is_prime`` uses the strengthened order condition ord_r(n) > bitlen(n)^2
and floor(log n) = bitlen(n) - 1 in the loop bound.
"""

from __future__ import annotations

import json
from collections.abc import Iterator
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from math import gcd, isqrt

from .combinat import binom, grid_rank, sigma
from .errors import DomainError, PropertyViolation
from .numtheory import (bitlen, find_r, is_perfect_power, mult_order, totient,
                        trial_factorize)
from .polyring import (ModPoly, QuotientField, SparsePoly, build_cyclotomic_field,
                       cyclic_powmod_batch, powmod, reduce_mod, require_prime, rub_index)

SCHEMA_VERSION = "1"


class Verdict(str, Enum):
    PRIME = "PRIME"
    COMPOSITE = "COMPOSITE"


def _s(x: int | None) -> str | None:
    return None if x is None else str(x)


def _i(x: str | None) -> int | None:
    return None if x is None else int(x)


@dataclass
class AksTrace:
    n: int
    perfect_power: tuple[int, int] | None = None
    r: int | None = None
    ord_r_n: int | None = None
    gcd_hit: tuple[int, int] | None = None
    small_n_shortcut: bool = False
    ell: int | None = None
    congruence_checks: list[tuple[int, bool]] = field(default_factory=list)
    verdict: Verdict | None = None
    # both order thresholds: bitlen(n)^2 (used) and floor(log n)^2 (as printed)
    order_threshold: int | None = None
    floor_log_threshold: int | None = None
    schema_version: str = SCHEMA_VERSION

    def causes(self) -> list[str]:
        out = []
        if self.perfect_power is not None:
            out.append("perfect_power")
        if self.gcd_hit is not None:
            out.append("gcd_hit")
        if any(not ok for _, ok in self.congruence_checks):
            out.append("congruence")
        return out

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "n": str(self.n),
            "perfect_power": None if self.perfect_power is None
            else {"base": str(self.perfect_power[0]), "exp": str(self.perfect_power[1])},
            "r": _s(self.r),
            "ord_r_n": _s(self.ord_r_n),
            "gcd_hit": None if self.gcd_hit is None
            else {"a": str(self.gcd_hit[0]), "g": str(self.gcd_hit[1])},
            "small_n_shortcut": self.small_n_shortcut,
            "ell": _s(self.ell),
            "congruence_checks": [{"a": str(a), "ok": ok} for a, ok in self.congruence_checks],
            "verdict": None if self.verdict is None else self.verdict.value,
            "order_threshold": _s(self.order_threshold),
            "floor_log_threshold": _s(self.floor_log_threshold),
        }

    @classmethod
    def from_dict(cls, d: dict) -> AksTrace:
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported trace schema {d.get('schema_version')!r}")
        pp, gh = d["perfect_power"], d["gcd_hit"]
        return cls(
            n=int(d["n"]),
            perfect_power=None if pp is None else (int(pp["base"]), int(pp["exp"])),
            r=_i(d["r"]),
            ord_r_n=_i(d["ord_r_n"]),
            gcd_hit=None if gh is None else (int(gh["a"]), int(gh["g"])),
            small_n_shortcut=bool(d["small_n_shortcut"]),
            ell=_i(d["ell"]),
            congruence_checks=[(int(c["a"]), bool(c["ok"])) for c in d["congruence_checks"]],
            verdict=None if d["verdict"] is None else Verdict(d["verdict"]),
            order_threshold=_i(d.get("order_threshold")),
            floor_log_threshold=_i(d.get("floor_log_threshold")),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> AksTrace:
        return cls.from_dict(json.loads(text))


def check_congruence(n: int, r: int, a: int) -> bool:
    """(X + a)^n == X^(n mod r) + a  modulo (X^r - 1, n)."""
    if r < 2:
        raise DomainError("r must be >= 2")
    if n < 2:
        raise DomainError("n must be >= 2")
    lhs = powmod(ModPoly.x_plus(n, a), n, ModPoly.x_pow_minus_one(n, r))
    rhs = ModPoly.monomial(n, n % r) + a
    return lhs == rhs


def congruence_results(n: int, r: int, ell: int, chunk: int = 64) -> Iterator[tuple[int, bool]]:
    """(a, check_congruence(n, r, a)) for a = 0..ell, in order.

    Evaluated a chunk of a-values at a time through the batched power, so a
    caller that stops at the first failure does not pay for the rest.
    """
    rhs_shift = n % r
    for start in range(0, ell + 1, chunk):
        a_vals = range(start, min(start + chunk, ell + 1))
        powers = cyclic_powmod_batch([ModPoly.x_plus(n, a) for a in a_vals], n, r)
        for a, lhs in zip(a_vals, powers):
            yield a, lhs == ModPoly.monomial(n, rhs_shift) + a


def aks_is_prime(n: int) -> tuple[Verdict, AksTrace]:
    trace = AksTrace(n)

    def done(v: Verdict) -> tuple[Verdict, AksTrace]:
        trace.verdict = v
        return v, trace

    if n < 0:
        raise DomainError("n must be a natural number")
    witness = is_perfect_power(n)
    if witness is not None:
        trace.perfect_power = witness
        return done(Verdict.COMPOSITE)

    length = bitlen(n)
    trace.order_threshold = length * length
    trace.floor_log_threshold = (length - 1) ** 2
    r, order = find_r(n)
    trace.r, trace.ord_r_n = r, order

    for a in range(1, r + 1):
        g = gcd(a, n)
        if 1 < g < n:
            trace.gcd_hit = (a, g)
            return done(Verdict.COMPOSITE)

    if n <= r:
        trace.small_n_shortcut = True
        return done(Verdict.PRIME)

    ell = isqrt(totient(r)) * (length - 1)
    trace.ell = ell
    # a = 0 is vacuous but kept to match the loop as printed
    for a, ok in congruence_results(n, r, ell):
        trace.congruence_checks.append((a, ok))
        if not ok:
            return done(Verdict.COMPOSITE)
    return done(Verdict.PRIME)


def is_prime(n: int) -> bool:
    return aks_is_prime(n)[0] is Verdict.PRIME


# --- correctness instruments ------------------------------------------

def gflt_check(p: int, a: int, r: int) -> bool:
    """(X + a)^p == X^p + a  modulo (p, X^r - 1)."""
    require_prime(p)
    if gcd(a, p) != 1:
        raise DomainError(f"gcd({a}, {p}) != 1")
    if not 1 <= r < p:
        raise DomainError(f"need 1 <= r < p (r={r}, p={p})")
    modulus = ModPoly.x_pow_minus_one(p, r)
    lhs = powmod(ModPoly.x_plus(p, a), p, modulus)
    rhs = reduce_mod(ModPoly.monomial(p, p % r) + a, modulus)
    return lhs == rhs


def congruence_lemma_check(n: int, p: int, r: int, a: int, trace: AksTrace | None = None) -> bool:
    """(X + a)^(n/p) == X^(n/p) + a  modulo (X^r - 1, p), under the lemma's hypotheses."""
    require_prime(p)
    if n % p:
        raise DomainError(f"{p} does not divide {n}")
    if gcd(a, p) != 1:
        raise DomainError(f"gcd({a}, {p}) != 1")
    if trace is None:
        _, trace = aks_is_prime(n)
    if trace.verdict is not Verdict.PRIME or trace.r != r:
        raise DomainError(f"AKS did not accept {n} at r={r}")
    if mult_order(p, r) <= 1:
        raise DomainError(f"ord_{r}({p}) = 1")
    q = n // p
    modulus = ModPoly.x_pow_minus_one(p, r)
    lhs = powmod(ModPoly.x_plus(p, a), q, modulus)
    return lhs == reduce_mod(ModPoly.monomial(p, q % r) + a, modulus)


def is_introspective(f: ModPoly, p: int, m: int, r: int) -> bool:
    """f(X)^m == f(X^m)  modulo (X^r - 1, p)."""
    require_prime(p)
    if f.modulus != p:
        raise DomainError("f must be a polynomial over Z/p")
    modulus = ModPoly.x_pow_minus_one(p, r)
    return powmod(f, m, modulus) == reduce_mod(f.compose_power(m % r), modulus)


@dataclass(frozen=True)
class GSet:
    residues: frozenset[int]

    @property
    def t(self) -> int:
        return len(self.residues)


def g_set(n: int, p: int, r: int) -> GSet:
    """Residues (n/p)^i * p^j mod r, as the closure of {1} under both generators."""
    require_prime(p)
    if gcd(n, r) != 1:
        raise DomainError(f"gcd({n}, {r}) != 1")
    if n % p:
        raise DomainError(f"{p} does not divide {n}")
    gens = ((n // p) % r, p % r)
    seen = {1 % r}
    frontier = [1 % r]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % r
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return GSet(frozenset(seen))


def _divide_linear(f: ModPoly, a: int) -> ModPoly:
    # exact quotient f / (X + a) by synthetic division at -a
    p = f.modulus
    root = (-a) % p
    c = f.coeffs
    out = [0] * (len(c) - 1)
    carry = 0
    for i in range(len(c) - 1, 0, -1):
        carry = (carry * root + c[i]) % p
        out[i - 1] = carry
    return ModPoly(p, out)


def p_hat_membership(f: ModPoly, t: int, ell: int, fld: QuotientField) -> tuple[int, ...] | None:
    """Exponents e with f == prod_{a<=ell} (X+a)^{e_a} and sum e < t, else None.

    Greedy: repeatedly strip the smallest a with (X + a) | f, at most t - 1 times.
    """
    if f.modulus != fld.p:
        raise DomainError("f must be over the field's prime subfield")
    if f.degree is not None and f.degree >= fld.degree:
        raise DomainError("f must be a reduced residue (deg f < deg h)")
    if f.is_zero():
        return None
    e = [0] * (ell + 1)
    one = ModPoly.const(fld.p, 1)
    for _ in range(t):
        if f == one:
            return tuple(e)
        for a in range(ell + 1):
            if f((-a) % fld.p) == 0:
                f = _divide_linear(f, a)
                e[a] += 1
                break
        else:
            return None
    return None


@dataclass(frozen=True)
class AksContext:
    """Parameters (n, p, r, t, ell, F) that the Lemma F/G instruments run on."""

    n: int
    p: int
    r: int
    t: int
    ell: int
    field: QuotientField

    @property
    def sigma_domain(self) -> int:
        return binom(self.t + self.ell, self.ell + 1)


def choose_p(n: int, r: int) -> int:
    """Largest prime factor p of n with ord_r(p) > 1."""
    for q in reversed(trial_factorize(n).primes()):
        if gcd(q, r) == 1 and mult_order(q, r) > 1:
            return q
    raise PropertyViolation(f"no prime factor of {n} has order > 1 modulo {r}")


def harvest_context(n: int) -> AksContext:
    """Context from an AKS run that accepted n in the congruence loop with r < p."""
    verdict, trace = aks_is_prime(n)
    if verdict is not Verdict.PRIME or trace.small_n_shortcut:
        raise DomainError(f"{n} was not accepted by the congruence loop")
    r = trace.r
    p = choose_p(n, r)
    if r >= p:
        raise DomainError(f"r={r} is not below p={p}")
    t = g_set(n, p, r).t
    ell = trace.ell
    if binom(t + ell, t - 1) != binom(t + ell, ell + 1):
        raise PropertyViolation("binom(t+ell, t-1) != binom(t+ell, ell+1)")
    return AksContext(n, p, r, t, ell, build_cyclotomic_field(p, r))


def lemma_g_fixture(p: int, r: int, ell: int, q_limit: int = 10_000, max_order: int = 20_000) -> AksContext:
    """A composite n = p*q whose parameters satisfy the Lemma G setting.

    No composite survives the congruence loop, so q is picked prime with
    q == p^j (mod |F| - 1); then n/p acts like a power of p on every element
    of F and each P-hat member is a root of Y^{m1} - Y^{m2}.
    """
    from .numtheory import is_prime_trial

    fld = build_cyclotomic_field(p, r)
    if fld.order > max_order:
        raise DomainError(f"field order {fld.order} above {max_order}")
    if ell >= p:
        raise DomainError("ell must be below p so X, ..., X+ell stay distinct")
    group = fld.order - 1
    frob = {pow(p, j, group) for j in range(fld.degree)}
    for q in range(2, q_limit):
        if q != p and q % group in frob and is_prime_trial(q) and gcd(q, r) == 1:
            n = p * q
            return AksContext(n, p, r, g_set(n, p, r).t, ell, fld)
    raise DomainError(f"no suitable q below {q_limit}")


def tau(x: int, ctx: AksContext) -> ModPoly:
    """prod_a (X + a)^{e_a} mod (h, p) for e = sigma(t, ell, x)."""
    e = sigma(ctx.t, ctx.ell, x)
    if sum(e) >= ctx.t:
        raise PropertyViolation(f"exponent sum {sum(e)} >= t={ctx.t}")
    p = ctx.p
    acc = [1]
    for a, k in enumerate(e):
        for _ in range(k):
            # acc * (X + a), one linear factor at a time
            acc = [(lo + a * hi) % p for lo, hi in zip([0] + acc, acc + [0])]
    return ctx.field.reduce(ModPoly(p, acc))


@lru_cache(maxsize=32)
def _ghat_collision(ctx: AksContext) -> tuple[int, int]:
    k = isqrt(ctx.t)
    q = ctx.n // ctx.p
    seen: dict[int, int] = {}
    for l in range(1, (k + 1) ** 2 + 1):
        i, j = grid_rank(k, l)
        m = q**i * ctx.p**j
        res = m % ctx.r
        if res in seen and seen[res] != m:
            m1, m2 = max(m, seen[res]), min(m, seen[res])
            if m1 > ctx.n**k:
                raise PropertyViolation(f"m1={m1} exceeds n^floor(sqrt t)")
            return m1, m2
        seen.setdefault(res, m)
    raise PropertyViolation("no collision among (n/p)^i p^j modulo r")


@lru_cache(maxsize=32)
def _ghat_roots(ctx: AksContext) -> dict:
    m1, m2 = _ghat_collision(ctx)
    return rub_index(ctx.field, SparsePoly(ctx.p, ((m1, 1), (m2, ctx.p - 1))))


def ghat(f: ModPoly, ctx: AksContext) -> int:
    """Index of f among the roots of Y^{m1} - Y^{m2} in F, in canonical order."""
    if all(q == ctx.p for q in trial_factorize(ctx.n).primes()):
        raise DomainError(f"{ctx.n} is a power of {ctx.p}")
    f = ctx.field.reduce(f)
    if p_hat_membership(f, ctx.t, ctx.ell, ctx.field) is None:
        raise DomainError(f"{f} is not in P-hat")
    roots = _ghat_roots(ctx)
    if f not in roots:
        raise PropertyViolation(f"{f} is not a root of Y^m1 - Y^m2")
    return roots[f]


def ghat_parameters(ctx: AksContext) -> tuple[int, int]:
    """(m1, m2) used by ghat for this context."""
    return _ghat_collision(ctx)


@dataclass(frozen=True)
class ChainStep:
    label: str
    lhs: int
    rhs: int
    strict: bool

    @property
    def holds(self) -> bool:
        return self.lhs > self.rhs if self.strict else self.lhs >= self.rhs


@dataclass(frozen=True)
class ChainResult:
    steps: tuple[ChainStep, ...]
    # binom(t+ell, t-1) >= 2 n^floor(sqrt t), the inequality the chain is meant to give
    end_to_end: bool

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.steps)

    @property
    def failed_step(self) -> str | None:
        for s in self.steps:
            if not s.holds:
                return s.label
        return None


def lemma_h_inequality_chain(n: int, r: int, t: int, ell: int) -> ChainResult:
    """Evaluate each inequality of the counting contradiction exactly.

    With s = floor(sqrt t) and L = floor(log n):
    binom(t+ell, t-1) >= binom(ell+1+sL, sL) >= binom(2sL+1, sL) > 2^(sL+2) >= 2 n^s.
    Raises DomainError when sL < 6.
    """
    s = isqrt(t)
    k = s * (bitlen(n) - 1)
    if k < 6:
        raise DomainError(f"floor(sqrt t) * floor(log n) = {k} < 6")
    a = binom(t + ell, t - 1)
    b = binom(ell + 1 + k, k)
    c = binom(2 * k + 1, k)
    d = 2 ** (k + 2)
    e = 2 * n**s
    steps = (
        ChainStep("binom(t+l,t-1) >= binom(l+1+sL,sL)", a, b, False),
        ChainStep("binom(l+1+sL,sL) >= binom(2sL+1,sL)", b, c, False),
        ChainStep("binom(2sL+1,sL) > 2^(sL+2)", c, d, True),
        ChainStep("2^(sL+2) >= 2n^s", d, e, False),
    )
    return ChainResult(steps, a >= e)
