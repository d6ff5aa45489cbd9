"""Property suites run by ``aksverify verify``.

A suite is a deterministic case generator plus a pure check. The check returns
None on success or an (expected, got) pair; the runner shards checks across a
process pool and reports failures in case order, whatever the completion order.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, factorial, gcd, isqrt
from typing import Any, Callable, Iterable

from . import aks, combinat, fastdiv, numtheory, polyring
from .errors import DomainError, PropertyViolation
from .polyring import ModPoly

Outcome = tuple[Any, Any] | None


@dataclass
class Failure:
    inputs: Any
    expected: Any
    got: Any


@dataclass
class VerifyReport:
    suite: str
    ranges: dict[str, int]
    cases_run: int = 0
    failures: list[Failure] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def render(self, max_failures: int = 20) -> str:
        rng = " ".join(f"{k}={v}" for k, v in self.ranges.items())
        lines = [
            f"suite {self.suite} [{rng}]",
            f"  cases run: {self.cases_run}",
            f"  failures:  {len(self.failures)}",
            f"  elapsed:   {self.elapsed:.2f}s",
        ]
        for f in self.failures[:max_failures]:
            lines.append(f"  FAIL {f.inputs}: expected {f.expected}, got {f.got}")
        if len(self.failures) > max_failures:
            lines.append(f"  ... {len(self.failures) - max_failures} more")
        lines.append("  PASS" if self.passed else "  FAIL")
        return "\n".join(lines)


@dataclass(frozen=True)
class Suite:
    name: str
    # range flag name -> default value; every flag listed here is honored
    flags: dict[str, int]
    cases: Callable[[dict[str, int], random.Random], Iterable[Any]]
    check: Callable[[Any], Outcome]


def _safe_check(args: tuple[Callable[[Any], Outcome], Any]) -> Outcome:
    check, case = args
    try:
        return check(case)
    except (PropertyViolation, DomainError, ArithmeticError) as exc:
        return ("no error", f"{type(exc).__name__}: {exc}")


def run_suite(name: str, ranges: dict[str, int] | None = None, seed: int = 0, jobs: int = 1) -> VerifyReport:
    suite = SUITES[name]
    given = ranges or {}
    unknown = set(given) - set(suite.flags)
    if unknown:
        raise DomainError(f"suite {name} does not take {sorted(unknown)}")
    cfg = {k: given.get(k, v) for k, v in suite.flags.items()}
    report = VerifyReport(name, cfg)
    start = time.perf_counter()
    cases = list(suite.cases(cfg, random.Random(seed)))
    work = [(suite.check, c) for c in cases]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_safe_check, work, chunksize=max(1, len(work) // (8 * jobs))))
    else:
        outcomes = [_safe_check(w) for w in work]
    report.cases_run = len(cases)
    report.failures = [Failure(c, o[0], o[1]) for c, o in zip(cases, outcomes) if o is not None]
    report.elapsed = time.perf_counter() - start
    return report


def _expect(expected: Any, got: Any) -> Outcome:
    return None if expected == got else (expected, got)


def _primes(cfg: dict[str, int], key: str = "max_p") -> list[int]:
    return numtheory.primes_up_to(cfg[key])


# --- integer side --------------------------------------------------------

def _oracle_check(n: int) -> Outcome:
    return _expect(numtheory.is_prime_trial(n), aks.is_prime(n))


def _legendre_cases(cfg, rng):
    return [(p, n) for p in _primes(cfg) for n in range(1, cfg["max_n"] + 1)]


def _legendre_check(case) -> Outcome:
    p, n = case
    direct = sum(numtheory.padic_valuation(p, i) for i in range(1, n + 1))
    return _expect(direct, numtheory.legendre_valuation(p, n))


def _lcm_check(m: int) -> Outcome:
    value = numtheory.lcm_range(m)
    if any(value % i for i in range(1, m + 1)):
        return ("all i <= m divide lcm", value)
    return _expect(True, 2 ** (m // 2) <= value)


def _lemma_d_check(x: int) -> Outcome:
    length = numtheory.bitlen(x)
    r, order = numtheory.find_r(x)
    if r > 2 * length**6:
        return (f"r <= {2 * length ** 6}", r)
    naive = numtheory.mult_order(x, r)
    if naive != order or naive <= length * length:
        return (f"ord_r(x) = {order} > {length * length}", naive)
    for s in range(2, r):
        if gcd(s, x) == 1 and numtheory.mult_order(x, s) > length * length:
            return (f"smallest r is {r}", s)
    return None


def _totient_check(r: int) -> Outcome:
    return _expect(r, sum(numtheory.totient(d) for d in numtheory.divisors(r)))


# --- polynomial side -----------------------------------------------------

def _cyclotomic_cases(cfg, rng):
    return [(p, r) for p in _primes(cfg) for r in range(1, p)]


def _cyclotomic_check(case) -> Outcome:
    p, r = case
    prod = ModPoly.const(p, 1)
    for d in numtheory.divisors(r):
        prod = prod * polyring.cyclotomic(p, d)
    if prod != ModPoly.x_pow_minus_one(p, r):
        return ("prod Q_d == X^r - 1", str(prod))
    q = polyring.cyclotomic(p, r)
    if q.degree != numtheory.totient(r):
        return (f"deg Q_r = {numtheory.totient(r)}", q.degree)
    for s in range(1, r):
        g = polyring.poly_gcd(q, ModPoly.x_pow_minus_one(p, s))
        if g.degree != 0:
            return (f"gcd(Q_r, X^{s} - 1) = 1", str(g))
    return None


_XK_PRIMES = (2, 3, 5, 7, 11, 13)


def _xk_cases(cfg, rng):
    top = cfg["max_r"]
    return [(p, k, l) for p in _XK_PRIMES for k in range(1, top + 1) for l in range(1, top + 1)]


def _xk_check(case) -> Outcome:
    p, k, l = case
    xk, xl = ModPoly.x_pow_minus_one(p, k), ModPoly.x_pow_minus_one(p, l)
    if l % k == 0 and not polyring.divides(xk, xl):
        return (f"X^{k} - 1 | X^{l} - 1", "remainder nonzero")
    h, u, v = polyring.poly_xgcd(xk, xl)
    if u * xk + v * xl != h:
        return ("h = u f + v g", str(u * xk + v * xl))
    return _expect(str(ModPoly.x_pow_minus_one(p, gcd(k, l))), str(h))


def _gflt_cases(cfg, rng):
    return [(p, a, r) for p in _primes(cfg) for a in range(1, p) for r in range(1, p)]


def _gflt_check(case) -> Outcome:
    return _expect(True, aks.gflt_check(*case))


def _division_cases(cfg, rng):
    cases = []
    primes_small = numtheory.primes_up_to(1000)
    for i in range(cfg["max_n"]):
        # mix of tiny and word-sized primes, all below 2^31
        if i % 2:
            p = rng.choice(primes_small)
        else:
            p = rng.randrange(3, 1 << 31) | 1
            while not numtheory.is_prime_trial(p):
                p = rng.randrange(3, 1 << 31) | 1
        dp = rng.randrange(0, cfg["max_m"] + 1)
        ds = rng.randrange(0, cfg["max_m"] + 1)
        P = ModPoly(p, [rng.randrange(p) for _ in range(dp + 1)])
        S = ModPoly(p, [rng.randrange(p) for _ in range(ds)] + [rng.randrange(1, p)])
        cases.append(("divide", P, S))
    for _ in range(max(1000, cfg["max_n"] // 10)):
        p = rng.choice(primes_small)
        k = rng.randrange(0, min(cfg["max_m"], 64) + 1)
        s = ModPoly(p, [1] + [rng.randrange(p) for _ in range(rng.randrange(0, k + 1))])
        cases.append(("inverse", s, k))
    return cases


def _division_check(case) -> Outcome:
    kind, a, b = case
    if kind == "divide":
        want = polyring.poly_long_div(a, b)
        got = fastdiv.ks_divide(a, b)
        return _expect(want, (got.quotient, got.remainder))
    geo = fastdiv.truncated_geom_inverse(a, b)
    newton = fastdiv.newton_inverse(a, b)
    if (a * geo).truncate(b + 1) != ModPoly.const(a.modulus, 1):
        return ("s * inverse == 1 mod X^(k+1)", str(a * geo))
    return _expect(geo, newton)


def _rub_cases(cfg, rng):
    primes = _primes(cfg)
    out = []
    for _ in range(cfg["max_n"]):
        p = rng.choice(primes)
        deg = rng.randrange(0, 11)
        coeffs = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
        out.append(ModPoly(p, coeffs))
    return out


def _rub_check(g: ModPoly) -> Outcome:
    p = g.modulus
    idx = polyring.rub_index(polyring.PrimeField(p), g)
    roots = [a for a in range(p) if g(a) == 0]
    if sorted(idx) != roots:
        return (roots, sorted(idx))
    values = [idx[a] for a in roots]
    if values != list(range(1, len(roots) + 1)):
        return ("indices 1..#roots in element order", values)
    if values and max(values) > g.degree:
        return (f"max index <= {g.degree}", max(values))
    return None


# --- Lemma E: introspectivity closure -----------------------------------

def _introspective_candidates(p: int, rng: random.Random) -> list[int]:
    out = []
    for _ in range(4):
        base = p ** rng.randrange(0, 4)
        out.append(base)
        out.append(base * (1 + rng.randrange(1, 6) * (p - 1)))
    return out


def _random_f(p: int, r: int, rng: random.Random) -> ModPoly:
    kind = rng.randrange(3)
    if kind == 0:
        return ModPoly(p, [rng.randrange(p) for _ in range(rng.randrange(1, r + 1))])
    if kind == 1:
        return ModPoly.monomial(p, rng.randrange(r), rng.randrange(1, p))
    return ModPoly.x_plus(p, rng.randrange(p)) * ModPoly.x_plus(p, rng.randrange(p))


def _intro_cases(cfg, rng):
    primes = [q for q in _primes(cfg) if q >= 3]
    out = []
    tries = 0
    while len(out) < cfg["max_n"]:
        tries += 1
        if tries > 200 * cfg["max_n"]:
            raise PropertyViolation("could not sample enough introspective tuples")
        p = rng.choice(primes)
        r = rng.randrange(2, 16)
        f, g = _random_f(p, r, rng), _random_f(p, r, rng)
        ms = _introspective_candidates(p, rng)
        m, m2 = rng.choice(ms), rng.choice(ms)
        # both hypotheses established by direct check before the case is kept
        if (aks.is_introspective(f, p, m, r) and aks.is_introspective(f, p, m2, r)
                and aks.is_introspective(g, p, m, r)):
            out.append((f, g, m, m2, p, r))
    return out


def _intro_check(case) -> Outcome:
    f, g, m, m2, p, r = case
    if not aks.is_introspective(f, p, m * m2, r):
        return ("m*m' introspective for f", False)
    return _expect(True, aks.is_introspective(f * g, p, m, r))


# --- combinatorics -------------------------------------------------------

def _cns_cases(cfg, rng):
    return [(k, m) for m in range(cfg["max_m"] + 1) for k in range(m + 1)]


def _cns_check(case) -> Outcome:
    k, m = case
    total = comb(m, k)
    masks = [combinat.cns_rank_to_subset(k, m, i) for i in range(1, total + 1)]
    target = {x for x in range(1 << m) if bin(x).count("1") == k}
    if set(masks) != target or len(set(masks)) != total:
        return (f"bijection onto {len(target)} masks", f"{len(set(masks))} distinct")
    for i, x in enumerate(masks, 1):
        if combinat.subset_to_rank(k, m, x) != i:
            return (i, combinat.subset_to_rank(k, m, x))
    return None


_SIGMA_DOMAIN_CAP = 10**5


def _sigma_cases(cfg, rng):
    cases: list[Any] = []
    top = cfg["max_m"]
    for t in range(1, top + 1):
        for ell in range(0, top + 1 - t):
            if comb(t + ell, ell + 1) <= _SIGMA_DOMAIN_CAP:
                cases.append(("sigma", t, ell))
    # distinct multisets give distinct products over Z/p with p above every element
    for size in range(1, 4):
        cases.append(("products", 7, size))
    return cases


def _sigma_check(case) -> Outcome:
    kind, a, b = case
    if kind == "sigma":
        t, ell = a, b
        seen = set()
        for i in range(1, comb(t + ell, ell + 1) + 1):
            e = combinat.sigma(t, ell, i)
            if sum(e) > t - 1:
                return (f"sum e <= {t - 1}", sum(e))
            seen.add(e)
        return _expect(comb(t + ell, ell + 1), len(seen))
    p, size = a, b
    products = set()
    count = 0
    for u in combinations_with_replacement(range(p - 1), size):
        prod = ModPoly.const(p, 1)
        for x in u:
            prod = prod * ModPoly.x_plus(p, x)
        products.add(prod)
        count += 1
    return _expect(count, len(products))


def _grid_check(k: int) -> Outcome:
    pts = [combinat.grid_rank(k, l) for l in range(1, (k + 1) ** 2 + 1)]
    want = [(i, j) for i in range(k + 1) for j in range(k + 1)]
    return _expect(want, pts)


def _pascal_cases(cfg, rng):
    return [(x, y) for x in range(cfg["max_m"] + 1) for y in range(x + 2)]


def _pascal_check(case) -> Outcome:
    x, y = case
    if y > x:
        return _expect(0, combinat.binom(x, y))
    if x >= 1 and not combinat.pascal_identity(x, y):
        return ("pascal", False)
    if combinat.binom(x, y) * factorial(y) * factorial(x - y) != factorial(x):
        return ("factorial identity", False)
    return None


def _binomial_cases(cfg, rng):
    out = []
    for b in range(cfg["max_m"] + 1):
        m = rng.randrange(2, 10**6)
        out.append((rng.randrange(m), b, m))
    return out


def _binomial_check(case) -> Outcome:
    a, b, m = case
    iterated = ModPoly.const(m, 1)
    for _ in range(b):
        iterated = iterated * ModPoly.x_plus(m, a)
    return _expect(iterated, combinat.binomial_expand(a, b, m))


def _binom_div_cases(cfg, rng):
    return [(p, m) for p in _primes(cfg) for m in range(1, p)]


def _binom_div_check(case) -> Outcome:
    p, m = case
    return _expect(0, combinat.binom(p, m) % p)


# --- proof instruments on harvested runs --------------------------------

@lru_cache(maxsize=4096)
def _trace(n: int) -> aks.AksTrace:
    return aks.aks_is_prime(n)[1]


@lru_cache(maxsize=256)
def _context(n: int) -> aks.AksContext:
    return aks.harvest_context(n)


def _accepted_primes(limit: int) -> list[int]:
    out = []
    for n in numtheory.primes_up_to(limit):
        trace = _trace(n)
        verdict = trace.verdict
        if verdict is aks.Verdict.PRIME and not trace.small_n_shortcut:
            out.append(n)
    return out


def _congruence_cases(cfg, rng):
    out = []
    for n in _accepted_primes(cfg["max_n"]):
        trace = _trace(n)
        for a in range(1, min(trace.ell, n - 1) + 1):
            out.append((n, n, trace.r, a))
    return out


def _congruence_check(case) -> Outcome:
    n, p, r, a = case
    trace = _trace(n)
    if not all(ok for _, ok in trace.congruence_checks):
        return ("all line-6 checks pass for prime n", trace.congruence_checks)
    return _expect(True, aks.congruence_lemma_check(n, p, r, a, trace))


TAU_PAIRS = 200


def _lemma_f_cases(cfg, rng):
    out = []
    for n in _accepted_primes(cfg["max_n"]):
        ctx = _context(n)
        size = ctx.sigma_domain
        pairs = []
        while len(pairs) < TAU_PAIRS:
            x, y = rng.randrange(1, size + 1), rng.randrange(1, size + 1)
            if x != y:
                pairs.append((x, y))
        out.append((n, tuple(pairs)))
    return out


def _lemma_f_check(case) -> Outcome:
    n, pairs = case
    ctx = _context(n)
    for x, y in pairs:
        if aks.tau(x, ctx) == aks.tau(y, ctx):
            return (f"tau({x}) != tau({y})", "collision")
    return None


def _lemma_g_params(max_p: int) -> list[tuple[int, int, int]]:
    out = []
    for p in numtheory.primes_up_to(max_p):
        for r in range(2, p):
            if (p - 1) % r == 0 or gcd(p, r) != 1:
                continue
            if p ** numtheory.mult_order(p, r) > 20_000:
                continue
            out.append((p, r, min(p - 1, 3)))
    return out


def _lemma_g_cases(cfg, rng):
    out = []
    for p, r, ell in _lemma_g_params(cfg["max_p"]):
        ctx = aks.lemma_g_fixture(p, r, ell)
        members = set()
        for _ in range(60):
            budget = rng.randrange(0, ctx.t)
            e = [0] * (ell + 1)
            for _ in range(budget):
                e[rng.randrange(ell + 1)] += 1
            members.add(tuple(e))
        out.append((p, r, ell, tuple(sorted(members))))
    return out


def _lemma_g_check(case) -> Outcome:
    p, r, ell, exps = case
    ctx = aks.lemma_g_fixture(p, r, ell)
    m1, m2 = aks.ghat_parameters(ctx)
    if m1 > ctx.n ** isqrt(ctx.t):
        return (f"m1 <= n^{isqrt(ctx.t)}", m1)
    index: dict[ModPoly, int] = {}
    for e in exps:
        f = ModPoly.const(p, 1)
        for a, k in enumerate(e):
            f = f * ModPoly.x_plus(p, a) ** k
        f = ctx.field.reduce(f)
        if ctx.field.pow(f, m1) != ctx.field.pow(f, m2):
            return ("f^m1 == f^m2 in F", str(f))
        g = aks.ghat(f, ctx)
        if g > m1:
            return (f"ghat <= {m1}", g)
        index[f] = g
    if len(set(index.values())) != len(index):
        return ("ghat injective", "collision")
    return None


def _lemma_h_cases(cfg, rng):
    out: list[Any] = []
    for n in _accepted_primes(cfg["max_n"]):
        trace = _trace(n)
        p = aks.choose_p(n, trace.r)
        t = aks.g_set(n, p, trace.r).t
        if isqrt(t) * (numtheory.bitlen(n) - 1) >= 6:
            out.append(("chain", n, trace.r, t, trace.ell))
    out.append(("monotone", 40))
    out.append(("central", 64))
    return out


def _lemma_h_check(case) -> Outcome:
    kind = case[0]
    if kind == "chain":
        _, n, r, t, ell = case
        if t <= numtheory.bitlen(n) ** 2:
            return (f"t > {numtheory.bitlen(n) ** 2}", t)
        res = aks.lemma_h_inequality_chain(n, r, t, ell)
        if not res.end_to_end:
            return ("binom(t+l, t-1) >= 2 n^s", False)
        return None if res.holds else ("all four steps hold", f"fails at {res.failed_step}")
    if kind == "monotone":
        top = case[1]
        for k in range(top + 1):
            for s in range(k + 1):
                for l in range(top + 1):
                    if not combinat.binom_monotone(k, l, s):
                        return ("binom(k+l,k) >= binom(s+l,s)", (k, l, s))
        return None
    for k in range(6, case[1] + 1):
        if not combinat.central_binom_bound(k):
            return ("binom(2k+1,k) > 2^(k+2)", k)
    return None


SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("oracle", {"max_n": 20000}, lambda c, g: range(2, c["max_n"] + 1), _oracle_check),
    Suite("legendre", {"max_n": 500, "max_p": 100}, _legendre_cases, _legendre_check),
    Suite("lcm-bound", {"max_m": 2000}, lambda c, g: range(1, c["max_m"] + 1), _lcm_check),
    Suite("lemma-d", {"max_n": 5000}, lambda c, g: range(2, c["max_n"] + 1), _lemma_d_check),
    Suite("totient-sum", {"max_r": 2000}, lambda c, g: range(1, c["max_r"] + 1), _totient_check),
    Suite("cyclotomic", {"max_p": 60}, _cyclotomic_cases, _cyclotomic_check),
    Suite("xk-identities", {"max_r": 40}, _xk_cases, _xk_check),
    Suite("gflt", {"max_p": 31}, _gflt_cases, _gflt_check),
    Suite("division", {"max_n": 10000, "max_m": 256}, _division_cases, _division_check),
    Suite("cns", {"max_m": 16}, _cns_cases, _cns_check),
    Suite("sigma", {"max_m": 20}, _sigma_cases, _sigma_check),
    Suite("grid", {"max_m": 40}, lambda c, g: range(0, c["max_m"] + 1), _grid_check),
    Suite("rub", {"max_n": 1000, "max_p": 101}, _rub_cases, _rub_check),
    Suite("introspectivity", {"max_n": 500, "max_p": 31}, _intro_cases, _intro_check),
    Suite("congruence", {"max_n": 1000}, _congruence_cases, _congruence_check),
    Suite("lemma-f", {"max_n": 400}, _lemma_f_cases, _lemma_f_check),
    Suite("lemma-g", {"max_p": 13}, _lemma_g_cases, _lemma_g_check),
    Suite("lemma-h", {"max_n": 2000}, _lemma_h_cases, _lemma_h_check),
    Suite("pascal", {"max_m": 64}, _pascal_cases, _pascal_check),
    Suite("binomial", {"max_m": 64}, _binomial_cases, _binomial_check),
    Suite("binom-div", {"max_p": 200}, _binom_div_cases, _binom_div_check),
]}
