"""Kung-Sieveking polynomial division by reversal and truncated inversion.

For P of degree n and S of degree m, reversing both turns the quotient into
the low n-m+1 coefficients of rev(P) * rev(S)^{-1} mod X^{n-m+1}. The inverse
of rev(S) can be taken as the truncated geometric series sum (1 - rev(S))^i,
or computed by Newton's precision doubling; both give the same power series.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field

from .errors import DomainError, PropertyViolation
from .polyring import ModPoly, _inverse_mod, poly_long_div, require_prime


@dataclass(frozen=True)
class DivisionResult:
    quotient: ModPoly
    remainder: ModPoly
    method: str


def reverse(f: ModPoly, n: int) -> ModPoly:
    """Coefficient reversal in a degree-n frame: X^n * f(1/X)."""
    if f.degree is not None and f.degree > n:
        raise DomainError(f"degree {f.degree} exceeds frame {n}")
    padded = list(f.coeffs) + [0] * (n + 1 - len(f.coeffs))
    return ModPoly(f.modulus, padded[::-1])


def _check_unit_constant(s_rev: ModPoly) -> None:
    if s_rev[0] != 1:
        raise DomainError("truncated inverse needs constant term 1")


def truncated_geom_inverse(s_rev: ModPoly, k: int) -> ModPoly:
    """sum_{i=0}^{k} (1 - s_rev)^i mod X^{k+1}, accumulated term by term."""
    _check_unit_constant(s_rev)
    m = s_rev.modulus
    one = ModPoly.const(m, 1)
    step = (one - s_rev).truncate(k + 1)
    term, total = one, one
    for _ in range(k):
        term = (term * step).truncate(k + 1)
        total = total + term
    return total


def newton_inverse(s_rev: ModPoly, k: int) -> ModPoly:
    """Inverse of s_rev mod X^{k+1} via x <- x*(2 - s*x), doubling precision."""
    _check_unit_constant(s_rev)
    m = s_rev.modulus
    x = ModPoly.const(m, 1)
    prec = 1
    target = k + 1
    while prec < target:
        prec = min(2 * prec, target)
        sx = (s_rev.truncate(prec) * x).truncate(prec)
        x = (x * (2 - sx)).truncate(prec)
    return x


def ks_divide(P: ModPoly, S: ModPoly, inverse: str = "newton") -> DivisionResult:
    """Divide P by S over a prime field via reversal; P = S*Q + R, deg R < deg S."""
    P._check(S)
    if S.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    m = P.modulus
    n, d = P.degree, S.degree
    if n is None or n < d:
        return DivisionResult(ModPoly(m), P, "kung-sieveking")
    lead_inv = _inverse_mod(S.lead, m)
    monic_s = S * lead_inv
    k = n - d
    s_rev = reverse(monic_s, d)
    if inverse == "newton":
        s_inv = newton_inverse(s_rev, k)
    elif inverse == "geometric":
        s_inv = truncated_geom_inverse(s_rev, k)
    else:
        raise ValueError(f"unknown inverse method {inverse!r}")
    h = (reverse(P, n).truncate(k + 1) * s_inv).truncate(k + 1)
    q_monic = reverse(h, k)
    remainder = P - monic_s * q_monic
    # Q for the original S: S = lead * monic_s, so Q = q_monic / lead
    return DivisionResult(q_monic * lead_inv, remainder, "kung-sieveking")


def schoolbook_divide(P: ModPoly, S: ModPoly) -> DivisionResult:
    q, r = poly_long_div(P, S)
    return DivisionResult(q, r, "schoolbook")


@dataclass
class BenchRow:
    degree: int
    schoolbook_ns: int
    ks_ns: int
    ratio: float


@dataclass
class BenchReport:
    modulus: int
    rows: list[BenchRow] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps({"modulus": self.modulus, "rows": [asdict(r) for r in self.rows]}, indent=2)

    def to_csv(self) -> str:
        lines = ["degree,schoolbook_ns,ks_ns,ratio"]
        lines += [f"{r.degree},{r.schoolbook_ns},{r.ks_ns},{r.ratio:.4f}" for r in self.rows]
        return "\n".join(lines)


def _random_poly(rng: random.Random, m: int, deg: int, monic: bool = False) -> ModPoly:
    c = [rng.randrange(m) for _ in range(deg)] + [1 if monic else rng.randrange(1, m)]
    return ModPoly(m, c)


def bench_divide(degrees: list[int], modulus: int, trials: int, seed: int = 0) -> BenchReport:
    """Time schoolbook vs Kung-Sieveking division.

    At each degree d the dividend has degree d and the divisor degree d // 2.
    Every trial cross-checks the two results; any disagreement raises.
    """
    require_prime(modulus)
    if list(degrees) != sorted(degrees):
        raise DomainError("degrees must be ascending")
    rng = random.Random(seed)
    report = BenchReport(modulus)
    for deg in degrees:
        t_school = t_ks = 0
        for _ in range(trials):
            P = _random_poly(rng, modulus, deg)
            S = _random_poly(rng, modulus, max(deg // 2, 0))
            t0 = time.perf_counter_ns()
            a = schoolbook_divide(P, S)
            t1 = time.perf_counter_ns()
            b = ks_divide(P, S)
            t2 = time.perf_counter_ns()
            if (a.quotient, a.remainder) != (b.quotient, b.remainder):
                raise PropertyViolation(f"division methods disagree at degree {deg}")
            t_school += t1 - t0
            t_ks += t2 - t1
        s_mean = t_school // max(trials, 1)
        k_mean = t_ks // max(trials, 1)
        report.rows.append(BenchRow(deg, s_mean, k_mean, s_mean / k_mean if k_mean else float("inf")))
    return report
