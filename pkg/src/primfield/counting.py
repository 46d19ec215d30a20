"""Exact counts of monic polynomials by factor structure, with certified
analytic companions.

The central object is the table Pi'_{q,k}(n): the number of squarefree
monic polynomials of degree n over F_q with exactly k distinct
irreducible factors, built exactly from the generating product
prod_d (1 + u x^d)^{pi'_q(d)}.  Around it sit certified-bracket
evaluations of the degree-weighted singular series G, the truncated
Mertens product, Poisson-style tail estimates, and verifiers for the
uniform upper bound and the factor-count recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from mpmath import iv

from .brackets import (DEFAULT_PRECISION_BITS, BracketedValue, iv_from_fraction,
                       precision)
from .errors import BudgetError, PrecisionError, UsageError
from .fieldpoly import _check_prime
from .irreducibles import pi_prime

def monic_count(q: int, n: int) -> int:
    """Number of monic polynomials of degree exactly n."""
    _check_prime(q)
    if n < 0:
        raise UsageError("degree must be >= 0")
    return q**n


def monic_cumulative(q: int, n: int) -> int:
    """M_q(n): number of monic polynomials of degree <= n."""
    _check_prime(q)
    if n < 0:
        raise UsageError("degree must be >= 0")
    return (q**(n + 1) - 1) // (q - 1)


# ----------------------------------------------------------------------
# Squarefree factor-count table
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CountTable:
    """rows[n][k] = squarefree monic, degree n, k distinct irreducible factors.

    excluded_degrees lists (degree, count) pairs of irreducibles struck
    from the field before counting; with exclusions the table counts only
    polynomials coprime to the struck set.
    """

    q: int
    N: int
    rows: tuple[tuple[int, ...], ...]
    excluded_degrees: tuple[tuple[int, int], ...] = ()

    def count(self, n: int, k: int) -> int:
        if not 0 <= n <= self.N:
            raise UsageError(f"n={n} outside table range 0..{self.N}")
        if not 0 <= k <= n:
            return 0
        return self.rows[n][k]

    def row_total(self, n: int) -> int:
        return sum(self.rows[n])

    def write_csv(self, fh) -> None:
        fh.write("n,k,count\n")
        for n, row in enumerate(self.rows):
            for k, v in enumerate(row):
                fh.write(f"{n},{k},{v}\n")


_TABLE_CACHE: dict[tuple, CountTable] = {}


def build_count_table(q: int, N: int,
                      excluded_degrees: Mapping[int, int] | None = None,
                      max_bytes: int = 2**31) -> CountTable:
    """Exact Pi'_{q,k}(n) for 0 <= k <= n <= N by degree-wise convolution.

    Degree d contributes a factor (1 + u x^d)^m with m = pi'_q(d) minus
    any exclusions: choosing j of the m irreducibles adds degree j*d and
    factor count j with multiplicity C(m, j).
    """
    _check_prime(q)
    if N < 0:
        raise UsageError("table size must be >= 0")
    excl = tuple(sorted((d, c) for d, c in (excluded_degrees or {}).items() if c))
    key = (q, N, excl)
    got = _TABLE_CACHE.get(key)
    if got is not None:
        return got
    # entry count N^2/2, entries up to q^N: rough byte budget check
    est_bytes = (N + 1) * (N + 2) // 2 * (28 + int(N * math.log2(q)) // 8)
    if est_bytes > max_bytes:
        raise BudgetError(f"table q={q}, N={N} needs ~{est_bytes} bytes"
                          f" (budget {max_bytes})")
    for d, c in excl:
        if not 1 <= d <= N:
            raise UsageError(f"excluded degree {d} outside 1..{N}")
        if c > pi_prime(q, d):
            raise UsageError(f"cannot exclude {c} irreducibles of degree {d}")
    excl_map = dict(excl)
    rows = [[0] * (n + 1) for n in range(N + 1)]
    rows[0][0] = 1
    for d in range(1, N + 1):
        m = pi_prime(q, d) - excl_map.get(d, 0)
        if m == 0:
            continue
        jmax = min(N // d, m)
        binom = [math.comb(m, j) for j in range(jmax + 1)]
        for n in range(N, d - 1, -1):
            dst = rows[n]
            for j in range(1, min(n // d, jmax) + 1):
                src = rows[n - j * d]
                c = binom[j]
                lo = j
                hi = n - j * (d - 1)
                dst[lo:hi + 1] = [x + c * s for x, s in zip(dst[lo:hi + 1], src)]
    table = CountTable(q, N, tuple(tuple(r) for r in rows), excl)
    if not excl:
        for n in range(2, N + 1):
            assert table.row_total(n) == q**n - q**(n - 1), (q, n)
        if N >= 1:
            assert table.row_total(1) == q
            for n in range(1, N + 1):
                assert table.rows[n][1] == pi_prime(q, n), (q, n)
    _TABLE_CACHE[key] = table
    return table


# ----------------------------------------------------------------------
# Uniform factor-count bound and recurrence
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class InequalityReport:
    """Outcome of checking one inequality family over a (n, k) range."""

    name: str
    q: int
    N: int
    cells: int
    violations: tuple[tuple, ...]
    min_log_margin: float

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "q": self.q,
            "N": self.N,
            "cells": self.cells,
            "violation_count": len(self.violations),
            "violations": [[str(x) for x in v] for v in self.violations[:20]],
            "min_log_margin": self.min_log_margin,
            "ok": self.ok,
        }


def _log_weight_dyadic_lower(n: int, precision_bits: int) -> tuple[int, int]:
    """(num, s) with num/2^s <= log n + 2 - log 2, a certified dyadic bound."""
    with precision(precision_bits):
        w = iv.log(iv.mpf(n)) + 2 - iv.log(iv.mpf(2))
        lo = BracketedValue.from_iv(w).lo
    num, den = lo.numerator, lo.denominator
    assert num > 0 and den & (den - 1) == 0
    return num, den.bit_length() - 1


def verify_hr_bound(q: int, N: int, table: CountTable | None = None,
                    precision_bits: int = 96) -> InequalityReport:
    """Check Pi'_{q,k}(n) <= (q^n/n) (log n + 2 - log 2)^(k-1)/(k-1)!
    for all 1 <= k <= n <= N.

    The right side is replaced by a certified rational lower bound (the
    log weight rounded down), so every pass is a rigorous instance of the
    inequality; comparisons are pure integer arithmetic.
    """
    if table is None:
        table = build_count_table(q, N)
    if table.q != q or table.N < N or table.excluded_degrees:
        raise UsageError("table does not cover the requested range")
    violations: list[tuple] = []
    min_margin = math.inf
    cells = 0
    for n in range(1, N + 1):
        num, s = _log_weight_dyadic_lower(n, precision_bits)
        qn = q**n
        apow = 1          # num^(k-1)
        fact = 1          # (k-1)!
        shift = 0         # s*(k-1)
        row = table.rows[n]
        for k in range(1, n + 1):
            lhs = row[k] * n * fact << shift
            rhs = qn * apow
            cells += 1
            if lhs > rhs:
                violations.append((n, k, row[k]))
            elif row[k]:
                margin = math.log(rhs) - math.log(lhs)
                if margin < min_margin:
                    min_margin = margin
            apow *= num
            fact *= k
            shift += s
    return InequalityReport("uniform-factor-count-bound", q, N, cells,
                            tuple(violations),
                            min_margin if min_margin < math.inf else 0.0)


def verify_recurrence_bound(q: int, N: int,
                            table: CountTable | None = None) -> InequalityReport:
    """Check (k-1) Pi'_{q,k}(n) <= sum_{d <= n/2} pi'_q(d) Pi'_{q,k-1}(n-d)
    for all 2 <= k <= n <= N, in exact integers.
    """
    if table is None:
        table = build_count_table(q, N)
    if table.q != q or table.N < N or table.excluded_degrees:
        raise UsageError("table does not cover the requested range")
    violations: list[tuple] = []
    min_margin = math.inf
    cells = 0
    for n in range(2, N + 1):
        for k in range(2, n + 1):
            lhs = (k - 1) * table.rows[n][k]
            rhs = 0
            for d in range(1, n // 2 + 1):
                nd = n - d
                if k - 1 <= nd:
                    rhs += pi_prime(q, d) * table.rows[nd][k - 1]
            cells += 1
            if lhs > rhs:
                violations.append((n, k, lhs, rhs))
            elif lhs:
                margin = math.log(rhs) - math.log(lhs)
                if margin < min_margin:
                    min_margin = margin
    return InequalityReport("factor-count-recurrence", q, N, cells,
                            tuple(violations),
                            min_margin if min_margin < math.inf else 0.0)


# ----------------------------------------------------------------------
# Truncated Mertens product
# ----------------------------------------------------------------------

def _coprime_fraction(num: int, den: int) -> Fraction:
    # num and den are coprime by construction; skip Fraction's gcd pass,
    # which is quadratic in these sizes.
    f = Fraction.__new__(Fraction)
    f._numerator = num
    f._denominator = den
    return f


_MERTENS_PARTS_CACHE: dict[tuple[int, int], tuple[int, int]] = {}


def mertens_exact_parts(q: int, n: int,
                        max_bits: int = 2**24) -> tuple[int, int]:
    """(A, E) with prod_{d<=n} (1 - q^-d)^{pi'_q(d)} = A / q^E exactly."""
    _check_prime(q)
    if n < 0:
        raise UsageError("degree must be >= 0")
    key = (q, n)
    got = _MERTENS_PARTS_CACHE.get(key)
    if got is not None:
        return got
    exponent_sum = sum(d * pi_prime(q, d) for d in range(1, n + 1))
    bits = int(exponent_sum * math.log2(q)) + 1
    if bits > max_bits:
        raise BudgetError(
            f"exact Mertens product at q={q}, n={n} needs ~{bits} bits"
            f" (budget {max_bits})")
    num = 1
    for d in range(1, n + 1):
        num *= pow(q**d - 1, pi_prime(q, d))
    parts = (num, exponent_sum)
    _MERTENS_PARTS_CACHE[key] = parts
    return parts


def mertens_exact(q: int, n: int, max_bits: int = 2**24) -> Fraction:
    """P(n) = prod_{d<=n} (1 - q^-d)^{pi'_q(d)} as an exact rational."""
    num, e = mertens_exact_parts(q, n, max_bits=max_bits)
    return _coprime_fraction(num, q**e)


@dataclass(frozen=True)
class MertensValue:
    q: int
    n: int
    exact: Fraction | None
    normalized: BracketedValue

    def to_json(self) -> dict:
        out = {"q": self.q, "n": self.n,
               "normalized": self.normalized.to_json()}
        if self.exact is not None:
            out["exact"] = f"{self.exact.numerator}/{self.exact.denominator}"
        return out


def mertens_product(q: int, n: int,
                    precision_bits: int = DEFAULT_PRECISION_BITS,
                    exact_max_bits: int = 2**24) -> MertensValue:
    """Truncated Mertens product with its drift-normalized bracket.

    normalized brackets e^gamma * n * P(n), which tends to 1.  The exact
    rational is included while its size fits the bit budget (the exact
    form needs ~q^n bits, so large n is bracket-only).
    """
    _check_prime(q)
    if n < 1:
        raise UsageError("degree must be >= 1")
    try:
        exact = mertens_exact(q, n, max_bits=exact_max_bits)
    except BudgetError:
        exact = None
    with precision(precision_bits):
        s = iv.mpf(0)
        for d in range(1, n + 1):
            term = iv.log(1 - iv.mpf(1) / q**d)
            s += pi_prime(q, d) * term
        norm = iv.exp(iv.euler + iv.log(iv.mpf(n)) + s)
        bracket = BracketedValue.from_iv(norm)
    return MertensValue(q, n, exact, bracket)


# ----------------------------------------------------------------------
# Degree-weighted singular series G
# ----------------------------------------------------------------------

def _g_series_iv(q: int, z, degree_cap: int):
    """Interval for prod_p (1 + z/|p|)(1 - 1/|p|)^z to degree_cap, tail in.

    Per degree d the log factor is g_d = log(1 + z q^-d) + z log(1 - q^-d),
    with -z(1+z) q^-2d <= g_d <= 0 for q^-d <= 1/2, so the degree tail
    beyond D lies in [-z(1+z) q^-D / ((D+1)(q-1)), 0].
    """
    s = iv.mpf(0)
    for d in range(1, degree_cap + 1):
        u = iv.mpf(1) / q**d
        term = iv.log(1 + z * u) + z * iv.log(1 - u)
        s += pi_prime(q, d) * term
    tail_mag = z * (1 + z) / q**degree_cap / ((degree_cap + 1) * (q - 1))
    s += -(iv.mpf([0, 1]) * tail_mag)
    return iv.exp(s)


def evaluate_G(q: int, z, eps=Fraction(1, 10**6),
               precision_bits: int = DEFAULT_PRECISION_BITS,
               degree_cap: int = 64) -> BracketedValue:
    """Certified bracket for
    G(z) = prod_p (1 + z/|p|) (1 - 1/|p|)^z,  0 <= z <= 2,
    of width at most eps.

    Every factor decreases in z, so G falls from G(0) = 1 and stays in
    (0, 1].  The product is grouped by degree with exponent pi'_q(d); the
    degree cutoff doubles, then the working precision, until the bracket
    is narrow enough.
    """
    _check_prime(q)
    z = Fraction(z)
    eps = Fraction(eps)
    if not 0 <= z <= 2:
        raise UsageError(f"z={z} outside [0, 2]")
    if eps <= 0:
        raise UsageError("eps must be positive")
    bits = precision_bits
    while True:
        with precision(bits):
            z_iv = iv_from_fraction(z)
            cap = 8
            while True:
                out = BracketedValue.from_iv(_g_series_iv(q, z_iv, cap))
                if out.width <= eps:
                    return out
                if cap >= degree_cap:
                    break
                cap = min(2 * cap, degree_cap)
        if bits >= 8 * precision_bits:
            raise PrecisionError(
                f"G({z}) bracket width {float(out.width):.3e} > eps at"
                f" degree cap {degree_cap}, precision {bits}")
        bits *= 2


def sathe_selberg_H(q: int, k: int, n: int,
                    precision_bits: int = DEFAULT_PRECISION_BITS,
                    degree_cap: int = 64) -> BracketedValue:
    """Bracket for
    H_k(n) = (q^n/n) (log n)^(k-1)/(k-1)! * G((k-1)/log n) / Gamma(z+1)
    with z = (k-1)/log n, the Gamma factor normalizing the Euler product.

    Defined for n >= 2 and 1 <= k <= 2 log n + 1 (the two-sided range in
    which the approximation is meaningful).
    """
    _check_prime(q)
    if n < 2:
        raise UsageError("n must be >= 2")
    if k < 1:
        raise UsageError("k must be >= 1")
    with precision(precision_bits):
        ln_n = iv.log(iv.mpf(n))
        if k > 1 and k - 1 > BracketedValue.from_iv(2 * ln_n).hi:
            raise UsageError(f"k={k} outside 1..2 log n + 1 for n={n}")
        z = iv.mpf(k - 1) / ln_n
        g = _g_series_iv(q, z, degree_cap) / iv.gamma(1 + z)
        h = (iv.mpf(q**n) / n) * ln_n**(k - 1) / math.factorial(k - 1) * g
        return BracketedValue.from_iv(h)


# ----------------------------------------------------------------------
# Poisson-style tails
# ----------------------------------------------------------------------

def q_large_deviation(y: Fraction):
    """Q(y) = y log y - y + 1 as an interval (y rational > 0)."""
    y_iv = iv_from_fraction(Fraction(y))
    return y_iv * iv.log(y_iv) - y_iv + 1


@dataclass(frozen=True)
class TailSums:
    """Exact small/large factor-count masses of one table row, with
    display-only normalized ratios (floats)."""

    q: int
    n: int
    alpha: Fraction
    beta: Fraction
    lower_k_max: int
    lower_sum: int
    upper_k_min: int
    upper_sum: int
    lower_normalized: float
    upper_normalized: float

    def to_json(self) -> dict:
        return {
            "q": self.q, "n": self.n,
            "alpha": str(self.alpha), "beta": str(self.beta),
            "lower_k_max": self.lower_k_max, "lower_sum": str(self.lower_sum),
            "upper_k_min": self.upper_k_min, "upper_sum": str(self.upper_sum),
            "lower_normalized": self.lower_normalized,
            "upper_normalized": self.upper_normalized,
        }


def tail_sums(q: int, n: int, alpha, beta,
              table: CountTable | None = None) -> TailSums:
    """Exact sums of the degree-n table row over k <= alpha log n and
    k >= beta log n, plus Poisson-normalized ratios for display."""
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if not 0 < alpha < 1 < beta:
        raise UsageError("need 0 < alpha < 1 < beta")
    if n < 2:
        raise UsageError("n must be >= 2")
    if table is None:
        table = build_count_table(q, n)
    row = table.rows[n]
    ln_n = math.log(n)
    k_max = math.floor(float(alpha) * ln_n)
    k_min = math.ceil(float(beta) * ln_n)
    lower = sum(row[k] for k in range(0, min(k_max, n) + 1))
    upper = sum(row[k] for k in range(max(k_min, 0), n + 1))
    qa = iv_to_float(q_large_deviation(alpha))
    qb = iv_to_float(q_large_deviation(beta))
    # normalized size ~ O(1) when the Poisson heuristic is sharp
    if n * math.log2(q) < 900:
        qn = float(q)**n
        lower_nrm = lower * n**qa * math.sqrt(ln_n) / qn
        upper_nrm = upper * n**qb * math.sqrt(ln_n) / qn
    else:
        lower_nrm = math.exp(math.log(lower) + qa * ln_n
                             + 0.5 * math.log(ln_n) - n * math.log(q)) if lower else 0.0
        upper_nrm = math.exp(math.log(upper) + qb * ln_n
                             + 0.5 * math.log(ln_n) - n * math.log(q)) if upper else 0.0
    return TailSums(q, n, alpha, beta, k_max, lower, k_min, upper,
                    lower_nrm, upper_nrm)


def iv_to_float(x) -> float:
    """Midpoint float of an interval (display only)."""
    b = BracketedValue.from_iv(x)
    return float(b.midpoint)


@dataclass(frozen=True)
class NortonSide:
    name: str
    boundary_k: int
    lhs: BracketedValue
    rhs: BracketedValue
    holds: bool

    def to_json(self) -> dict:
        return {"name": self.name, "boundary_k": self.boundary_k,
                "lhs": self.lhs.to_json(), "rhs": self.rhs.to_json(),
                "holds": self.holds}


@dataclass(frozen=True)
class NortonReport:
    x: Fraction
    alpha: Fraction
    beta: Fraction
    lower: NortonSide
    upper: NortonSide

    @property
    def ok(self) -> bool:
        return self.lower.holds and self.upper.holds

    def to_json(self) -> dict:
        return {"x": str(self.x), "alpha": str(self.alpha),
                "beta": str(self.beta), "lower": self.lower.to_json(),
                "upper": self.upper.to_json(), "ok": self.ok}


def norton_check(x, alpha, beta,
                 precision_bits: int = DEFAULT_PRECISION_BITS) -> NortonReport:
    """Certified check of the Poisson tail estimates

      sum_{k <= alpha x} e^-x x^k / k!  <  e^{-Q(alpha) x} / ((1-alpha) sqrt(alpha x))
      sum_{k > beta x}  e^-x x^k / k!  <  e^{-Q(beta) x} / ((beta-1) sqrt(2 pi beta x))

    with Q(y) = y log y - y + 1.  The upper tail starts strictly above
    beta x: when beta x is an integer the boundary term belongs to the
    central range, and including it would overshoot the stated bound.
    Partial sums are exact rationals; every analytic factor is a
    certified bracket, so `holds` means the inequality is proved at
    these parameters.
    """
    x = Fraction(x)
    alpha = Fraction(alpha)
    beta = Fraction(beta)
    if x <= 0:
        raise UsageError("x must be positive")
    if not 0 < alpha < 1 < beta:
        raise UsageError("need 0 < alpha < 1 < beta")
    k_max = math.floor(alpha * x)
    k_min = math.floor(beta * x) + 1
    s_low = Fraction(0)
    s_mid = Fraction(0)
    term = Fraction(1)
    for k in range(0, k_min):
        if k:
            term *= Fraction(x, k)
        if k <= k_max:
            s_low += term
        s_mid += term
    with precision(precision_bits):
        e_neg_x = iv.exp(-iv_from_fraction(x))
        x_iv = iv_from_fraction(x)
        lhs_low = BracketedValue.from_iv(e_neg_x * iv_from_fraction(s_low))
        lhs_up = BracketedValue.from_iv(1 - e_neg_x * iv_from_fraction(s_mid))
        rhs_low = BracketedValue.from_iv(
            iv.exp(-q_large_deviation(alpha) * x_iv)
            / (iv_from_fraction(1 - alpha) * iv.sqrt(iv_from_fraction(alpha) * x_iv)))
        rhs_up = BracketedValue.from_iv(
            iv.exp(-q_large_deviation(beta) * x_iv)
            / (iv_from_fraction(beta - 1)
               * iv.sqrt(2 * iv.pi * iv_from_fraction(beta) * x_iv)))
    lower = NortonSide("lower-tail", k_max, lhs_low, rhs_low,
                       lhs_low.strictly_below(rhs_low))
    upper = NortonSide("upper-tail", k_min, lhs_up, rhs_up,
                       lhs_up.strictly_below(rhs_up))
    return NortonReport(x, alpha, beta, lower, upper)
