"""Counting and ordering irreducible monic polynomials over F_q.

pi_prime(q, n) counts degree-n irreducibles by the Moebius sum
(1/n) * sum_{d | n} mu(d) q^(n/d); cumulative counts order all
irreducibles by (degree, index) and locate the k-th one.  The expected
degree window for the k-th irreducible is
    L(k) - 1 <= deg P_k <= L(k),  up to o(1),
with L(k) = log_q k + log_q log_q k + log_q (q - 1); callers check it
with an explicit slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BudgetError, UsageError
from .fieldpoly import (DEFAULT_SIEVE_ENTRIES, FactorSieve, MonicPoly,
                        _check_prime, build_factor_sieve)


@lru_cache(maxsize=None)
def moebius(n: int) -> int:
    """Moebius function by trial factorization."""
    if n < 1:
        raise UsageError("moebius argument must be >= 1")
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


@lru_cache(maxsize=None)
def pi_prime(q: int, n: int) -> int:
    """Number of monic irreducibles of degree exactly n over F_q."""
    _check_prime(q)
    if n < 1:
        raise UsageError("degree must be >= 1")
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += moebius(d) * q**(n // d)
    assert total % n == 0, (q, n)
    count = total // n
    assert 0 < count * n <= q**n, (q, n)
    return count


@lru_cache(maxsize=None)
def pi_cumulative(q: int, n: int) -> int:
    """Number of monic irreducibles of degree <= n over F_q."""
    if n < 0:
        raise UsageError("degree must be >= 0")
    if n == 0:
        return 0
    return pi_cumulative(q, n - 1) + pi_prime(q, n)


def kth_irreducible_degree(q: int, k: int) -> int:
    """Degree of the k-th irreducible in (degree, index) order, k >= 1."""
    _check_prime(q)
    if k < 1:
        raise UsageError("k must be >= 1")
    n = 1
    while pi_cumulative(q, n) < k:
        n += 1
    return n


def kth_irreducible(q: int, k: int, sieve: FactorSieve | None = None,
                    max_entries: int = DEFAULT_SIEVE_ENTRIES) -> MonicPoly:
    """The k-th monic irreducible in (degree, index) order."""
    d = kth_irreducible_degree(q, k)
    if sieve is None or sieve.q != q or sieve.horizon < d:
        sieve = build_factor_sieve(q, d, max_entries=max_entries)
    rank = k - pi_cumulative(q, d - 1)
    idx = int(sieve.irreducible_indices(d)[rank - 1])
    return MonicPoly.from_index(q, idx)


class OrderedIrreducibles:
    """Materialized irreducibles of F_q[x] in (degree, index) order."""

    def __init__(self, q: int, horizon: int,
                 max_entries: int = DEFAULT_SIEVE_ENTRIES):
        _check_prime(q)
        self.q = q
        self.horizon = horizon
        self.sieve = build_factor_sieve(q, horizon, max_entries=max_entries)
        for d in range(1, horizon + 1):
            assert len(self.sieve.irreducible_indices(d)) == pi_prime(q, d), d

    def degree_indices(self, d: int) -> np.ndarray:
        return self.sieve.irreducible_indices(d)

    def kth(self, k: int) -> MonicPoly:
        if not 1 <= k <= pi_cumulative(self.q, self.horizon):
            raise UsageError(f"k={k} outside materialized range")
        return kth_irreducible(self.q, k, sieve=self.sieve)

    def __iter__(self):
        for d in range(1, self.horizon + 1):
            for idx in self.degree_indices(d).tolist():
                yield MonicPoly.from_index(self.q, idx)


@dataclass(frozen=True)
class DegreeBracketReport:
    """Window check for degrees of the k-th irreducible over a k range."""

    q: int
    k_lo: int
    k_hi: int
    slack: float
    checked: int
    violations: tuple[int, ...]
    worst_low_margin: float
    worst_high_margin: float

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "k_lo": self.k_lo,
            "k_hi": self.k_hi,
            "slack": self.slack,
            "checked": self.checked,
            "violations": list(self.violations[:50]),
            "violation_count": len(self.violations),
            "worst_low_margin": self.worst_low_margin,
            "worst_high_margin": self.worst_high_margin,
            "ok": self.ok,
        }


def check_degree_brackets(q: int, k_lo: int, k_hi: int, slack: float,
                          max_report: int = 10**6 * 4) -> DegreeBracketReport:
    """Check L(k) - 1 - slack <= deg P_k <= L(k) + slack for k in [k_lo, k_hi].

    Margins are float diagnostics (display only); the comparisons have
    enormous true slack relative to float error at these scales.
    """
    _check_prime(q)
    if k_lo < q:
        raise UsageError(f"k_lo must be >= q (got {k_lo}) so log log is defined")
    if k_hi < k_lo:
        raise UsageError("empty k range")
    if k_hi - k_lo + 1 > max_report:
        raise BudgetError(f"range of {k_hi - k_lo + 1} exceeds budget {max_report}")
    nmax = kth_irreducible_degree(q, k_hi)
    cum = np.array([pi_cumulative(q, n) for n in range(0, nmax + 1)],
                   dtype=np.float64)
    ks = np.arange(k_lo, k_hi + 1, dtype=np.int64)
    # degree of P_k = least n with pi_cumulative(q, n) >= k
    degs = np.searchsorted(cum, ks, side="left").astype(np.float64)
    logq = math.log(q)
    lk = np.log(ks) / logq
    L = lk + np.log(lk) / logq + math.log(q - 1) / logq
    low_margin = degs - (L - 1.0 - slack)
    high_margin = (L + slack) - degs
    bad = np.nonzero((low_margin < 0) | (high_margin < 0))[0]
    return DegreeBracketReport(
        q=q, k_lo=k_lo, k_hi=k_hi, slack=slack, checked=len(ks),
        violations=tuple(int(ks[i]) for i in bad[:1000]),
        worst_low_margin=float(low_margin.min()),
        worst_high_margin=float(high_margin.min()),
    )
