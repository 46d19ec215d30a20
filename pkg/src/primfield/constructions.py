"""Two explicit primitive-set constructions with certified bookkeeping.

The sparse layered construction stacks whole degree slices, admitting a
new slice only when its multiples occupy a vanishing share of every later
degree; the result is primitive by construction and its counting density
is an exact rational.

The thinned-irreducible construction picks a sparse sequence t_1, t_2, ...
of irreducibles along a slowly growing rank schedule r_k = floor(k L(k)),
certifies that the Erdos-style weight of the ranks beyond some k_0 is
below 1/2, and assembles the sets
S_k = { t_k g : g squarefree, omega(g) = k - 1, no t_j divides g, j <= k }
whose union is primitive with k running from k_0 upward.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

import numpy as np
from mpmath import iv

from .brackets import (DEFAULT_PRECISION_BITS, BracketedValue,
                       iv_from_fraction, iv_pointwise_max, precision)
from .counting import CountTable, build_count_table, monic_cumulative
from .errors import (BudgetError, ConstructionError, PrecisionError,
                     UsageError)
from .fieldpoly import (DEFAULT_SIEVE_ENTRIES, FactorSieve, MonicPoly,
                        _check_prime, build_factor_sieve, index_degree)
from .irreducibles import kth_irreducible, pi_cumulative, pi_prime
from .primitive import PolySet

# ----------------------------------------------------------------------
# Growth schedules L(x)
# ----------------------------------------------------------------------

_GROWTH_RE = re.compile(r"^(log|iterlog):(.+)$")


@dataclass(frozen=True)
class GrowthFunction:
    """Slow growth schedule L(x) >= 1, nondecreasing.

    kind "log":     L(x) = (log(x + e))^(1 + eps)
    kind "iterlog": L(x) = prod_{m=2}^{j-1} log_m(x) * (log_j(x))^(1+eps)
                    with log_1(x) = log(x + e) and each further iterate
                    clamped below at 1 (log of the max with e).
    """

    kind: str
    eps: Fraction
    j: int = 2

    def __post_init__(self) -> None:
        if self.kind not in ("log", "iterlog"):
            raise UsageError(f"unknown growth kind {self.kind!r}")
        if self.eps <= 0:
            raise UsageError("growth eps must be positive")
        if self.kind == "iterlog" and self.j < 2:
            raise UsageError("iterlog depth j must be >= 2")

    @classmethod
    def parse(cls, text: str) -> "GrowthFunction":
        m = _GROWTH_RE.match(text.strip())
        if not m:
            raise UsageError(f"cannot parse growth function {text!r},"
                             " expected e.g. 'log:eps=0.1' or 'iterlog:j=2,eps=0.1'")
        kind, args = m.groups()
        eps = None
        j = 2
        for part in args.split(","):
            key, _, val = part.partition("=")
            key = key.strip()
            try:
                if key == "eps":
                    eps = Fraction(val.strip())
                elif key == "j":
                    j = int(val.strip())
                else:
                    raise UsageError(f"unknown growth parameter {key!r}")
            except ValueError:
                raise UsageError(f"bad growth parameter {part!r}") from None
        if eps is None:
            raise UsageError("growth function needs eps=..")
        return cls(kind, eps, j)

    def format(self) -> str:
        if self.kind == "log":
            return f"log:eps={self.eps}"
        return f"iterlog:j={self.j},eps={self.eps}"

    def value_iv(self, x: int):
        """Certified interval for L(x), x a positive integer."""
        if x < 1:
            raise UsageError("growth argument must be >= 1")
        e = iv.exp(iv.mpf(1))
        v = iv.log(x + e)
        if self.kind == "log":
            return v**iv_from_fraction(1 + self.eps)
        prod = iv.mpf(1)
        for m in range(2, self.j + 1):
            if v.b <= e.a:
                # fully clamped: log(max(v, e)) = log e = 1 exactly
                v = iv.mpf(1)
            else:
                v = iv.log(iv_pointwise_max(v, e))
            if m < self.j:
                prod *= v
        return prod * v**iv_from_fraction(1 + self.eps)

    def value_float(self, x: np.ndarray) -> np.ndarray:
        """Fast float64 evaluation matching value_iv (for floor screening)."""
        v = np.log(x + math.e)
        if self.kind == "log":
            return v**float(1 + self.eps)
        prod = np.ones_like(v)
        for m in range(2, self.j + 1):
            v = np.log(np.maximum(v, math.e))
            if m < self.j:
                prod = prod * v
        return prod * v**float(1 + self.eps)

    def tail_integral_upper(self, K: int) -> Fraction:
        """Rational upper bound for int_K^inf dt / (t log^2 t L(t)).

        kind "log": the integrand is below 1/(t (log t)^(3+eps)), giving
        1/((2+eps)(log K)^(2+eps)).  kind "iterlog": log^2 t L(t) is at
        least log t * log_2 t * ... * log_{j-1} t * (log_j t)^(1+eps)
        with plain iterated logs, and u = log_j t turns the integral into
        int du/u^(1+eps) = 1/(eps (log_j K)^eps); valid once log_j K > 0.
        """
        if self.kind == "log":
            lk = iv.log(iv.mpf(K))
            out = 1 / (iv_from_fraction(2 + self.eps)
                       * lk**iv_from_fraction(2 + self.eps))
            return BracketedValue.from_iv(out).hi
        v = iv.log(iv.mpf(K))
        for _ in range(2, self.j + 1):
            low = BracketedValue.from_iv(v).lo
            if low <= 1:
                raise BudgetError(
                    f"iterated log depth {self.j} needs a larger cutoff"
                    f" than K={K} for a positive tail integrand")
            v = iv.log(v)
        out = 1 / (iv_from_fraction(self.eps) * v**iv_from_fraction(self.eps))
        return BracketedValue.from_iv(out).hi


# ----------------------------------------------------------------------
# Certified irreducible-count constant
# ----------------------------------------------------------------------

def irreducible_density_constant(q: int) -> Fraction:
    """Smallest certified c with pi_q(n) <= c q^n / n for every n >= 1.

    Exact maximum over n <= 64; for n > 64 the geometric split
    sum_{d<n} q^d/d <= 2 q^n/(n(q-1)) + n q^{(3-n)/2}/(q-1) * q^n/n
    keeps the ratio below 1 + 2/(q-1) + 2^-24/(q-1), since
    n q^{(3-n)/2} <= 64 * 2^{-30.5} < 2^-24 there and is decreasing.
    """
    _check_prime(q)
    small = max(Fraction(n * pi_cumulative(q, n), q**n) for n in range(1, 65))
    closed = 1 + Fraction(2, q - 1) + Fraction(1, (q - 1) << 24)
    return max(small, closed)


# ----------------------------------------------------------------------
# Thinned irreducible sequence t_k
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TSequence:
    """Irreducibles t_k at ranks r_k = floor(k L(k)), with a certified
    cutoff k0 such that sum_{k >= k0} 1/(||t_k|| deg t_k) < 1/2.

    suffix_sum is the exact rational sum over k0 <= k <= K; tail_bound
    dominates the remainder beyond K.  terms materializes the first
    polynomials of the sequence.
    """

    q: int
    growth: GrowthFunction
    K: int
    k0: int
    ranks: tuple[int, ...]
    degrees: tuple[int, ...]
    terms: tuple[MonicPoly, ...]
    suffix_sum: Fraction
    tail_bound: Fraction
    density_constant: Fraction

    @property
    def certified(self) -> bool:
        return self.suffix_sum + self.tail_bound < Fraction(1, 2)

    def term(self, k: int) -> MonicPoly:
        if not 1 <= k <= len(self.terms):
            raise UsageError(f"t_{k} not materialized (have {len(self.terms)})")
        return self.terms[k - 1]

    def to_json(self) -> dict:
        return {
            "q": self.q, "growth": self.growth.format(),
            "K": self.K, "k0": self.k0,
            "ranks_head": list(self.ranks[:16]),
            "degrees_head": list(self.degrees[:16]),
            "suffix_sum_float": float(self.suffix_sum),
            "tail_bound_float": float(self.tail_bound),
            "budget_float": float(self.suffix_sum + self.tail_bound),
            "certified": self.certified,
        }


def _rank_floor_iv(growth: GrowthFunction, k: int,
                   precision_bits: int) -> int:
    """floor(k L(k)) with the bracket pinched until the floor is certain."""
    bits = precision_bits
    while bits <= 4096:
        with precision(bits):
            b = BracketedValue.from_iv(k * growth.value_iv(k))
        lo, hi = math.floor(b.lo), math.floor(b.hi)
        if lo == hi:
            return lo
        bits *= 2
    raise PrecisionError(f"floor of {k} L({k}) straddles an integer")


def _rank_schedule(growth: GrowthFunction, K: int,
                   precision_bits: int) -> np.ndarray:
    """Rigorous r_k = floor(k L(k)) for k = 1..K, float-screened."""
    ks = np.arange(1, K + 1, dtype=np.float64)
    y = ks * growth.value_float(ks)
    fl = np.floor(y)
    frac = y - fl
    # float64 evaluation is correct to ~1e-13 relative; anything not that
    # close to an integer keeps its float floor, the rest get intervals
    tol = np.maximum(1e-9, y * 1e-11)
    ranks = fl.astype(np.int64)
    for i in np.nonzero((frac < tol) | (frac > 1 - tol))[0]:
        ranks[i] = _rank_floor_iv(growth, int(i) + 1, precision_bits)
    return ranks


def build_t_sequence(q: int, growth: GrowthFunction | str,
                     terms_budget: int = 2**17,
                     materialize: int = 64,
                     precision_bits: int = DEFAULT_PRECISION_BITS,
                     max_sieve_entries: int = DEFAULT_SIEVE_ENTRIES,
                     ) -> TSequence:
    """Certify a cutoff k0 with sum_{k>=k0} 1/(||t_k|| deg t_k) < 1/2.

    Exact terms are summed up to a cutoff K; beyond K, with
    c = irreducible_density_constant(q) and theta discounting the floor,
    rank r_k >= theta k L(k) forces deg t_k >= log_q(r_k / c) >= log_q k
    once theta L(K+1) >= c, so each term is at most
    (c log^2 q / theta) / (k log^2 k L(k)) and the integral bound of the
    growth schedule finishes the tail.  K doubles until both the
    precondition and tail < 1/2 hold.
    """
    _check_prime(q)
    if isinstance(growth, str):
        growth = GrowthFunction.parse(growth)
    if terms_budget < 2:
        raise UsageError("terms budget must be at least 2")
    c = irreducible_density_constant(q)
    K = min(2**12, terms_budget)
    with precision(precision_bits):
        while True:
            l_next = BracketedValue.from_iv(growth.value_iv(K + 1)).lo
            theta = 1 - 1 / ((K + 1) * l_next)
            ok_pre = theta > 0 and theta * l_next >= c
            tail = None
            if ok_pre:
                try:
                    integral = growth.tail_integral_upper(K)
                    pre = BracketedValue.from_iv(
                        iv_from_fraction(c) * iv.log(iv.mpf(q))**2
                        / iv_from_fraction(theta)).hi
                    tail = pre * integral
                except BudgetError:
                    tail = None
            if tail is not None and tail < Fraction(1, 2):
                break
            if K >= terms_budget:
                raise BudgetError(
                    f"tail bound not below 1/2 within {terms_budget} terms"
                    f" for growth {growth.format()} at q={q}")
            K = min(2 * K, terms_budget)
    ranks = _rank_schedule(growth, K, precision_bits)
    diffs = np.diff(ranks)
    assert (diffs > 0).all(), "rank schedule must be strictly increasing"
    # degrees of the r-th irreducible via the cumulative count
    cum = [0]
    d = 0
    while cum[-1] < int(ranks[-1]):
        d += 1
        cum.append(pi_cumulative(q, d))
    degs = np.searchsorted(np.asarray(cum, dtype=np.int64), ranks, side="left")
    dmax = int(degs.max())
    # exact suffix sums over a common denominator q^dmax * lcm(1..dmax)
    den = q**dmax * math.lcm(*range(1, dmax + 1))
    nums = [den // (q**int(dd) * int(dd)) for dd in degs]
    suffix = list(accumulate(reversed(nums)))
    suffix.reverse()
    suffix.append(0)
    k0 = None
    for k in range(1, K + 2):
        if Fraction(suffix[k - 1], den) + tail < Fraction(1, 2):
            k0 = k
            break
    assert k0 is not None and k0 <= K
    mat = min(materialize, K)
    sieve = build_factor_sieve(q, int(degs[mat - 1]),
                               max_entries=max_sieve_entries)
    terms = tuple(kth_irreducible(q, int(r), sieve=sieve)
                  for r in ranks[:mat])
    for t, dd in zip(terms, degs[:mat]):
        assert t.degree == int(dd)
    return TSequence(q, growth, K, k0, tuple(int(r) for r in ranks[:mat]),
                     tuple(int(dd) for dd in degs[:mat]), terms,
                     Fraction(suffix[k0 - 1], den), tail, c)


# ----------------------------------------------------------------------
# Sparse layered construction from degree slices
# ----------------------------------------------------------------------

def divisor_degree_masks(sieve: FactorSieve) -> list[int]:
    """masks[i] has bit n set iff the polynomial with index i has a monic
    divisor of degree exactly n (bit 0 is always set).

    Uses div(f) = div(g) + p div(g) for any irreducible p | f, g = f/p,
    so mask(f) = mask(g) | mask(g) << deg p along the sieve's chains.
    """
    q = sieve.q
    top = len(sieve.spf)
    masks = [0] * top
    masks[1] = 1
    spf = sieve.spf.tolist()
    cof = sieve.cof.tolist()
    for i in range(q, top):
        p = spf[i]
        if p == 0:
            continue
        g = masks[cof[i]] if p != i else 1
        masks[i] = g | (g << index_degree(q, p))
    return masks


@dataclass(frozen=True)
class SliceWindowRow:
    """Window scan for one candidate slice degree at one admission level."""

    level: int
    degree: int
    threshold: Fraction
    worst_degree: int | None
    worst_ratio: Fraction
    admitted: bool

    def to_json(self) -> dict:
        return {"level": self.level, "degree": self.degree,
                "threshold": str(self.threshold),
                "worst_degree": self.worst_degree,
                "worst_ratio": str(self.worst_ratio),
                "worst_ratio_float": float(self.worst_ratio),
                "admitted": self.admitted}


@dataclass(frozen=True)
class SparseConstruction:
    """Layered degree-slice construction output.

    Level i admits slice degree n_i when, for every later degree m up to
    the horizon, polynomials with a divisor of degree n_i fill at most
    eps / 2^(i+1) of all monic polynomials of degree <= m.  The set keeps
    each admitted slice minus multiples of earlier admitted slices.
    """

    q: int
    eps: Fraction
    horizon: int
    levels: tuple[int, ...]
    window: tuple[SliceWindowRow, ...]
    members: PolySet | None
    density: Fraction
    suggested_eps: Fraction | None

    @property
    def ok(self) -> bool:
        return bool(self.levels)

    def to_json(self) -> dict:
        return {"q": self.q, "eps": str(self.eps), "horizon": self.horizon,
                "levels": list(self.levels),
                "size": len(self.members) if self.members is not None else None,
                "density": str(self.density),
                "density_float": float(self.density),
                "suggested_eps": None if self.suggested_eps is None
                else str(self.suggested_eps),
                "ok": self.ok,
                "window": [r.to_json() for r in self.window]}


def besicovitch_construct(q: int, eps, horizon: int,
                          max_members: int = 2**22,
                          sieve: FactorSieve | None = None,
                          max_sieve_entries: int = DEFAULT_SIEVE_ENTRIES,
                          ) -> SparseConstruction:
    """Greedy layered slice construction at a degree horizon.

    T_n(m) counts monic polynomials of degree <= m having a divisor of
    degree exactly n; a slice degree is admitted at level i when
    T_n(m)/M_q(m) <= eps/2^(i+1) strictly beyond n (vacuous at the
    horizon itself).  On failure the report carries the smallest eps
    that would have admitted a first level.
    """
    _check_prime(q)
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise UsageError("eps must be in (0, 1)")
    if horizon < 1:
        raise UsageError("horizon must be >= 1")
    if sieve is None or sieve.q != q or sieve.horizon < horizon:
        sieve = build_factor_sieve(q, horizon, max_entries=max_sieve_entries)
    masks = divisor_degree_masks(sieve)
    # T[n][m]: cumulative counts, via per-(mask, degree) aggregation
    from collections import Counter
    pair_counts = Counter()
    for d in range(1, horizon + 1):
        start, stop = q**d, 2 * q**d
        pair_counts.update(zip(masks[start:stop], [d] * (stop - start)))
    T = [[0] * (horizon + 1) for _ in range(horizon + 1)]
    for (mask, d), cnt in pair_counts.items():
        mask >>= 1
        n = 1
        while mask:
            if mask & 1:
                T[n][d] += cnt
            mask >>= 1
            n += 1
    for n in range(1, horizon + 1):
        for m in range(1, horizon + 1):
            T[n][m] += T[n][m - 1]
    M = [monic_cumulative(q, m) for m in range(horizon + 1)]
    level = 1
    levels: list[int] = []
    window_rows: list[SliceWindowRow] = []
    best_first = None
    for n in range(1, horizon + 1):
        threshold = eps / 2**(level + 1)
        worst_m, worst = None, Fraction(0)
        for m in range(n + 1, horizon + 1):
            ratio = Fraction(T[n][m], M[m])
            if ratio > worst:
                worst_m, worst = m, ratio
        admitted = worst <= threshold
        window_rows.append(SliceWindowRow(level, n, threshold, worst_m,
                                          worst, admitted))
        if level == 1:
            cand = worst * 4
            if best_first is None or cand < best_first:
                best_first = cand
        if admitted:
            levels.append(n)
            level += 1
    members = None
    density = Fraction(0)
    if levels:
        total = sum(q**n for n in levels)
        if total <= max_members:
            earlier_bits = 0
            polys: list[MonicPoly] = []
            for n in levels:
                for i in range(q**n, 2 * q**n):
                    if not masks[i] & earlier_bits:
                        polys.append(MonicPoly.from_index(q, i))
                earlier_bits |= 1 << n
            members = PolySet(q, horizon, tuple(polys))
            running = 0
            counts = members.degree_counts()
            for m in range(1, horizon + 1):
                running += counts.get(m, 0)
                density = max(density, Fraction(running, M[m]))
        else:
            raise BudgetError(f"construction would hold {total} members"
                              f" (budget {max_members})")
    suggested = None
    if not levels and best_first is not None:
        suggested = best_first
    return SparseConstruction(q, eps, horizon, tuple(levels),
                              tuple(window_rows), members, density, suggested)


# ----------------------------------------------------------------------
# Thinned-irreducible construction
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MPConstruction:
    """Union over k of S_k = {t_k g : squarefree, omega = k, no earlier
    t_j dividing}, counted exactly to the horizon and materialized up to
    enum_horizon.

    counts[k-1][n] is |S_k at degree n| from restricted count tables;
    members holds the enumerated polynomials of degree <= enum_horizon,
    cross-checked against the same counts.
    """

    q: int
    horizon: int
    enum_horizon: int
    tseq: TSequence
    k_max: int
    counts: tuple[tuple[int, ...], ...]
    members: PolySet
    cross_checked: bool
    erdos_partial: Fraction
    erdos_partial_from_k0: Fraction

    def total_by_degree(self) -> tuple[int, ...]:
        out = [0] * (self.horizon + 1)
        for row in self.counts:
            for n, v in enumerate(row):
                out[n] += v
        return tuple(out)

    def to_json(self) -> dict:
        return {"q": self.q, "horizon": self.horizon,
                "enum_horizon": self.enum_horizon,
                "growth": self.tseq.growth.format(),
                "k0": self.tseq.k0, "k_max": self.k_max,
                "member_count": len(self.members),
                "cross_checked": self.cross_checked,
                "erdos_partial_float": float(self.erdos_partial),
                "erdos_partial_from_k0_float": float(self.erdos_partial_from_k0),
                "totals_by_degree": list(self.total_by_degree())}


def mp_construct(q: int, growth_or_tseq, horizon: int,
                 enum_horizon: int | None = None,
                 max_sieve_entries: int = DEFAULT_SIEVE_ENTRIES,
                 table_budget_bytes: int = 2**31,
                 **tseq_kwargs) -> MPConstruction:
    """Assemble the thinned-irreducible primitive family up to a horizon.

    Counting is exact at every degree <= horizon: S_k at degree n equals
    the number of squarefree g of degree n - deg t_k with k - 1 distinct
    irreducible factors avoiding t_1 .. t_k, read off a count table whose
    per-degree irreducible supply excludes the earlier terms.  Members
    are enumerated only up to enum_horizon (factorization of every monic
    polynomial there), and the enumeration must reproduce the counts.
    """
    _check_prime(q)
    if isinstance(growth_or_tseq, TSequence):
        tseq = growth_or_tseq
        if tseq.q != q:
            raise UsageError("t-sequence belongs to a different field")
    else:
        tseq = build_t_sequence(q, growth_or_tseq, **tseq_kwargs)
    if horizon < 1:
        raise UsageError("horizon must be >= 1")
    if enum_horizon is None:
        enum_horizon = min(horizon, 18)
    if enum_horizon > horizon:
        raise UsageError("enum_horizon cannot exceed horizon")
    # usable k: t_k materialized and deg t_k + (k-1) within the horizon
    k_max = 0
    for k in range(1, len(tseq.terms) + 1):
        if tseq.degrees[k - 1] + (k - 1) <= horizon:
            k_max = k
        else:
            break
    if k_max == 0:
        raise ConstructionError("horizon below the first usable degree")
    if k_max == len(tseq.terms) and tseq.degrees[-1] + k_max <= horizon:
        raise BudgetError("materialize more t-sequence terms for this horizon")
    counts: list[tuple[int, ...]] = []
    excl: dict[int, int] = {}
    for k in range(1, k_max + 1):
        dk = tseq.degrees[k - 1]
        excl[dk] = excl.get(dk, 0) + 1
        table = build_count_table(q, horizon, excluded_degrees=excl,
                                  max_bytes=table_budget_bytes)
        row = [0] * (horizon + 1)
        for n in range(dk, horizon + 1):
            g_deg = n - dk
            if k - 1 <= g_deg:
                row[n] = table.count(g_deg, k - 1)
        counts.append(tuple(row))
    # enumerate members of degree <= enum_horizon by full factorization
    sieve = build_factor_sieve(q, enum_horizon, max_entries=max_sieve_entries)
    term_index = {t.index: k for k, t in enumerate(tseq.terms, start=1)}
    got: list[list[int]] = [[0] * (enum_horizon + 1) for _ in range(k_max)]
    polys: list[MonicPoly] = []
    for idx in (i for d in range(1, enum_horizon + 1)
                for i in range(q**d, 2 * q**d)):
        fac = sieve.factor_index(idx)
        if any(m > 1 for _, m in fac):
            continue
        # membership: the smallest t-index k among the factors decides the
        # slot, and f joins S_k exactly when omega(f) = k
        hits = [term_index[p] for p, _ in fac if p in term_index]
        if not hits:
            continue
        k = min(hits)
        if k > k_max or len(fac) != k:
            continue
        got[k - 1][index_degree(q, idx)] += 1
        polys.append(MonicPoly.from_index(q, idx))
    cross = all(got[k][n] == counts[k][n]
                for k in range(k_max) for n in range(enum_horizon + 1))
    assert cross, "enumerated members disagree with table counts"
    members = PolySet(q, horizon, tuple(polys))
    den = q**horizon * math.lcm(*range(1, horizon + 1))
    total = 0
    total_k0 = 0
    for k, row in enumerate(counts, start=1):
        for n, v in enumerate(row):
            if n and v:
                w = v * (den // (q**n * n))
                total += w
                if k >= tseq.k0:
                    total_k0 += w
    return MPConstruction(q, horizon, enum_horizon, tseq, k_max,
                          tuple(counts), members, cross,
                          Fraction(total, den), Fraction(total_k0, den))


@dataclass(frozen=True)
class MPDiagnosticsRow:
    n: int
    total: int
    scaled: float
    band_lo: float
    band_hi: float
    z_worst: float

    def to_json(self) -> dict:
        return {"n": self.n, "total": str(self.total), "scaled": self.scaled,
                "band_lo": self.band_lo, "band_hi": self.band_hi,
                "z_worst": self.z_worst}


def mp_diagnostics(mpc: MPConstruction) -> tuple[MPDiagnosticsRow, ...]:
    """Float diagnostics per degree: the count of the union scaled by
    n log n loglog n L(log n) / q^n, crude sandwich markers q^(n - deg t_B)
    for B near (1/2) log n and (3/2) log n, and the largest
    (k-1)/log^2(n - deg t_k) over contributing k (display only)."""
    out = []
    totals = mpc.total_by_degree()
    tseq = mpc.tseq
    for n in range(2, mpc.horizon + 1):
        ln = math.log(n)
        lln = math.log(max(ln, math.e))
        lval = float(np.asarray(
            tseq.growth.value_float(np.asarray([ln], dtype=np.float64))
        )[0])
        scaled = totals[n] * ln * lln * lval / float(mpc.q)**n
        b_lo = max(1, math.floor(0.5 * ln))
        b_hi = max(1, math.floor(1.5 * ln))
        b_lo = min(b_lo, len(tseq.degrees))
        b_hi = min(b_hi, len(tseq.degrees))
        band_hi = float(mpc.q)**(n - tseq.degrees[b_lo - 1])
        band_lo = float(mpc.q)**(n - tseq.degrees[b_hi - 1])
        z = 0.0
        for k in range(1, mpc.k_max + 1):
            if mpc.counts[k - 1][n] and n - tseq.degrees[k - 1] > 1:
                zz = (k - 1) / math.log(n - tseq.degrees[k - 1])**2
                z = max(z, zz)
        out.append(MPDiagnosticsRow(n, totals[n], scaled, band_lo, band_hi, z))
    return tuple(out)
