"""Counting engine: exact tables, certified bounds, products, and tails."""

import math
from fractions import Fraction

import pytest
from mpmath import iv

from primfield.brackets import BracketedValue, precision
from primfield.counting import (CountTable, build_count_table, evaluate_G,
                                mertens_exact, mertens_product, monic_count,
                                monic_cumulative, norton_check,
                                q_large_deviation, sathe_selberg_H, tail_sums,
                                verify_hr_bound, verify_recurrence_bound)
from primfield.errors import BudgetError, PrecisionError, UsageError
from primfield.irreducibles import pi_prime


def enumerate_squarefree_counts(sieve, N, excluded=None):
    """Brute-force rows[n][k] by factoring every monic polynomial."""
    q = sieve.q
    struck = set()
    if excluded:
        for d, c in sorted(excluded.items()):
            idxs = sieve.irreducible_indices(d)
            assert c <= len(idxs)
            struck.update(int(i) for i in idxs[:c])
    rows = [[0] * (n + 1) for n in range(N + 1)]
    rows[0][0] = 1
    for n in range(1, N + 1):
        for idx in range(q**n, 2 * q**n):
            fac = sieve.factor_index(idx)
            if any(m > 1 for _, m in fac):
                continue
            if any(p in struck for p, _ in fac):
                continue
            rows[n][len(fac)] += 1
    return rows


# ----------------------------------------------------------------------
# Count tables
# ----------------------------------------------------------------------

def test_monic_counts():
    assert [monic_count(2, n) for n in range(4)] == [1, 2, 4, 8]
    assert monic_cumulative(3, 3) == 1 + 3 + 9 + 27
    with pytest.raises(UsageError):
        monic_count(2, -1)


@pytest.mark.parametrize("q,N", [(2, 10), (3, 6)])
def test_table_matches_enumeration(q, N, sieve2, sieve3):
    sieve = sieve2 if q == 2 else sieve3
    table = build_count_table(q, N)
    want = enumerate_squarefree_counts(sieve, N)
    for n in range(N + 1):
        for k in range(n + 1):
            assert table.count(n, k) == want[n][k], (n, k)


@pytest.mark.parametrize("q,N,excl", [
    (2, 9, {1: 1}),
    (2, 9, {1: 2, 2: 1}),
    (3, 6, {1: 2}),
    (3, 6, {2: 3, 1: 1}),
])
def test_table_with_exclusions_matches_enumeration(q, N, excl, sieve2, sieve3):
    sieve = sieve2 if q == 2 else sieve3
    table = build_count_table(q, N, excluded_degrees=excl)
    want = enumerate_squarefree_counts(sieve, N, excluded=excl)
    for n in range(N + 1):
        for k in range(n + 1):
            assert table.count(n, k) == want[n][k], (n, k, excl)


def test_table_row_identities():
    table = build_count_table(2, 40)
    assert table.row_total(1) == 2  # every linear polynomial is squarefree
    for n in range(2, 41):
        assert table.row_total(n) == 2**n - 2**(n - 1)
    for n in range(1, 41):
        assert table.count(n, 1) == pi_prime(2, n)
    assert table.count(0, 0) == 1 and table.count(5, 0) == 0
    assert table.count(7, 9) == 0  # k > n reads as zero
    with pytest.raises(UsageError):
        table.count(41, 1)


def test_table_cache_and_budget():
    a = build_count_table(3, 25)
    b = build_count_table(3, 25)
    assert a is b
    with pytest.raises(BudgetError):
        build_count_table(2, 400, max_bytes=10**4)
    with pytest.raises(UsageError):
        build_count_table(2, 10, excluded_degrees={1: 5})  # only 2 exist
    with pytest.raises(UsageError):
        build_count_table(2, 10, excluded_degrees={0: 1})


# ----------------------------------------------------------------------
# Inequality sweeps
# ----------------------------------------------------------------------

def test_hr_bound_holds_at_desk_scale():
    for q in (2, 3):
        report = verify_hr_bound(q, 60)
        assert report.ok and not report.violations
        assert report.cells == 60 * 61 // 2
        assert report.min_log_margin >= 0.0


def test_hr_bound_flags_doctored_table():
    clean = build_count_table(2, 50)
    rows = [list(r) for r in clean.rows]
    rows[50][1] = 2**50  # far beyond the k=1 bound q^n/n
    doctored = CountTable(2, 50, tuple(tuple(r) for r in rows))
    report = verify_hr_bound(2, 50, table=doctored)
    assert not report.ok
    assert any(v[0] == 50 and v[1] == 1 for v in report.violations)


def test_recurrence_bound_holds_and_flags():
    for q in (2, 3):
        report = verify_recurrence_bound(q, 40)
        assert report.ok and not report.violations
    clean = build_count_table(2, 30)
    rows = [list(r) for r in clean.rows]
    rows[30][3] *= 2**40
    doctored = CountTable(2, 30, tuple(tuple(r) for r in rows))
    assert not verify_recurrence_bound(2, 30, table=doctored).ok


# ----------------------------------------------------------------------
# Mertens product
# ----------------------------------------------------------------------

def test_mertens_exact_matches_direct_product():
    for q in (2, 3):
        for n in range(1, 9):
            direct = Fraction(1)
            for d in range(1, n + 1):
                direct *= (1 - Fraction(1, q**d))**pi_prime(q, d)
            assert mertens_exact(q, n) == direct


def test_mertens_exact_bit_budget():
    with pytest.raises(BudgetError):
        mertens_exact(2, 60, max_bits=1000)


def test_mertens_bracket_agrees_with_independent_interval():
    for q, n in ((2, 6), (3, 5), (5, 4)):
        mv = mertens_product(q, n)
        with precision(96):
            indep = BracketedValue.from_iv(
                iv.exp(iv.euler) * n
                * iv.mpf([mv.exact.numerator, mv.exact.numerator])
                / iv.mpf([mv.exact.denominator, mv.exact.denominator]))
        # both bracket e^gamma n P(n), so they must overlap
        assert mv.normalized.lo <= indep.hi and indep.lo <= mv.normalized.hi


def test_mertens_normalized_drifts_to_one():
    vals = {n: mertens_product(2, n) for n in (10, 20, 30, 40)}
    errs = {n: abs(v.normalized.midpoint - 1) for n, v in vals.items()}
    assert errs[40] < errs[20] < errs[10]
    assert vals[40].exact is None  # needs ~2^41 bits, over budget
    golden = Fraction("0.9835616125806990676507639358915")
    assert abs(vals[30].normalized.midpoint - golden) < Fraction(1, 10**30)
    assert vals[30].normalized.width < Fraction(1, 10**30)


# ----------------------------------------------------------------------
# Singular series G
# ----------------------------------------------------------------------

def test_G_at_zero_and_closed_form_at_one():
    tight = Fraction(1, 10**9)
    assert evaluate_G(2, 0).contains(1)
    for q in (2, 3, 5):
        b = evaluate_G(q, 1, eps=tight)
        assert b.contains(1 - Fraction(1, q))
        assert b.width <= tight


def test_G_frozen_value_and_width_contract():
    eps = Fraction(1, 10**6)
    b = evaluate_G(2, 2, eps=eps)
    assert b.width <= eps
    assert b.contains(Fraction("0.1813197142697"))


def test_G_midpoints_decrease_on_grid():
    mids = [evaluate_G(2, Fraction(k, 4)).midpoint for k in range(9)]
    assert all(a >= b for a, b in zip(mids, mids[1:]))


def test_G_guards_and_precision_exhaustion():
    with pytest.raises(UsageError):
        evaluate_G(2, 3)
    with pytest.raises(UsageError):
        evaluate_G(2, Fraction(-1, 2))
    with pytest.raises(UsageError):
        evaluate_G(2, 1, eps=0)
    with pytest.raises(PrecisionError):
        # tail at degree cap 16 floors the width near 3e-5, far above eps
        evaluate_G(2, 1, eps=Fraction(1, 10**60), precision_bits=64,
                   degree_cap=16)


def test_sathe_selberg_H_reduces_to_main_term_at_k1():
    for q, n in ((2, 10), (3, 7)):
        b = sathe_selberg_H(q, 1, n)
        assert b.contains(Fraction(q**n, n))  # G(0) = 1 exactly
    with pytest.raises(UsageError):
        sathe_selberg_H(2, 40, 10)  # k far above 2 log n + 1


# ----------------------------------------------------------------------
# Tails
# ----------------------------------------------------------------------

def test_q_large_deviation_basics():
    with precision(64):
        assert BracketedValue.from_iv(q_large_deviation(Fraction(1))).contains(0)
        half = BracketedValue.from_iv(q_large_deviation(Fraction(1, 2)))
        ref = Fraction(1, 2) - Fraction("0.34657359027997265470861606072909")
        assert abs(half.midpoint - ref) < Fraction(1, 10**12)


def test_tail_sums_partition_row():
    q, n = 2, 20
    table = build_count_table(q, n)
    ts = tail_sums(q, n, Fraction(1, 2), Fraction(2), table=table)
    row = table.rows[n]
    middle = sum(row[k] for k in range(ts.lower_k_max + 1, ts.upper_k_min))
    assert ts.lower_sum + middle + ts.upper_sum == table.row_total(n)
    assert ts.lower_k_max == math.floor(0.5 * math.log(n))
    with pytest.raises(UsageError):
        tail_sums(q, n, Fraction(3, 2), Fraction(2))


def test_norton_holds_at_desk_parameters():
    for x in (5, 10, 20):
        report = norton_check(x, Fraction(1, 2), Fraction(3, 2))
        assert report.ok and report.lower.holds and report.upper.holds
        assert report.lower.lhs.strictly_below(report.lower.rhs)
        assert report.upper.lhs.strictly_below(report.upper.rhs)


def test_norton_upper_tail_is_strictly_above_boundary():
    # at x = 10, beta = 3/2 the boundary term k = 15 belongs to the
    # central range; including it overshoots the stated bound
    report = norton_check(10, Fraction(1, 2), Fraction(3, 2))
    assert report.upper.boundary_k == 16
    boundary_term = Fraction(10**15, math.factorial(15))
    with precision(96):
        inclusive = (report.upper.lhs
                     + BracketedValue.from_iv(
                         iv.exp(-iv.mpf(10))) * boundary_term)
    assert inclusive.strictly_above(report.upper.rhs)


def test_norton_guards():
    with pytest.raises(UsageError):
        norton_check(0, Fraction(1, 2), Fraction(3, 2))
    with pytest.raises(UsageError):
        norton_check(5, Fraction(3, 2), Fraction(2))
    with pytest.raises(UsageError):
        norton_check(5, Fraction(1, 2), Fraction(1, 2))
