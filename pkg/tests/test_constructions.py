"""Both primitive-set constructions and their certificates."""

import math
from fractions import Fraction

import numpy as np
import pytest
from mpmath import mp

from primfield.brackets import BracketedValue, precision
from primfield.constructions import (GrowthFunction, besicovitch_construct,
                                     build_t_sequence, divisor_degree_masks,
                                     irreducible_density_constant,
                                     mp_construct, mp_diagnostics)
from primfield.errors import BudgetError, UsageError
from primfield.fieldpoly import enumerate_monic, factorize, is_irreducible
from primfield.irreducibles import pi_cumulative, pi_prime
from primfield.primitive import assert_primitive, erdos_sum
from primfield.counting import monic_cumulative


# ----------------------------------------------------------------------
# Growth functions
# ----------------------------------------------------------------------

def test_growth_parse_format_round_trip():
    for text in ("log:eps=0.1", "log:eps=1/4", "iterlog:j=2,eps=2",
                 "iterlog:j=3,eps=1/2"):
        g = GrowthFunction.parse(text)
        assert GrowthFunction.parse(g.format()) == g


def test_growth_parse_rejects_garbage():
    for text in ("", "pow:eps=1", "log:", "log:eps=0", "log:eps=-1",
                 "iterlog:j=1,eps=1", "log:eps=x", "log:zeta=1",
                 "iterlog:eps"):
        with pytest.raises(UsageError):
            GrowthFunction.parse(text)


@pytest.mark.parametrize("spec", ["log:eps=0.1", "iterlog:j=2,eps=2",
                                  "iterlog:j=3,eps=1"])
def test_growth_iv_contains_float_and_is_monotone(spec):
    g = GrowthFunction.parse(spec)
    xs = [1, 2, 3, 5, 10, 100, 10**4, 10**6]
    with precision(96):
        brackets = [BracketedValue.from_iv(g.value_iv(x)) for x in xs]
    floats = g.value_float(np.array(xs, dtype=np.float64))
    for b, f in zip(brackets, floats):
        assert float(b.lo) - 1e-9 <= f <= float(b.hi) + 1e-9
        assert b.lo >= 1  # L is clamped at 1
    for a, b in zip(brackets, brackets[1:]):
        assert b.hi >= a.lo  # nondecreasing up to bracket width


def test_growth_matches_closed_form():
    g = GrowthFunction.parse("log:eps=0.1")
    with precision(96):
        b = BracketedValue.from_iv(g.value_iv(10))
    mp.dps = 40
    ref = Fraction(str(mp.log(10 + mp.e)**Fraction(11, 10)))
    assert abs(b.midpoint - ref) < Fraction(1, 10**20)


def test_growth_tail_integral_decreasing():
    g = GrowthFunction.parse("log:eps=0.1")
    with precision(96):
        t1 = g.tail_integral_upper(2**12)
        t2 = g.tail_integral_upper(2**14)
    assert 0 < t2 < t1
    # closed form 1/((2 + eps) log^(2+eps) K)
    k = 2**12
    ref = 1.0 / (2.1 * math.log(k)**2.1)
    assert abs(float(t1) - ref) < 1e-10


# ----------------------------------------------------------------------
# Density constant
# ----------------------------------------------------------------------

def test_density_constant_golden_and_dominance():
    assert irreducible_density_constant(2) == 3 + Fraction(1, 2**24)
    assert irreducible_density_constant(3) == 2 + Fraction(1, 2**25)
    for q in (2, 3, 5):
        c = irreducible_density_constant(q)
        for n in range(1, 121):
            assert pi_cumulative(q, n) * n <= c * q**n


# ----------------------------------------------------------------------
# t-sequences
# ----------------------------------------------------------------------

@pytest.fixture(scope="module")
def tseq2():
    return build_t_sequence(2, "log:eps=0.1")


def test_t_sequence_certificate_golden(tseq2):
    t = tseq2
    assert (t.q, t.K, t.k0) == (2, 4096, 2)
    assert t.ranks[:10] == (1, 3, 5, 8, 10, 14, 17, 20, 24, 27)
    assert t.degrees[:10] == (1, 2, 3, 4, 5, 5, 6, 6, 7, 7)
    assert t.certified
    assert t.suffix_sum + t.tail_bound < Fraction(1, 2)
    assert abs(t.suffix_sum - Fraction("0.218612")) < Fraction(1, 10**4)
    assert abs(t.tail_bound - Fraction("0.008027")) < Fraction(1, 10**4)


def test_t_sequence_suffix_matches_independent_recompute(tseq2):
    t = tseq2
    mp.dps = 60
    g = GrowthFunction.parse("log:eps=0.1")
    cum = [0]
    while cum[-1] < t.ranks[-1]:
        cum.append(pi_cumulative(2, len(cum)))
    suffix = Fraction(0)
    for k in range(t.k0, t.K + 1):
        val = k * mp.log(k + mp.e)**mp.mpf("1.1")
        rank = int(mp.floor(val))
        assert abs(val - mp.nint(val)) > mp.mpf("1e-30")  # off boundaries
        if k <= len(t.ranks):
            assert rank == t.ranks[k - 1]
        while cum[-1] < rank:
            cum.append(pi_cumulative(2, len(cum)))
        deg = next(n for n in range(1, len(cum)) if cum[n] >= rank)
        if k <= len(t.degrees):
            assert deg == t.degrees[k - 1]
        suffix += Fraction(1, deg * 2**deg)
    assert suffix == t.suffix_sum


def test_t_sequence_terms_are_ordered_irreducibles(tseq2, sieve2):
    t = tseq2
    assert all(r2 > r1 for r1, r2 in zip(t.ranks, t.ranks[1:]))
    assert all(d2 >= d1 for d1, d2 in zip(t.degrees, t.degrees[1:]))
    seen = set()
    for k, term in enumerate(t.terms, start=1):
        assert term.degree == t.degrees[k - 1]
        assert is_irreducible(term, sieve2)
        assert term.index not in seen
        seen.add(term.index)
    assert t.term(1) == t.terms[0]
    with pytest.raises(UsageError):
        t.term(len(t.terms) + 1)


def test_t_sequence_other_laws_certify():
    t3 = build_t_sequence(3, "log:eps=0.1")
    assert t3.certified and t3.k0 == 2
    ti = build_t_sequence(2, "iterlog:j=2,eps=2")
    assert ti.certified and ti.k0 == 3


def test_t_sequence_honors_small_budget():
    # an easy growth law certifies inside a tiny term budget and the
    # cutoff K never exceeds it
    t = build_t_sequence(2, "log:eps=0.1", terms_budget=100)
    assert t.K <= 100
    assert t.certified


def test_t_sequence_budget_failures():
    with pytest.raises(UsageError):
        build_t_sequence(2, "log:eps=0.1", terms_budget=1)
    with pytest.raises(BudgetError):
        # K = 4 leaves theta L(K+1) below the density constant
        build_t_sequence(2, "log:eps=0.1", terms_budget=4)
    with pytest.raises(BudgetError):
        # eps=1 iterated-log tail needs K near 8e7, far over any desk budget
        build_t_sequence(2, "iterlog:j=2,eps=1", terms_budget=2**13)


# ----------------------------------------------------------------------
# Divisor-degree masks
# ----------------------------------------------------------------------

def test_masks_match_per_polynomial_recurrence(sieve2, sieve3):
    for sieve, dmax in ((sieve2, 10), (sieve3, 5)):
        q = sieve.q
        masks = divisor_degree_masks(sieve)
        for n in range(1, dmax + 1):
            for f in enumerate_monic(q, n):
                assert masks[f.index] == \
                    factorize(f, sieve).divisor_degree_mask()


# ----------------------------------------------------------------------
# Layered slice construction
# ----------------------------------------------------------------------

def test_besicovitch_small_q2(sieve2):
    res = besicovitch_construct(2, Fraction(1, 4), 12, sieve=sieve2)
    assert res.ok and res.levels == (12,)
    assert len(res.members) == 4096
    assert res.density == Fraction(4096, monic_cumulative(2, 12))
    assert_primitive(res.members, sieve=sieve2)
    # every degree below the admitted level was refused for cause
    refused = {r.degree for r in res.window if not r.admitted}
    assert refused == set(range(1, 12))
    for r in res.window:
        assert r.admitted == (r.worst_ratio <= r.threshold)
        if not r.admitted:
            assert r.worst_degree is not None


def test_besicovitch_small_q3(sieve3):
    res = besicovitch_construct(3, Fraction(1, 4), 6, sieve=sieve3)
    assert res.levels == (6,) and len(res.members) == 729
    assert res.density == Fraction(729, monic_cumulative(3, 6))
    assert_primitive(res.members, sieve=sieve3)


def test_besicovitch_guards(sieve2):
    for eps in (0, 1, Fraction(3, 2), -1):
        with pytest.raises(UsageError):
            besicovitch_construct(2, eps, 10, sieve=sieve2)
    with pytest.raises(UsageError):
        besicovitch_construct(2, Fraction(1, 4), 0, sieve=sieve2)
    with pytest.raises(BudgetError):
        besicovitch_construct(2, Fraction(1, 4), 12, max_members=100,
                              sieve=sieve2)


# ----------------------------------------------------------------------
# Thinned-irreducible construction
# ----------------------------------------------------------------------

@pytest.fixture(scope="module")
def mp12(tseq2):
    return mp_construct(2, tseq2, 12, enum_horizon=12)


def test_mp_counts_equal_enumeration_of_union(mp12):
    assert mp12.cross_checked
    assert mp12.enum_horizon == 12
    by_degree = mp12.members.degree_counts()
    for n, total in enumerate(mp12.total_by_degree()):
        assert by_degree.get(n, 0) == total


def test_mp_erdos_partial_matches_member_sum(mp12):
    # horizon == enum_horizon, so the table-side sum must equal the
    # member-side sum exactly
    assert mp12.erdos_partial == erdos_sum(mp12.members)
    assert 0 < mp12.erdos_partial_from_k0 <= mp12.erdos_partial


def test_mp_s1_row_is_the_single_first_term(mp12, tseq2):
    row = mp12.counts[0]
    d1 = tseq2.degrees[0]
    assert row[d1] == 1
    assert sum(row) == 1


def test_mp_members_satisfy_slice_conditions(mp12, tseq2, sieve2):
    term_rank = {t.index: k for k, t in enumerate(tseq2.terms, start=1)}
    for f in mp12.members:
        fac = factorize(f, sieve2)
        assert fac.is_squarefree
        hits = sorted(term_rank[p.index] for p, _ in fac.factors
                      if p.index in term_rank)
        assert hits, "every member is divisible by some t_k"
        assert fac.omega == hits[0]
    assert_primitive(mp12.members, sieve=sieve2)


def test_mp_q3_small():
    res = mp_construct(3, build_t_sequence(3, "log:eps=0.1"), 9,
                       enum_horizon=9)
    assert res.cross_checked
    assert res.erdos_partial == erdos_sum(res.members)
    assert_primitive(res.members)


def test_mp_guards(tseq2):
    with pytest.raises(UsageError):
        mp_construct(3, tseq2, 12)  # t-sequence for the wrong field
    with pytest.raises(UsageError):
        mp_construct(2, tseq2, 12, enum_horizon=14)
    with pytest.raises(BudgetError):
        # materialized prefix too short for this horizon
        short = build_t_sequence(2, "log:eps=0.1", materialize=4)
        mp_construct(2, short, 40, enum_horizon=10)


def test_mp_diagnostics_shape(mp12):
    rows = mp_diagnostics(mp12)
    assert [r.n for r in rows] == list(range(2, 13))
    totals = mp12.total_by_degree()
    for r in rows:
        assert r.total == totals[r.n]
        assert r.band_lo <= r.band_hi
        assert r.z_worst >= 0
