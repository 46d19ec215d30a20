"""Outward-rounded interval layer: containment can never be lost."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import iv, mp

from primfield.brackets import (DEFAULT_PRECISION_BITS, BracketedValue,
                                euler_gamma_bracket, fraction_to_decimal,
                                iv_from_fraction, iv_pointwise_max, iv_span,
                                iv_to_fractions, precision)
from primfield.errors import PrecisionError, UsageError

rationals = st.fractions(min_value=-10**6, max_value=10**6,
                         max_denominator=10**6)


# ----------------------------------------------------------------------
# Interval plumbing
# ----------------------------------------------------------------------

@given(rationals)
def test_iv_round_trip_contains(fr):
    with precision(64):
        lo, hi = iv_to_fractions(iv_from_fraction(fr))
    assert lo <= fr <= hi


def test_precision_context_restores():
    before = iv.prec
    with precision(333):
        assert iv.prec == 333
        with precision(64):
            assert iv.prec == 64
        assert iv.prec == 333
    assert iv.prec == before
    with pytest.raises(PrecisionError):
        with precision(0):
            pass


def test_iv_span_and_pointwise_max():
    with precision(64):
        x = iv_span(Fraction(1, 3), Fraction(1, 2))
        y = iv_span(Fraction(2, 5), Fraction(3, 5))
        m = iv_pointwise_max(x, y)
        lo, hi = iv_to_fractions(m)
    assert lo <= Fraction(2, 5) and hi >= Fraction(3, 5)
    with pytest.raises(UsageError):
        iv_span(Fraction(1), Fraction(0))


# ----------------------------------------------------------------------
# BracketedValue semantics
# ----------------------------------------------------------------------

def test_bracket_validation_and_accessors():
    b = BracketedValue(Fraction(1, 3), Fraction(1, 2))
    assert b.width == Fraction(1, 6)
    assert b.midpoint == Fraction(5, 12)
    assert b.contains(Fraction(2, 5)) and not b.contains(Fraction(2))
    assert BracketedValue.exactly(7).width == 0
    with pytest.raises(UsageError):
        BracketedValue(Fraction(1), Fraction(0))


@given(rationals, rationals)
def test_from_iv_outward(a, b):
    with precision(48):
        x = iv_from_fraction(a) * iv_from_fraction(b)
        br = BracketedValue.from_iv(x)
    assert br.contains(a * b)


@given(rationals, rationals, rationals, rationals)
def test_arithmetic_preserves_containment(a, b, c, d):
    x = BracketedValue(min(a, b), max(a, b))
    y = BracketedValue(min(c, d), max(c, d))
    for lhs, rhs, op in (
        (x + y, None, lambda u, v: u + v),
        (x - y, None, lambda u, v: u - v),
        (x * y, None, lambda u, v: u * v),
    ):
        for u in (x.lo, x.hi, x.midpoint):
            for v in (y.lo, y.hi, y.midpoint):
                assert lhs.contains(op(u, v))
    assert abs(x).contains(abs(x.midpoint))
    assert (x + Fraction(2)).contains(x.midpoint + 2)
    assert (Fraction(2) - x).contains(2 - x.midpoint)
    assert (x * 3).contains(x.lo * 3)


def test_strict_comparisons_need_disjoint_brackets():
    a = BracketedValue(Fraction(0), Fraction(1))
    b = BracketedValue(Fraction(1, 2), Fraction(2))
    c = BracketedValue(Fraction(3, 2), Fraction(3))
    assert not a.strictly_below(b)  # overlap is not a proof
    assert a.strictly_below(c)
    assert c.strictly_above(a)
    assert a.strictly_below(Fraction(5, 4))
    assert not a.strictly_below(Fraction(1))
    assert BracketedValue(Fraction(1), Fraction(1)).contains_bracket(
        BracketedValue(Fraction(1), Fraction(1)))


# ----------------------------------------------------------------------
# Decimal rendering
# ----------------------------------------------------------------------

def test_fraction_to_decimal_directions():
    assert fraction_to_decimal(Fraction(1, 3), 5, "floor") == "0.33333"
    assert fraction_to_decimal(Fraction(1, 3), 5, "ceil") == "0.33334"
    assert fraction_to_decimal(Fraction(-1, 3), 4, "floor") == "-0.3334"
    assert fraction_to_decimal(Fraction(-1, 3), 4, "ceil") == "-0.3333"
    assert fraction_to_decimal(Fraction(1, 8), 3, "floor") == "0.125"
    assert fraction_to_decimal(Fraction(1, 8), 3, "ceil") == "0.125"
    with pytest.raises(UsageError):
        fraction_to_decimal(Fraction(1, 3), 3, "nearest")


@given(rationals, st.integers(1, 12))
def test_decimal_round_trip_never_narrows(fr, digits):
    lo = Fraction(fraction_to_decimal(fr, digits, "floor"))
    hi = Fraction(fraction_to_decimal(fr, digits, "ceil"))
    assert lo <= fr <= hi
    assert hi - lo <= Fraction(1, 10**digits)


def test_bracket_to_json_brackets_the_value():
    b = BracketedValue(Fraction(1, 3), Fraction(1, 3))
    d = b.to_json(digits=10)
    assert Fraction(d["lo"]) <= Fraction(1, 3) <= Fraction(d["hi"])
    assert "0.3333333" in str(b)


# ----------------------------------------------------------------------
# Constants
# ----------------------------------------------------------------------

def test_euler_gamma_bracket_tight_and_correct():
    g = euler_gamma_bracket()
    # 50 digits of the Euler-Mascheroni constant
    ref = Fraction(
        "0.57721566490153286060651209008240243104215933593992")
    assert g.contains(ref)
    assert g.width < Fraction(1, 10**30)
    loose = euler_gamma_bracket(precision_bits=32)
    assert loose.contains(ref) and loose.width < Fraction(1, 10**6)
