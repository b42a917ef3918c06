from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from excy.asymptotics import (RationalEnclosure, alpha, alpha_digits, alpha_with_width,
                              certified_decimal, ratio_constants)


def test_first_enclosure():
    enc = alpha(1)
    assert enc.lo == Fraction(7, 2)
    assert enc.hi > 5.53


def test_enclosures_nest_and_shrink():
    prev = alpha(1)
    for t in range(2, 8):
        enc = alpha(t)
        assert prev.lo <= enc.lo and enc.hi <= prev.hi
        assert enc.width < prev.width
        prev = enc


def test_six_places():
    text, enc = alpha_digits(6)
    assert text == "5.522868"
    assert enc.rounds_to("5.522868")
    assert alpha_digits(12)[0] == "5.522868307167"


def test_width_target():
    enc = alpha_with_width(Fraction(1, 10 ** 6))
    assert enc.width < Fraction(1, 10 ** 6)
    assert enc.rounds_to("5.522868")
    assert not enc.rounds_to("5.522869")


def test_derived_constants():
    c = ratio_constants(alpha_with_width(Fraction(1, 10 ** 9)))
    assert c["odd"].rounds_to("22.876556")
    assert c["index_even"].rounds_to("6.213227")
    assert c["index_odd"].rounds_to("26.144635")


def test_certified_decimal_refuses_straddle():
    enc = RationalEnclosure(Fraction(14, 10), Fraction(16, 10))
    assert certified_decimal(enc, 0) is None
    assert certified_decimal(enc, 1) is None
    narrow = RationalEnclosure(Fraction(141, 100), Fraction(144, 100))
    assert certified_decimal(narrow, 1) == "1.4"


def test_bad_arguments():
    with pytest.raises(ValueError):
        alpha(0)
    with pytest.raises(ValueError):
        RationalEnclosure(Fraction(2), Fraction(1))
    with pytest.raises(ValueError):
        alpha_digits(0)


positive = st.fractions(min_value=Fraction(1, 1000), max_value=1000)


@given(positive, positive, positive, positive, st.floats(0, 1), st.floats(0, 1))
def test_interval_product_contains_products(a, b, c, d, s, t):
    x = RationalEnclosure(min(a, b), max(a, b))
    y = RationalEnclosure(min(c, d), max(c, d))
    px = x.lo + (x.hi - x.lo) * Fraction(s)
    py = y.lo + (y.hi - y.lo) * Fraction(t)
    assert (x * y).contains(px * py)
    assert (x + y).contains(px + py)
    assert (x / 3).contains(px / 3)
