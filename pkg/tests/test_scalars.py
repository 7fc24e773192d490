from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cliffordefb.scalars import (
    FIELD_Q,
    FIELD_QI,
    QI,
    coerce,
    format_scalar,
    parse_scalar,
    random_scalar,
    star,
)
from cliffordefb.errors import FieldMismatchError, MalformedInputError

fractions = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)
gaussians = st.builds(QI, fractions, fractions)


@settings(max_examples=100, derandomize=True)
@given(gaussians, gaussians, gaussians)
def test_qi_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + QI() == x
    assert x * QI(1) == x
    if x:
        assert x * (QI(1) / x) == QI(1)


@settings(max_examples=100, derandomize=True)
@given(gaussians)
def test_star_involution(x):
    assert star(star(x)) == x
    assert star(x) * x == QI(x.re * x.re + x.im * x.im)


def test_star_identity_on_rationals():
    assert star(Fraction(3, 7)) == Fraction(3, 7)


@pytest.mark.parametrize(
    "value,expected",
    [
        (Fraction(1, 2), "1/2"),
        (Fraction(-3), "-3"),
        (Fraction(0), "0"),
        (QI(Fraction(1, 2), Fraction(3, 4)), "1/2+3/4 i"),
        (QI(Fraction(-1, 2), Fraction(-3, 4)), "-1/2-3/4 i"),
        (QI(0, 1), "0+1 i"),
        (QI(Fraction(5, 3), 0), "5/3"),
    ],
)
def test_format_scalar(value, expected):
    assert format_scalar(value) == expected


@settings(max_examples=80, derandomize=True)
@given(gaussians)
def test_parse_round_trip_qi(x):
    assert parse_scalar(format_scalar(x), FIELD_QI) == x


@settings(max_examples=80, derandomize=True)
@given(fractions)
def test_parse_round_trip_q(x):
    assert parse_scalar(format_scalar(x), FIELD_Q) == x


def test_parse_rejects_junk():
    with pytest.raises(MalformedInputError):
        parse_scalar("3/4/5", FIELD_Q)
    with pytest.raises(MalformedInputError):
        parse_scalar("1/0", FIELD_Q)


def test_coerce_rejects_cross_field():
    with pytest.raises(FieldMismatchError):
        coerce(QI(0, 1), FIELD_Q)
    assert coerce(QI(3, 0), FIELD_Q) == Fraction(3)
    assert coerce(Fraction(2, 5), FIELD_QI) == QI(Fraction(2, 5))


def test_random_scalar_height_bound(rng):
    for field in (FIELD_Q, FIELD_QI):
        for _ in range(200):
            x = random_scalar(rng, field, nonzero=True, height=100)
            assert x
            parts = (x.re, x.im) if isinstance(x, QI) else (x,)
            for p in parts:
                assert abs(p.numerator) <= 100 and p.denominator <= 100
