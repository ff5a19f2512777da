# -*- coding: utf-8 -*-
"""Novikov 环运算、级数求逆与表达式解析"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from suturecalc.errors import ExpressionParseError, NoLeadingTermError, NonUnitError, SutureCalcError
from suturecalc.expr import evaluate, parse_element
from suturecalc.novikov import (
    NovikovElement,
    TruncatedSeries,
    arith,
    exact_divide,
    exp_hom,
    format_element,
    invert,
    is_unit,
    leading_term,
    truncate,
)

X = NovikovElement.from_terms([(1, 1), (-1, -1)])  # t − t^{-1}

exponents = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
elements = st.lists(st.tuples(exponents, st.integers(-5, 5)), max_size=5).map(NovikovElement.from_terms)


@st.composite
def units(draw):
    """首项系数为 ±1 的元素"""
    lead = draw(exponents)
    sign = draw(st.sampled_from([1, -1]))
    tail = draw(st.lists(st.tuples(st.builds(Fraction, st.integers(1, 6), st.integers(1, 3)), st.integers(-3, 3)), max_size=3))
    return NovikovElement.from_terms([(lead, sign)] + [(lead + gap, c) for gap, c in tail])


# ==================== 环公理 ====================

@given(elements, elements, elements)
def test_ring_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert (x - x).is_zero()
    assert x * NovikovElement.one() == x


@given(exponents, exponents)
def test_exp_hom_is_homomorphism(a, b):
    assert exp_hom(a) * exp_hom(b) == exp_hom(a + b)
    assert exp_hom(0) == NovikovElement.one()
    assert leading_term(exp_hom(a)) == (a, 1)


@given(elements, elements)
def test_arith_matches_operators(x, y):
    assert arith(x, y, "add") == x + y
    assert arith(x, y, "mul") == x * y
    assert arith(x, y, "neg") == -x


def test_arith_unknown_op():
    with pytest.raises(SutureCalcError):
        arith(X, X, "div")


def test_zero_has_no_leading_term():
    with pytest.raises(NoLeadingTermError):
        leading_term(NovikovElement.zero())
    assert leading_term(X) == (Fraction(-1), -1)


@given(elements, elements)
def test_leading_terms_multiply(x, y):
    # 整环：首项相乘，非零乘非零不为零
    if x.is_zero() or y.is_zero():
        return
    product = x * y
    assert not product.is_zero()
    (ex, cx), (ey, cy) = leading_term(x), leading_term(y)
    assert leading_term(product) == (ex + ey, cx * cy)


@given(elements, st.integers(-9, 9).filter(lambda n: n != 0))
def test_no_integer_torsion(x, n):
    if x.is_zero():
        return
    assert not (NovikovElement.constant(n) * x).is_zero()


@given(elements, elements)
def test_exact_divide_recovers_factor(x, y):
    if y.is_zero():
        return
    assert exact_divide(x * y, y) == x


def test_exact_divide_without_finite_quotient():
    assert exact_divide(NovikovElement.one(), X) is None
    assert exact_divide(NovikovElement.constant(3), NovikovElement.constant(2)) is None


# ==================== 级数求逆 ====================

@pytest.mark.parametrize("cutoff", [7, 50, 201])
def test_invert_t_minus_inverse_t(cutoff):
    series = invert(X, cutoff)
    assert series.cutoff == cutoff + 1
    product = series * X
    assert product.cutoff == cutoff
    assert product.element == NovikovElement.one()
    # 反过来乘结果相同
    assert (X * series).element == NovikovElement.one()


def test_invert_series_terms():
    series = invert(X, 7)
    assert series.element == parse_element("-t - t^3 - t^5 - t^7")
    assert format_element(series.element) == "-t^(1) - t^(3) - t^(5) - t^(7)"


@settings(max_examples=60)
@given(units(), st.integers(0, 12))
def test_invert_is_right_inverse(x, cutoff):
    series = invert(x, cutoff)
    assert (series * x).element == NovikovElement.one()


def test_invert_rejects_non_unit():
    with pytest.raises(NonUnitError):
        invert(NovikovElement.from_terms([(0, 2), (1, 1)]), 10)
    with pytest.raises(NonUnitError):
        invert(NovikovElement.zero(), 10)


def test_is_unit():
    assert is_unit(X)
    assert is_unit(NovikovElement.monomial(Fraction(-3, 2), -1))
    assert not is_unit(NovikovElement.constant(2))


def test_truncate_keeps_cutoff_term():
    x = NovikovElement.from_terms([(0, 1), (Fraction(7, 2), 4), (4, 1)])
    series = truncate(x, Fraction(7, 2))
    assert isinstance(series, TruncatedSeries)
    assert series.element == NovikovElement.from_terms([(0, 1), (Fraction(7, 2), 4)])


def test_series_multiplication_precision():
    a = truncate(NovikovElement.one(), 5)
    b = truncate(NovikovElement.monomial(2), 3)
    assert (a * b).cutoff == 3


# ==================== 表达式 ====================

def test_format_rational_exponents():
    x = NovikovElement.from_terms([(Fraction(-1, 2), 2), (0, -3), (Fraction(5, 3), 1)])
    assert format_element(x) == "2*t^(-1/2) - 3 + t^(5/3)"
    assert parse_element(format_element(x)) == x


def test_evaluate_example_product():
    value = evaluate("(t - t^(-1)) * (-t - t^3 - t^5 - t^7)", Fraction(7))
    assert value == NovikovElement.from_terms([(0, 1), (8, -1)])
    assert format_element(truncate(value, 7).element) == "1"


def test_evaluate_inv_expression():
    value = evaluate("inv(t - t^(-1)) * (t - t^(-1))", Fraction(7))
    assert isinstance(value, TruncatedSeries)
    assert value.element == NovikovElement.one()


def test_powers_and_rational_exponents():
    assert evaluate("(1 + t)^2") == parse_element("1 + 2*t + t^2")
    assert evaluate("t^(3/2) * t^(1/2)") == NovikovElement.monomial(2)
    assert evaluate("t^-2 * t^2") == NovikovElement.one()


def test_parse_element_rejects_series_value(monkeypatch):
    series = TruncatedSeries(NovikovElement.one(), Fraction(3))
    monkeypatch.setattr("suturecalc.expr.ExpressionParser.parse", lambda self: series)
    with pytest.raises(ExpressionParseError) as info:
        parse_element("1")
    assert info.value.text == "1"


@pytest.mark.parametrize("text", ["t +* 2", "(1 + t", "t^(1/0)", "2^(1/2)", "inv(t)", "3 $ 4"])
def test_parse_errors_report_position(text):
    with pytest.raises(ExpressionParseError) as info:
        parse_element(text)
    assert 0 <= info.value.position <= len(text)
