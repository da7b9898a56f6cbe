from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from klrcrystal.qpoly import (ONE, Q, LaurentPoly, NegativeN, RatFunc, ZeroDenominator, q_factorial,
                              q_integer, series_expand)

q = sp.symbols("q")


def to_sympy(p: LaurentPoly):
    return sum((sp.Rational(c.numerator, c.denominator) * q ** e for e, c in p.items()), sp.Integer(0))


laurent = st.dictionaries(st.integers(-5, 5), st.fractions(max_denominator=5).filter(bool),
                          max_size=5).map(LaurentPoly)


@given(laurent, laurent, laurent)
@settings(max_examples=150, deadline=None)
def test_ring_operations_agree_with_sympy(a, b, c):
    lhs = (a + b) * c - a
    rhs = to_sympy(a) * to_sympy(c) + to_sympy(b) * to_sympy(c) - to_sympy(a)
    assert sp.expand(to_sympy(lhs) - rhs) == 0


@given(laurent)
@settings(max_examples=80, deadline=None)
def test_bar_is_an_involution_matching_substitution(a):
    assert a.bar().bar() == a
    assert sp.expand(to_sympy(a.bar()) - to_sympy(a).subs(q, 1 / q)) == 0


@pytest.mark.parametrize("n", range(0, 7))
@pytest.mark.parametrize("r", [1, 2])
def test_q_integers_and_factorials(n, r):
    qr = q ** r
    want = sp.expand(sp.cancel((qr ** n - qr ** -n) / (qr - qr ** -1))) if n else 0
    assert sp.expand(to_sympy(q_integer(n, r)) - want) == 0
    fact = sp.Integer(1)
    for k in range(1, n + 1):
        fact *= sp.cancel((qr ** k - qr ** -k) / (qr - qr ** -1))
    assert sp.expand(to_sympy(q_factorial(n, r)) - fact) == 0
    # bar invariance and the value at q = 1
    assert q_factorial(n, r).bar() == q_factorial(n, r)
    assert q_factorial(n, r).at_one() == sp.factorial(n)


def test_negative_arguments_are_rejected():
    with pytest.raises(NegativeN):
        q_integer(-1)
    with pytest.raises(NegativeN):
        q_factorial(-2)


def test_rational_functions_reduce_and_compare():
    f = RatFunc(ONE - Q ** 4, ONE - Q ** 2)
    assert f.is_laurent()
    assert f == ONE + Q ** 2
    with pytest.raises(ZeroDenominator):
        RatFunc(ONE, LaurentPoly())
    g = RatFunc(Q, ONE - Q ** 2)
    assert (g + g) / g == RatFunc(LaurentPoly.const(2))


@pytest.mark.parametrize("num,den", [
    ({0: 1}, {0: 1, 2: -1}),
    ({-2: 1, 0: 1}, {0: 1, 2: -2, 4: 1}),
    ({1: 3}, {0: 2, 1: 1}),
    ({-1: 1}, {-2: 1, 0: -1}),
])
def test_series_expansion_against_sympy(num, den):
    n, d = LaurentPoly(num), LaurentPoly(den)
    s = series_expand(RatFunc(n, d), 12)
    expr = to_sympy(n) / to_sympy(d)
    ref = sp.series(expr, q, 0, 13).removeO()
    ref_coeffs = {e: ref.coeff(q, e) for e in range(-6, 13)}
    for e in range(-6, 13):
        assert s.coeff(e) == Fraction(str(ref_coeffs[e])), e


def test_series_multiplication_respects_truncation():
    a = series_expand(RatFunc(ONE, ONE - Q ** 2), 10)
    b = series_expand(RatFunc(ONE, ONE - Q ** 2), 10)
    prod = a * b
    for e in range(0, 11, 2):
        assert prod.coeff(e) == e // 2 + 1
