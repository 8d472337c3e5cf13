from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from multimatroid.poly import T, Polynomial, named, product, t_poly, weight

VARS = [T, weight("a."), weight("b-"), named("alpha[e]")]


def to_sympy(p: Polynomial):
    out = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in mono:
            term *= sympy.Symbol(str(v)) ** e
        out += term
    return sympy.expand(out)


@st.composite
def polys(draw):
    p = Polynomial()
    for _ in range(draw(st.integers(0, 4))):
        c = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
        mono = Polynomial.const(c)
        for v in VARS:
            mono = mono * Polynomial.var(v, draw(st.integers(0, 2)))
        p = p + mono
    return p


@given(polys(), polys())
def test_ring_operations_match_sympy(a, b):
    assert to_sympy(a + b) == sympy.expand(to_sympy(a) + to_sympy(b))
    assert to_sympy(a - b) == sympy.expand(to_sympy(a) - to_sympy(b))
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))


@given(polys(), st.integers(0, 3))
def test_powers_match_sympy(a, n):
    assert to_sympy(a ** n) == sympy.expand(to_sympy(a) ** n)


@given(polys(), polys())
def test_specialize_matches_sympy_subs(a, b):
    got = a.specialize({T: b})
    want = sympy.expand(to_sympy(a).subs(sympy.Symbol("t"), to_sympy(b)))
    assert to_sympy(got) == want


@given(polys())
def test_json_round_trip(a):
    assert Polynomial.from_json(a.to_json()) == a


def test_rendering():
    t = t_poly()
    assert str((t / 2 + 1) ** 2 * 4 + (t / 2 + 1) * 12) == "t^2 + 10*t + 16"
    assert str(Polynomial()) == "0"
    assert str(Polynomial.const(1)) == "1"
    assert str(Polynomial.const(Fraction(-1, 2)) * t) == "-1/2*t"
    assert str(Polynomial.var(weight("a.")) * t) == "t*x[a.]"


def test_term_order_is_lexicographic():
    x, w, t = Polynomial.var("x"), Polynomial.var("w"), t_poly()
    p = x ** 3 + w * x * x * t * 3 + w ** 3 * t + t
    assert str(p) == "t*w^3 + 3*t*w*x^2 + t + x^3"
    assert str(t * x + t + 1) == "t*x + t + 1"
    q = Polynomial.var(weight("b")) * 2 + Polynomial.var(weight("a")) ** 2 + t ** 2
    assert str(q) == "t^2 + x[a]^2 + 2*x[b]"


def test_coefficients_and_degree():
    t = t_poly()
    p = t * t + t * 10 + 16
    assert p.degree() == 2
    assert [c.constant() for c in p.coefficients()] == [16, 10, 1]


def test_evaluate_needs_every_variable():
    p = t_poly() + Polynomial.var(weight("a"))
    assert p.evaluate({T: 2, weight("a"): Fraction(1, 3)}) == Fraction(7, 3)
    with pytest.raises(ValueError):
        p.evaluate({T: 2})


def test_product_and_equality_with_scalars():
    t = t_poly()
    assert product([t + 1, t - 1]) == t * t - 1
    assert Polynomial.const(3) == 3
    assert product([]) == 1
