from fractions import Fraction

from hypothesis import given, strategies as st

from kclan.exactalg import (
    LinearForm, Poly, RationalFunction, format_poly, parse_poly, rf_sum, sub_products,
    weight_to_alpha,
)

small = st.integers(-5, 5)
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
                        small, max_size=6).map(lambda d: Poly.from_exps(d, 3))
points = st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=7), min_size=3, max_size=3)


def test_basic_arithmetic():
    a1, a2 = Poly.var(1, 2), Poly.var(2, 2)
    p = (a1 + a2) ** 2
    assert p == a1 * a1 + a2 * a2 + a1 * a2 * 2
    assert p.degree() == 2
    assert (p - p).is_zero()
    assert Poly.const(3, 2).constant_term() == 3


@given(polys, polys, points)
def test_ring_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(polys, polys, polys)
def test_sub_products(base, p, q):
    assert sub_products(base, [(p, q), (q, p)]) == base - p * q - q * p


@given(polys, st.lists(small, min_size=3, max_size=3), small)
def test_divide_linear(p, coeffs, const):
    f = LinearForm(coeffs, const)
    if f.is_zero():
        return
    prod = p * f.to_poly()
    assert prod.divide_linear(f) == p


def test_divide_linear_inexact():
    a1 = Poly.var(1, 2)
    assert (a1 + 1).divide_linear(LinearForm([0, 1])) is None


@given(polys)
def test_format_parse_roundtrip(p):
    assert parse_poly(format_poly(p), 3) == p


@given(polys)
def test_json_roundtrip(p):
    assert Poly.from_json(p.to_json(), 3) == p


def test_fraction_coefficients():
    p = Poly.const(Fraction(1, 2), 1) * 2
    assert p == Poly.const(1, 1)
    assert isinstance(p.constant_term(), int)


def test_weight_to_alpha():
    # e1 - e3 = a1 + a2
    f = weight_to_alpha((1, 0, -1))
    assert f.to_poly() == Poly.var(1, 2) + Poly.var(2, 2)
    sign, g = weight_to_alpha((-1, 0, 1)).normalized()
    assert sign == -1 and g == f


def test_rational_functions():
    a1, a2 = LinearForm([1, 0]), LinearForm([0, 1])
    r = RationalFunction(Poly.const(1, 2), {a1: 1}) + RationalFunction(Poly.const(1, 2), {a2: 1})
    # 1/a1 + 1/a2 = (a1 + a2) / (a1 a2)
    assert r == RationalFunction(a1.to_poly() + a2.to_poly(), {a1: 1, a2: 1})
    assert r.is_polynomial() is None
    s = rf_sum([RationalFunction(Poly.const(1, 2), {a1: 1}),
                RationalFunction(Poly.const(-1, 2), {a1: 1})])
    assert s.is_zero()
    assert RationalFunction(a1.to_poly() * a2.to_poly(), {a1: 1}).is_polynomial() == a2.to_poly()


@given(points)
def test_rational_evaluate(pt):
    a = LinearForm([1, 1, 0], 1)
    r = RationalFunction(Poly.var(3, 3), {a: 2})
    v = a.evaluate(pt)
    if v != 0:
        assert r.evaluate(pt) == Fraction(pt[2]) / v ** 2


def test_rf_json_roundtrip():
    a = LinearForm([1, -1, 0])
    r = RationalFunction(Poly.var(1, 3) * 3, {a: 2})
    assert RationalFunction.from_json(r.to_json(), 3) == r
