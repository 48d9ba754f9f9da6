from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gorenstein.errors import ArityMismatch, NonPolynomialResult, NotHomogeneous, ParseError
from gorenstein.polyring import (
    PERAZZO_VARIABLES,
    Form,
    RationalFunction,
    apply_operator,
    contract_operator,
    divide_exact,
    divided_powers,
    evaluate,
    monomials,
    parse_form,
    parse_operator,
    partials,
    substitute,
)


P = PERAZZO_VARIABLES
XY = ("x", "y", "z")


def form_strategy(variables=XY, max_degree=4):
    n = len(variables)

    def build(degree, coeffs):
        monos = monomials(n, degree)
        return Form(variables, {m: c for m, c in zip(monos, coeffs) if c}, degree)

    return st.integers(0, max_degree).flatmap(
        lambda d: st.lists(st.integers(-5, 5), min_size=len(monomials(n, d)), max_size=len(monomials(n, d))).map(
            lambda cs: build(d, cs)
        )
    )


def test_parse_perazzo_cubic():
    f = parse_form("u^2*x0 + u*v*x1 + v^2*x2", P)
    assert f.degree == 3
    assert f.coefficient((1, 0, 0, 2, 0)) == 1
    assert str(f) == "x0*u^2 + x1*u*v + x2*v^2"


def test_parse_errors():
    with pytest.raises(NotHomogeneous):
        parse_form("x^2 + y", XY)
    with pytest.raises(ParseError):
        parse_form("x + w", XY)
    with pytest.raises(ParseError):
        parse_form("x ++ y", XY)
    with pytest.raises(ParseError):
        parse_form("", XY)
    with pytest.raises(ParseError):
        parse_form("x^1/2", XY)


def test_parse_rationals_and_cancellation():
    f = parse_form("1/2*x*y - 3/4*z^2 + x*y - 3/2*x*y", XY)
    assert f == parse_form("-3/4*z^2", XY)


def test_apply_operator_examples(cubic):
    X0 = parse_operator("y0", ("y0", "y1", "y2", "U", "V"))
    assert apply_operator(X0, cubic) == parse_form("u^2", P)
    assert [str(p) for p in partials(cubic)] == ["u^2", "u*v", "v^2", "2*x0*u + x1*v", "x1*u + 2*x2*v"]


def test_contraction_equals_differentiation_on_divided_powers():
    f = parse_form("x^3*y + 2*y^2*z^2 - z^4", XY)
    q = parse_operator("X*Y - 3*Z^2", ("X", "Y", "Z"))
    assert divided_powers(contract_operator(q, f)) == apply_operator(q, divided_powers(f))


def test_evaluate_arity():
    f = parse_form("x*y", XY)
    assert evaluate(f, (2, 3, 5)) == 6
    with pytest.raises(ArityMismatch):
        evaluate(f, (1, 2))


def test_divide_exact():
    a = parse_form("x^2 - y^2", XY)
    b = parse_form("x + y", XY)
    assert divide_exact(a, b) == parse_form("x - y", XY)
    with pytest.raises(NonPolynomialResult):
        divide_exact(parse_form("x^2 + y^2", XY), b)


def test_substitute_rational_images():
    # f(x, y, z) = x*z - y^2 under x = y'^2 / z', y = y', z = z'  vanishes
    s = ("y'", "z'", "w'")
    yv, zv = Form.variable(s, 0), Form.variable(s, 1)
    images = [RationalFunction(yv * yv, zv), yv, zv]
    assert not substitute(parse_form("x*z - y^2", XY), images).terms


@settings(max_examples=60, deadline=None)
@given(form_strategy())
def test_format_parse_round_trip(f):
    if f.terms:
        assert parse_form(str(f), XY) == f


@settings(max_examples=40, deadline=None)
@given(form_strategy(max_degree=3), form_strategy(max_degree=2))
def test_product_rule(f, g):
    fg = f * g
    for i in range(3):
        lhs = fg.derivative(i)
        rhs = f.derivative(i) * g + f * g.derivative(i)
        assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(form_strategy(max_degree=3), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_euler_identity(f, point):
    d = f.degree
    lhs = sum(evaluate(f.derivative(i), point) * point[i] for i in range(3)) if d else 0
    assert lhs == d * evaluate(f, point)


@settings(max_examples=40, deadline=None)
@given(form_strategy(max_degree=3), form_strategy(max_degree=2))
def test_exact_division_inverts_multiplication(f, g):
    if g.terms:
        assert divide_exact(f * g, g) == f


def test_mixed_gaussian_coefficients():
    from gorenstein.exactmath import GaussianRational

    f = Form(XY, {(1, 0, 0): GaussianRational(0, 1), (0, 1, 0): Fraction(1)}, 1)
    assert (f * f).coefficient((2, 0, 0)) == -1
