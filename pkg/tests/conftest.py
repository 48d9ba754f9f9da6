import pytest

from gorenstein.polyring import PERAZZO_VARIABLES, parse_form

P = PERAZZO_VARIABLES
IKEDA_VARS = ("x", "y", "z", "t")

PERAZZO_CUBIC = "u^2*x0 + u*v*x1 + v^2*x2"
IKEDA = "x*z^3*t + y*z*t^3 + x^3*y^2"
DEGREE6 = "5*u^3*v^2*x0 + u^5*x1 + v^5*x1 + 2*u*v^4*x2 - 3*u^3*v^2*x2 + u^6 - 3*u^2*v^4"
# the same example with the C-block entries exactly as printed (c_2 = -1/10)
DEGREE6_PRINTED = "5*u^3*v^2*x0 + u^5*x1 + v^5*x1 + 2*u*v^4*x2 - u^3*v^2*x2 + u^6 - 3*u^2*v^4"
F1 = "u^5*x0 + u^4*v*x0 + u^3*v^2*x1 + v^5*x2"
F2 = "u^6*x0 + u^3*v^3*x1 + v^6*x2"

F1_GENERATORS = (
    "y2*U, y0*U - y0*V - y1*V, y0^2, y1^2, y2^2, y0*y1, y0*y2, y1*y2, "
    "y0*V^2, U*V^3, y1*U^3 - y2*V^3, U^5 - U^4*V, U^6, V^6"
)
F2_GENERATORS = (
    "y0^2, y1^2, y2^2, y0*y1, y0*y2, y1*y2, y0*V, y2*U, y1*U^3 - y2*V^3, "
    "y0*U^3 - y1*V^3, U*V^4, U^4*V, V^7, U^7"
)


def perazzo(text):
    return parse_form(text, P)


@pytest.fixture
def cubic():
    return perazzo(PERAZZO_CUBIC)


@pytest.fixture
def ikeda():
    return parse_form(IKEDA, IKEDA_VARS)
