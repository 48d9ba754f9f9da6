import random

import pytest

from gorenstein.errors import DegreeOutOfRange, DegreeTooSmall, NotSquare
from gorenstein.exactmath import determinant
from gorenstein.hessians import (
    VerdictStatus,
    evaluate_matrix,
    hessian_generic_rank,
    hessian_matrix,
    higher_hessian,
    symbolic_determinant,
    vanishing_verdict,
)
from gorenstein.polyring import evaluate, parse_form

XYZ = ("x", "y", "z")


def test_perazzo_cubic_hessian_vanishes_symbolically(cubic):
    verdict = vanishing_verdict(hessian_matrix(cubic))
    assert verdict.status == VerdictStatus.ZERO_SYMBOLIC
    assert not verdict.determinant.terms
    assert hessian_generic_rank(cubic) == 4


def test_ikeda_higher_hessians(ikeda):
    first = vanishing_verdict(higher_hessian(ikeda, 1).entries)
    assert first.status == VerdictStatus.NONZERO_CERTIFIED
    assert determinant(evaluate_matrix(higher_hessian(ikeda, 1).entries, first.witness)) == first.value
    second = vanishing_verdict(higher_hessian(ikeda, 2).entries, symbolic_max=0, lines=3)
    assert second.status == VerdictStatus.ZERO_PROBABILISTIC
    assert len(second.lines) == 3


def test_ikeda_hessian_has_expected_term(ikeda):
    det = symbolic_determinant(hessian_matrix(ikeda))
    assert det.coefficient((1, 3, 1, 7)) == 72


def test_nonvanishing_hessian_certificate():
    f = parse_form("x^3 + y^3 + z^3", XYZ)
    verdict = vanishing_verdict(hessian_matrix(f))
    assert verdict.status == VerdictStatus.NONZERO_CERTIFIED
    assert verdict.witness is not None


def test_errors():
    with pytest.raises(DegreeTooSmall):
        hessian_matrix(parse_form("x", XYZ))
    with pytest.raises(DegreeOutOfRange):
        higher_hessian(parse_form("x^3", XYZ), 2)
    with pytest.raises(NotSquare):
        vanishing_verdict([[parse_form("x", XYZ)]] * 2)


def test_symbolic_determinant_matches_pointwise(ikeda):
    entries = hessian_matrix(ikeda)
    det = symbolic_determinant(entries)
    rng = random.Random(3)
    for _ in range(5):
        point = tuple(rng.randint(-4, 4) for _ in range(4))
        assert evaluate(det, point) == determinant(evaluate_matrix(entries, point))


def test_probabilistic_route_agrees_with_symbolic():
    f = parse_form("x^2*y + y^2*z + z^3", XYZ)
    entries = hessian_matrix(f)
    exact = vanishing_verdict(entries)
    lines = vanishing_verdict(entries, symbolic_max=0)
    assert not exact.is_zero and not lines.is_zero
