from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gorenstein.errors import InconsistentSystem, NotSquare
from gorenstein.exactmath import (
    I,
    ExactMatrix,
    GaussianRational,
    SparseEchelon,
    determinant,
    hstack,
    kernel_basis,
    pivot_columns,
    rank,
    solve,
    to_scalar,
    vstack,
)

small = st.integers(min_value=-4, max_value=4)
fractions = st.builds(Fraction, small, st.integers(min_value=1, max_value=3))


def matrices(max_rows=5, max_cols=5, elements=small):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(elements, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def naive_rank(rows):
    """Plain Fraction Gaussian elimination, written independently of the package."""
    a = [[Fraction(x) for x in row] for row in rows]
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        for i in range(r + 1, len(a)):
            f = a[i][c] / a[r][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction((-1) ** inversions)
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


def test_gaussian_arithmetic():
    z = GaussianRational(1, 2)
    assert z * z.conjugate() == 5
    assert I * I == -1
    assert (1 + I) ** 4 == -4
    assert 1 / (1 + I) == GaussianRational(Fraction(1, 2), Fraction(-1, 2))
    assert to_scalar(GaussianRational(3, 0)) == Fraction(3)
    assert hash(GaussianRational(2, 0)) == hash(Fraction(2))


def test_to_scalar_rejects_floats():
    with pytest.raises(TypeError):
        to_scalar(0.5)


def test_rank_kernel_small():
    m = ExactMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(m) == 2
    (k,) = kernel_basis(m)
    assert m @ k == (0, 0, 0)
    assert pivot_columns(m) == [0, 1]


def test_determinant_and_solve():
    m = ExactMatrix([[2, 1], [1, Fraction(1, 2)]])
    assert determinant(m) == 0
    with pytest.raises(NotSquare):
        determinant(ExactMatrix([[1, 2]]))
    with pytest.raises(InconsistentSystem):
        solve(m, [1, 0])
    x = solve(ExactMatrix([[1, I], [0, 1]]), [1, I])
    assert x == (2, I)


def test_stacking():
    a = ExactMatrix([[1, 2]])
    b = ExactMatrix([[3, 4]])
    assert vstack(a, b) == ExactMatrix([[1, 2], [3, 4]])
    assert hstack(a, b) == ExactMatrix([[1, 2, 3, 4]])
    assert vstack(a, b).T == ExactMatrix([[1, 3], [2, 4]])


def test_sparse_echelon():
    span = SparseEchelon()
    assert span.add({0: 1, 1: 1})
    assert span.add({1: 1})
    assert not span.add({0: 2, 1: 5})
    assert span.contains({0: 1})
    assert span.rank == 2


@settings(max_examples=80, deadline=None)
@given(matrices(elements=fractions))
def test_rank_matches_naive_oracle(rows):
    m = ExactMatrix(rows)
    assert rank(m) == naive_rank(rows)
    assert rank(m) == rank(m.T)


@settings(max_examples=80, deadline=None)
@given(matrices(elements=fractions))
def test_kernel_is_annihilated_and_complete(rows):
    m = ExactMatrix(rows)
    basis = kernel_basis(m)
    assert len(basis) == m.ncols - rank(m)
    for v in basis:
        assert all(x == 0 for x in m @ v)
    if basis:
        assert rank(ExactMatrix(basis)) == len(basis)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(fractions, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(rows):
    assert determinant(ExactMatrix(rows)) == leibniz_det(rows)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)), st.lists(small, min_size=4, max_size=4))
def test_gaussian_determinant_matches_leibniz(rows, shifts):
    n = len(rows)
    grows = [[GaussianRational(x, shifts[(i + j) % 4]) for j, x in enumerate(row)] for i, row in enumerate(rows)]
    expected = GaussianRational(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = GaussianRational((-1) ** inversions)
        for i, j in enumerate(perm):
            term = term * grows[i][j]
        expected = expected + term
    assert determinant(ExactMatrix(grows)) == to_scalar(expected)
