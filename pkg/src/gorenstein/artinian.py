"""Graded pieces of A = S/Ann_S(f), computed by linear algebra degree by degree.

For a form f of degree d the map S_k -> R_{d-k}, q -> q.f is a matrix whose
kernel is Ann_S(f)_k and whose rank is h_k = dim A_k.  Everything in this
module (bases of A_k, multiplication maps, the Poincare pairing) is read off
those matrices; no Groebner bases are involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm

from .errors import (
    DegreeOutOfRange,
    InvalidInput,
    LengthMismatch,
    SingularBasis,
    ZeroForm,
)
from .exactmath import ExactMatrix, SparseEchelon, integer_echelon, kernel_basis
from .polyring import (
    Form,
    OperatorPoly,
    apply_operator,
    divided_powers,
    monomial_index,
    monomials,
    operator_names,
)


class HilbertVector(tuple):
    """Sequence h_0, ..., h_d of graded dimensions."""

    def __new__(cls, values):
        values = tuple(int(x) for x in values)
        if any(x < 0 for x in values):
            raise InvalidInput(f"negative entry in {values}")
        return super().__new__(cls, values)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(self)

    def is_symmetric(self) -> bool:
        return tuple(self) == tuple(reversed(self))

    def is_unimodal(self) -> bool:
        i = 0
        n = len(self)
        while i + 1 < n and self[i] <= self[i + 1]:
            i += 1
        while i + 1 < n and self[i] >= self[i + 1]:
            i += 1
        return i >= n - 1

    def __repr__(self):
        return f"HilbertVector({tuple(self)})"


def _integer_form(f: Form) -> Form:
    """Scale f by a rational so its coefficients are coprime integers."""
    den = lcm(*(c.denominator for c in f.terms.values()))
    return f.scale(den)


class GradedAlgebraView:
    """Per-degree data of A = S/Ann_S(f) for a nonzero form f.

    Degree records are computed lazily and cached; the view never changes
    what it reports once a degree has been computed.
    """

    def __init__(self, f: Form):
        if not isinstance(f, Form):
            raise TypeError("expected a Form")
        if not f.is_rational():
            raise InvalidInput("the algebra is built over the rationals")
        self.f = f.as_form()
        self.socle_degree = f.degree
        self.nvars = f.nvars
        self.operator_variables = operator_names(f.variables)
        self._fint = _integer_form(self.f) if f.terms else self.f
        self._echelons: dict[int, tuple] = {}
        self._solvers: dict[int, tuple] = {}

    # -- contraction matrices ---------------------------------------------

    def _int_columns(self, k: int) -> list[dict[int, int]]:
        d = self.socle_degree
        index = monomial_index(self.nvars, d - k)
        cols = []
        for b in monomials(self.nvars, k):
            g = self._fint.differentiate(b)
            cols.append({index[m]: int(c) for m, c in g.terms.items()})
        return cols

    def contraction_matrix(self, k: int) -> ExactMatrix:
        d = self.socle_degree
        if not 0 <= k <= d:
            raise DegreeOutOfRange(f"k={k} outside 0..{d}")
        nrows = len(monomials(self.nvars, d - k))
        cols = monomials(self.nvars, k)
        rows = [[Fraction(0)] * len(cols) for _ in range(nrows)]
        index = monomial_index(self.nvars, d - k)
        for j, b in enumerate(cols):
            for m, c in self.f.differentiate(b).terms.items():
                rows[index[m]][j] = c
        return ExactMatrix(rows, len(cols))

    def _echelon(self, k: int):
        if k not in self._echelons:
            d = self.socle_degree
            ncols = len(monomials(self.nvars, k))
            if k > d or not self.f.terms:
                self._echelons[k] = ([], [], ncols)
            else:
                nrows = len(monomials(self.nvars, d - k))
                rows = [[0] * ncols for _ in range(nrows)]
                for j, col in enumerate(self._int_columns(k)):
                    for i, c in col.items():
                        rows[i][j] = c
                echelon_rows, pivots = integer_echelon(rows, ncols, reduced=True)
                self._echelons[k] = (echelon_rows, pivots, ncols)
        return self._echelons[k]

    # -- dimensions and bases --------------------------------------------------

    def h(self, k: int) -> int:
        if k < 0:
            return 0
        return len(self._echelon(k)[1])

    def hilbert_vector(self) -> HilbertVector:
        if not self.f.terms:
            raise ZeroForm("the zero form has no Gorenstein algebra")
        return HilbertVector(self.h(k) for k in range(self.socle_degree + 1))

    def basis(self, k: int) -> list[tuple[int, ...]]:
        """Greedy-lex monomial basis of A_k (pivot columns of the echelon form)."""
        if not 0 <= k <= self.socle_degree:
            raise DegreeOutOfRange(f"k={k} outside 0..{self.socle_degree}")
        mons = monomials(self.nvars, k)
        return [mons[p] for p in self._echelon(k)[1]]

    def ann_basis(self, k: int) -> list[OperatorPoly]:
        if k < 0:
            raise DegreeOutOfRange("negative degree")
        mons = monomials(self.nvars, k)
        names = self.operator_variables
        if k > self.socle_degree:
            return [OperatorPoly(names, {m: 1}) for m in mons]
        rows, pivots, ncols = self._echelon(k)
        matrix = ExactMatrix(rows, ncols) if rows else ExactMatrix.zeros(1, ncols)
        out = []
        for vec in kernel_basis(matrix):
            out.append(OperatorPoly(names, {mons[j]: c for j, c in enumerate(vec) if c}, k))
        return out

    # -- coordinates in A_k ------------------------------------------------------

    def _solver(self, k: int):
        """Data for writing a class of degree k in the chosen basis of A_k.

        A class is represented by its contraction against f (a vector in
        R_{d-k}); the basis columns are independent, so a square invertible
        submatrix on some rows determines the coordinates.
        """
        if k not in self._solvers:
            d = self.socle_degree
            cols = self._int_columns(k)
            pivots = self._echelon(k)[1]
            nrows = len(monomials(self.nvars, d - k))
            basis_cols = [cols[p] for p in pivots]
            # rows of C_B chosen greedily: pivot columns of C_B transposed
            transposed = [[col.get(i, 0) for i in range(nrows)] for col in basis_cols]
            _, row_sel = integer_echelon(transposed, nrows)
            square = ExactMatrix([[col.get(i, 0) for col in basis_cols] for i in row_sel], len(basis_cols))
            inverse = _inverse(square)
            self._solvers[k] = (basis_cols, row_sel, inverse)
        return self._solvers[k]

    def coordinates(self, contraction: Form, k: int) -> tuple[Fraction, ...]:
        """Coordinates of the class whose contraction against f is the given form.

        The form must be a contraction of the integer-scaled f used internally;
        use :meth:`class_of` for operator input.
        """
        basis_cols, row_sel, inverse = self._solver(k)
        index = monomial_index(self.nvars, self.socle_degree - k)
        w = {index[m]: c for m, c in contraction.terms.items()}
        rhs = [w.get(i, 0) for i in row_sel]
        beta = tuple(sum((a * b for a, b in zip(row, rhs)), Fraction(0)) for row in inverse)
        # the remaining rows must agree as well
        check: dict[int, Fraction] = {}
        for coef, col in zip(beta, basis_cols):
            if coef:
                for i, c in col.items():
                    check[i] = check.get(i, 0) + coef * c
        if {i: c for i, c in check.items() if c} != {i: c for i, c in w.items() if c}:
            raise SingularBasis(f"class is not in the span of the degree-{k} basis")
        return beta

    def class_of(self, q: Form) -> tuple[Fraction, ...]:
        """Coordinates of the operator q in the chosen basis of A_{deg q}."""
        return self.coordinates(apply_operator(q.as_operator(self.operator_variables), self._fint), q.degree)

    def multiplication_matrix(self, L, i: int, c: int) -> ExactMatrix:
        """Matrix of x L^c : A_i -> A_{i+c} in the greedy-lex bases."""
        d = self.socle_degree
        if i < 0 or c < 0 or i + c > d:
            raise DegreeOutOfRange(f"i={i}, c={c} with socle degree {d}")
        L = linear_operator(L, self.operator_variables)
        columns = []
        for alpha in self.basis(i):
            g = self._fint.differentiate(alpha)
            for _ in range(c):
                g = apply_operator(L, g)
            columns.append(self.coordinates(g, i + c))
        return ExactMatrix.from_columns(columns, self.h(i + c)) if columns else ExactMatrix.zeros(self.h(i + c), 0)

    def pairing_matrix(self, k: int) -> ExactMatrix:
        """Matrix of the pairing A_k x A_{d-k} -> K, (a, b) -> (a b).f."""
        d = self.socle_degree
        left, right = self.basis(k), self.basis(d - k)
        zero = (0,) * self.nvars
        rows = []
        for a in left:
            row = []
            for b in right:
                g = self.f.differentiate(tuple(x + y for x, y in zip(a, b)))
                row.append(g.terms.get(zero, 0))
            rows.append(row)
        return ExactMatrix(rows, len(right))


def _inverse(m: ExactMatrix) -> list[list[Fraction]]:
    n = m.nrows
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.rows)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c])
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                factor = aug[i][c]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def linear_operator(L, names) -> OperatorPoly:
    """Accept an operator/form of degree 1 or a coefficient sequence."""
    names = tuple(names)
    if isinstance(L, Form):
        if L.terms and L.degree != 1:
            raise InvalidInput("L must be linear")
        return OperatorPoly._raw(names, dict(L.terms), 1)
    coeffs = list(L)
    if len(coeffs) != len(names):
        raise InvalidInput("coefficient vector has the wrong length")
    terms = {tuple(int(j == i) for j in range(len(names))): c for i, c in enumerate(coeffs)}
    return OperatorPoly(names, terms, 1)


@lru_cache(maxsize=128)
def algebra(f: Form) -> GradedAlgebraView:
    """Cached view for f (forms are immutable and hashable)."""
    return GradedAlgebraView(f)


# -- module-level operations -------------------------------------------------------


def contraction_matrix(f: Form, k: int) -> ExactMatrix:
    return algebra(f).contraction_matrix(k)


def ann_graded_basis(f: Form, k: int) -> list[OperatorPoly]:
    return algebra(f).ann_basis(k)


def hilbert_vector(f: Form) -> HilbertVector:
    return algebra(f).hilbert_vector()


def basis_of_Ak(f: Form, k: int) -> list[tuple[int, ...]]:
    return algebra(f).basis(k)


def multiplication_matrix(f: Form, L, i: int, c: int) -> ExactMatrix:
    return algebra(f).multiplication_matrix(L, i, c)


# -- Macaulay's binomial expansions and sequence predicates ---------------------------


def sth_expansion(m: int, s: int) -> list[tuple[int, int]]:
    """The s-th binomial expansion m = C(m_s, s) + C(m_{s-1}, s-1) + ...

    Returned as pairs (m_j, j) with m_s > m_{s-1} > ... >= j >= 1.
    """
    if m < 1 or s < 1:
        raise InvalidInput(f"binomial expansion needs m >= 1 and s >= 1, got m={m}, s={s}")
    out = []
    while m > 0:
        n = s
        while comb(n + 1, s) <= m:
            n += 1
        out.append((n, s))
        m -= comb(n, s)
        s -= 1
    return out


def m_bracket(m: int, s: int) -> int:
    """m^<s>; by convention 0^<s> = 0."""
    if m == 0:
        return 0
    return sum(comb(a + 1, b + 1) for a, b in sth_expansion(m, s))


def is_O_sequence(h) -> bool:
    h = tuple(h)
    if not h or h[0] != 1 or any(x < 0 for x in h):
        return False
    for i in range(1, len(h) - 1):
        if h[i + 1] > m_bracket(h[i], i):
            return False
    return True


def is_SI_sequence(h) -> bool:
    h = HilbertVector(h)
    if not h.is_symmetric() or not h.is_unimodal():
        return False
    t = next((i for i in range(len(h) - 1) if h[i] >= h[i + 1]), len(h) - 1)
    delta = [h[0]] + [h[i] - h[i - 1] for i in range(1, t + 1)]
    return is_O_sequence(delta)


def stanley_doubling(hT, t: int) -> HilbertVector:
    hT = tuple(hT)
    if len(hT) != t + 1:
        raise LengthMismatch(f"expected {t + 1} values, got {len(hT)}")

    def at(i):
        return hT[i] if 0 <= i <= t else 0

    return HilbertVector(at(i) + at(t + 1 - i) for i in range(t + 2))


# -- checking a proposed generating set of the annihilator ----------------------------


@dataclass
class AnnihilatorReport:
    non_annihilating: list[int] = field(default_factory=list)
    mismatches: list[tuple[int, int, int]] = field(default_factory=list)
    """Degrees k where the spans differ, as (k, span dimension, dim Ann_k)."""

    @property
    def ok(self) -> bool:
        return not self.non_annihilating and not self.mismatches


def verify_annihilator_set(f: Form, gens, action: str = "differentiation") -> AnnihilatorReport:
    """Check that gens lie in Ann_S(f) and generate it in every degree <= deg f.

    ``action="contraction"`` reads the generators with the contraction
    action instead of differentiation (the convention of some computer
    algebra systems); it is the same check against the divided-power form.
    """
    if action == "contraction":
        target = divided_powers(f)
    elif action == "differentiation":
        target = f
    else:
        raise InvalidInput(f"unknown action {action!r}")
    view = algebra(target)
    n, d = f.nvars, f.degree
    gens = [g for g in gens if g.terms]
    report = AnnihilatorReport()
    for idx, g in enumerate(gens):
        if g.nvars != n:
            raise InvalidInput("generator has the wrong number of variables")
        if apply_operator(g.as_operator(view.operator_variables), target).terms:
            report.non_annihilating.append(idx)
    all_annihilate = not report.non_annihilating
    for k in range(d + 1):
        ann_dim = comb(n + k - 1, k) - view.h(k)
        index = monomial_index(n, k)
        span = SparseEchelon()
        done = False
        for g in gens:
            if g.degree > k:
                continue
            for m in monomials(n, k - g.degree):
                vec = {}
                for gm, c in g.terms.items():
                    vec[index[tuple(a + b for a, b in zip(gm, m))]] = c
                span.add(vec)
                if all_annihilate and span.rank == ann_dim:
                    done = True
                    break
            if done:
                break
        if span.rank != ann_dim:
            report.mismatches.append((k, span.rank, ann_dim))
        elif not all_annihilate:
            # equal dimension is not enough when some generator is outside Ann
            for q in view.ann_basis(k):
                if not span.contains({index[m]: c for m, c in q.terms.items()}):
                    report.mismatches.append((k, span.rank, ann_dim))
                    break
    return report
