"""Exact scalars and exact dense linear algebra.

Scalars are :class:`fractions.Fraction` values, optionally extended to
Gaussian rationals ``a + b*i`` via :class:`GaussianRational`.  Matrices are
immutable and all elimination on rational input is done over the integers
after clearing row denominators, so intermediate entries stay integral.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

from .errors import InconsistentSystem, NotSquare


class GaussianRational:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, Rational):
            return GaussianRational(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussianRational(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return (1 / self) ** (-e)
        result = GaussianRational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        imag = "i" if self.im == 1 else "-i" if self.im == -1 else f"{self.im}*i"
        if self.re == 0:
            return imag
        sign = "" if imag.startswith("-") else "+"
        return f"{self.re}{sign}{imag}"


I = GaussianRational(0, 1)


def to_scalar(x):
    """Coerce ints, strings and Fractions to Fraction; keep Gaussian values.

    A Gaussian rational with zero imaginary part collapses to a Fraction so
    rational data stays rational.
    """
    if isinstance(x, GaussianRational):
        return x.re if x.im == 0 else x
    if isinstance(x, (int, Fraction, str)):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact scalar: {x!r}")


def is_rational(x) -> bool:
    return isinstance(x, Rational)


def scalar_to_string(x) -> str:
    """``num/den`` text for a rational, ``re,im`` pair text for Gaussian values."""
    x = to_scalar(x)
    if isinstance(x, GaussianRational):
        return f"{x.re}+{x.im}i"
    return f"{x.numerator}/{x.denominator}"


class ExactMatrix:
    """Immutable dense matrix over exact scalars."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows, ncols: int | None = None):
        data = tuple(tuple(to_scalar(x) for x in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        object.__setattr__(self, "_rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> ExactMatrix:
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns, nrows: int) -> ExactMatrix:
        columns = list(columns)
        return cls([[col[i] for col in columns] for i in range(nrows)], len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def entries(self) -> tuple:
        """Row-major flat sequence of entries."""
        return tuple(x for row in self._rows for x in row)

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self._rows)

    def __getitem__(self, index):
        i, j = index
        return self._rows[i][j]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(zip(*self._rows), self.nrows) if self.nrows else ExactMatrix.zeros(self.ncols, 0)

    @property
    def T(self) -> ExactMatrix:
        return self.transpose()

    def submatrix(self, rows, cols) -> ExactMatrix:
        cols = list(cols)
        return ExactMatrix([[self._rows[i][j] for j in cols] for i in rows], len(cols))

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in matrix product")
            cols = [other.column(j) for j in range(other.ncols)]
            return ExactMatrix(
                [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols] for row in self._rows],
                other.ncols,
            )
        vec = list(other)
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in self._rows)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self._rows)
        return f"ExactMatrix({self.nrows}x{self.ncols}: [{body}])"

    def to_strings(self) -> list[list[str]]:
        return [[scalar_to_string(x) for x in row] for row in self._rows]

    def is_rational(self) -> bool:
        return all(is_rational(x) for row in self._rows for x in row)

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> list[tuple]:
        return kernel_basis(self)

    def det(self):
        return determinant(self)


def hstack(*blocks: ExactMatrix) -> ExactMatrix:
    nrows = blocks[0].nrows
    if any(b.nrows != nrows for b in blocks):
        raise ValueError("hstack needs equal row counts")
    rows = [sum((b.row(i) for b in blocks), ()) for i in range(nrows)]
    return ExactMatrix(rows, sum(b.ncols for b in blocks))


def vstack(*blocks: ExactMatrix) -> ExactMatrix:
    ncols = blocks[0].ncols
    if any(b.ncols != ncols for b in blocks):
        raise ValueError("vstack needs equal column counts")
    return ExactMatrix([row for b in blocks for row in b.rows], ncols)


# -- integer elimination kernels ------------------------------------------


def _integer_rows(m: ExactMatrix) -> list[list[int]]:
    """Scale every row by the lcm of its denominators (rank/kernel preserving)."""
    out = []
    for row in m.rows:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def integer_echelon(rows: list[list[int]], ncols: int, reduced: bool = False):
    """Fraction-free row reduction of integer rows.

    Returns ``(rows, pivots)``: the nonzero echelon rows (primitive integer
    vectors) and their pivot columns.  With ``reduced=True`` every pivot
    column is cleared above and below its pivot.  Pivots are chosen as the
    first row carrying a nonzero entry in the current column.
    """
    rows = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        a = prow[c]
        tail = prow[c:]
        for i in range(len(rows)) if reduced else range(r + 1, len(rows)):
            if i == r:
                continue
            row = rows[i]
            b = row[c]
            if not b:
                continue
            g = gcd(a, b)
            ma, mb = a // g, b // g
            head = row[:c] if ma == 1 else [ma * x for x in row[:c]]
            new = head + [ma * x - mb * y for x, y in zip(row[c:], tail)]
            content = gcd(*new)
            if content > 1:
                new = [x // content for x in new]
            rows[i] = new
        pivots.append(c)
        r += 1
    rows = rows[:r]
    for i, row in enumerate(rows):
        if row[pivots[i]] < 0:
            rows[i] = [-x for x in row]
    return rows, pivots


def rank(m: ExactMatrix) -> int:
    """Exact rank over the fraction field."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.is_rational():
        return len(integer_echelon(_integer_rows(m), m.ncols)[1])
    return len(_field_echelon([list(r) for r in m.rows], m.ncols)[1])


def pivot_columns(m: ExactMatrix) -> list[int]:
    """Pivot columns of the echelon form: the lexicographically first
    maximal set of linearly independent columns."""
    if m.nrows == 0 or m.ncols == 0:
        return []
    if m.is_rational():
        return integer_echelon(_integer_rows(m), m.ncols)[1]
    return _field_echelon([list(r) for r in m.rows], m.ncols)[1]


def kernel_basis(m: ExactMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space.

    One vector per free column (in increasing column order); each vector is
    integral with content 1 and a positive entry at its free column.
    """
    n = m.ncols
    if not m.is_rational():
        raise TypeError("kernel_basis is defined for rational matrices")
    rows, pivots = integer_echelon(_integer_rows(m), n, reduced=True) if m.nrows else ([], [])
    pivot_set = set(pivots)
    basis = []
    for j in range(n):
        if j in pivot_set:
            continue
        scale = lcm(*(row[p] for row, p in zip(rows, pivots) if row[j])) if rows else 1
        vec = [0] * n
        vec[j] = scale
        for row, p in zip(rows, pivots):
            if row[j]:
                vec[p] = -scale * row[j] // row[p]
        content = gcd(*vec)
        basis.append(tuple(Fraction(x // content) for x in vec))
    return basis


def _bareiss_det(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def determinant(m: ExactMatrix):
    if m.nrows != m.ncols:
        raise NotSquare(f"determinant of a {m.nrows}x{m.ncols} matrix")
    if m.is_rational():
        scale = Fraction(1)
        rows = []
        for row in m.rows:
            den = lcm(*(x.denominator for x in row)) if row else 1
            scale *= den
            rows.append([int(x * den) for x in row])
        return Fraction(_bareiss_det(rows)) / scale
    a = [list(r) for r in m.rows]
    n = len(a)
    det = GaussianRational(1)
    for k in range(n):
        p = next((i for i in range(k, n) if a[i][k]), None)
        if p is None:
            return Fraction(0)
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        det = det * a[k][k]
        for i in range(k + 1, n):
            factor = a[i][k] / a[k][k]
            if factor:
                a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
    return to_scalar(det)


def _field_echelon(rows: list[list], ncols: int):
    """Gauss-Jordan over any exact field (Fraction or GaussianRational)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [to_scalar(x * inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [to_scalar(x - factor * y) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def solve(m: ExactMatrix, b) -> tuple:
    """One exact solution x of ``m x = b`` (free unknowns set to 0).

    Works over Q and Q(i).  Raises InconsistentSystem when no solution exists.
    """
    b = [to_scalar(x) for x in b]
    if len(b) != m.nrows:
        raise ValueError("right-hand side has the wrong length")
    augmented = [list(row) + [rhs] for row, rhs in zip(m.rows, b)]
    rows, pivots = _field_echelon(augmented, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        raise InconsistentSystem("linear system has no solution")
    x = [Fraction(0)] * m.ncols
    for row, p in zip(rows, pivots):
        x[p] = row[-1]
    return tuple(x)


class SparseEchelon:
    """Incrementally maintained echelon basis of sparse rational vectors.

    Vectors are dicts ``column -> value``.  ``add`` reports whether the new
    vector enlarged the span.
    """

    def __init__(self):
        self._pivot_rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self._pivot_rows)

    def reduce(self, vec: dict) -> dict:
        v = {c: Fraction(x) for c, x in vec.items() if x}
        while v:
            c = min(v)
            prow = self._pivot_rows.get(c)
            if prow is None:
                return v
            factor = v[c]
            for col, val in prow.items():
                new = v.get(col, 0) - factor * val
                if new:
                    v[col] = new
                else:
                    v.pop(col, None)
        return v

    def add(self, vec: dict) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        c = min(v)
        inv = 1 / v[c]
        self._pivot_rows[c] = {col: val * inv for col, val in v.items()}
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)
