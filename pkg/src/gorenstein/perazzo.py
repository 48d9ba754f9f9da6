"""Perazzo 3-folds f = x0 p0(u,v) + x1 p1(u,v) + x2 p2(u,v) + g(u,v).

The Hilbert vector of S/Ann(f) is computed from catalecticant blocks of the
p_i and g: h_k = rank M_k + rank N'_k for 2 <= k <= d-2.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

from .artinian import HilbertVector
from .binaryforms import BinaryForm, cat_matrix
from .errors import (
    DegreeMismatch,
    DegreeOutOfRange,
    DegreeTooSmall,
    InvalidParams,
    IsCone,
    LinearlyDependent,
    NotPerazzoShape,
)
from .exactmath import ExactMatrix, hstack, kernel_basis, rank, to_scalar, vstack
from .polyring import PERAZZO_VARIABLES, Form, partials


@dataclass(frozen=True)
class PerazzoForm:
    d: int
    p0: BinaryForm
    p1: BinaryForm
    p2: BinaryForm
    g: BinaryForm
    assembled: Form

    @property
    def ps(self) -> tuple[BinaryForm, BinaryForm, BinaryForm]:
        return (self.p0, self.p1, self.p2)

    @classmethod
    def from_form(cls, f: Form) -> PerazzoForm:
        """Split a form in (x0, x1, x2, u, v) into p0, p1, p2 and g."""
        if f.nvars != 5 or any(sum(m[:3]) > 1 for m in f.terms):
            raise NotPerazzoShape("expected a form in 5 variables, linear in the first three")
        d = f.degree
        parts = []
        for i in range(3):
            plain = [f.coefficient(tuple(int(j == i) for j in range(3)) + (d - 1 - a, a)) for a in range(d)]
            parts.append(BinaryForm.from_plain(plain))
        g = BinaryForm.from_plain(f.coefficient((0, 0, 0, d - a, a)) for a in range(d + 1))
        return build_perazzo(*parts, g, variables=f.variables)


def _binary_to_5(h: BinaryForm, variables) -> Form:
    t = h.degree
    return Form(variables, {(0, 0, 0, t - i, i): c for i, c in enumerate(h.plain())}, t)


def build_perazzo(p0: BinaryForm, p1: BinaryForm, p2: BinaryForm, g: BinaryForm | None = None, variables=PERAZZO_VARIABLES) -> PerazzoForm:
    d = p0.degree + 1
    if p1.degree != d - 1 or p2.degree != d - 1:
        raise DegreeMismatch(f"p0, p1, p2 have degrees {p0.degree}, {p1.degree}, {p2.degree}")
    if g is None:
        g = BinaryForm([0] * (d + 1))
    if g.degree != d:
        raise DegreeMismatch(f"g has degree {g.degree}, expected {d}")
    if d < 3:
        raise DegreeTooSmall(f"Perazzo forms need degree >= 3, got {d}")
    if rank(ExactMatrix([p.coeffs for p in (p0, p1, p2)], d)) < 3:
        raise LinearlyDependent("p0, p1, p2 are linearly dependent")
    total = _binary_to_5(g, variables)
    for i, p in enumerate((p0, p1, p2)):
        x = Form.variable(variables, i)
        total = total + x * _binary_to_5(p, variables)
    return PerazzoForm(d, p0, p1, p2, g, total)


@dataclass(frozen=True)
class BlockMatrices:
    k: int
    A: ExactMatrix
    B: ExactMatrix
    C: ExactMatrix
    G: ExactMatrix
    M: ExactMatrix
    N: ExactMatrix
    Nprime: ExactMatrix


def block_matrices(f: PerazzoForm, k: int) -> BlockMatrices:
    """Catalecticant blocks at level k and the assembled M_k, N_k, N'_k.

    A_k, B_k, C_k are the (d-k) x (k+1) catalecticants of p0, p1, p2, G_k the
    (d-k+1) x (k+1) one of g; M_k = (A_{k-1} | B_{k-1} | C_{k-1}).
    """
    d = f.d
    if not 1 <= k <= d - 1:
        raise DegreeOutOfRange(f"k={k} outside 1..{d - 1}")
    A, B, C = (cat_matrix(p, k) for p in f.ps)
    G = cat_matrix(f.g, k)
    M = hstack(*(cat_matrix(p, k - 1) for p in f.ps))
    N = vstack(A, B, C)
    return BlockMatrices(k, A, B, C, G, M, N, vstack(N, G))


def is_cone(f: Form) -> bool:
    """Whether the first partials are linearly dependent."""
    return cone_relation(f) is not None


def cone_relation(f: Form) -> tuple | None:
    """A vector c with sum c_i df/dx_i = 0, or None if the partials are independent."""
    form = getattr(f, "assembled", f)
    derivs = partials(form)
    monos = sorted({m for p in derivs for m in p.terms}, reverse=True)
    matrix = ExactMatrix([[p.coefficient(m) for p in derivs] for m in monos], len(derivs))
    if not monos:
        return tuple(Fraction(int(i == 0)) for i in range(len(derivs)))
    kernel = kernel_basis(matrix)
    return kernel[0] if kernel else None


def perazzo_hilbert(f: PerazzoForm) -> HilbertVector:
    if is_cone(f.assembled):
        raise IsCone(f"the partials are linearly dependent: {cone_relation(f.assembled)}")
    d = f.d
    h = [0] * (d + 1)
    h[0] = h[d] = 1
    h[1] = h[d - 1] = 5
    for k in range(2, d // 2 + 1):
        blocks = block_matrices(f, k)
        h[k] = h[d - k] = rank(blocks.M) + rank(blocks.Nprime)
    return HilbertVector(h)


def max_hvector(d: int) -> HilbertVector:
    """Largest possible Hilbert vector of a Perazzo 3-fold of degree d >= 4,
    by the four cases of d mod 4."""
    if d < 4:
        raise DegreeTooSmall(f"the bounds need d >= 4, got {d}")
    t, e = divmod(d, 4)
    rising_end = t + 1 if e == 3 else t
    h = [0] * (d + 1)
    for k in range(d // 2 + 1):
        h[k] = h[d - k] = 4 * k + 1 if k <= rising_end else d + 2
    return HilbertVector(h)


def min_hvector(d: int) -> HilbertVector:
    if d < 4:
        raise DegreeTooSmall(f"the bounds need d >= 4, got {d}")
    return HilbertVector([1, 5] + [6] * (d - 3) + [5, 1])


def maximal_example(d: int) -> PerazzoForm:
    """Forms with overlapping monomial supports reaching the maximal h-vector.

    With d = 3r + e, the normalized coefficients are 1/(1+i) on the index
    ranges 0..r, r..2r-1+e and 2r-1+e..d-1 of p0, p1, p2; g = 0.
    """
    if d < 4:
        raise DegreeTooSmall(f"maximal_example needs d >= 4, got {d}")
    r, e = divmod(d, 3)
    ranges = [(0, r), (r, 2 * r - 1 + e), (2 * r - 1 + e, d - 1)]
    ps = [BinaryForm([Fraction(1, 1 + i) if lo <= i <= hi else 0 for i in range(d)]) for lo, hi in ranges]
    return build_perazzo(*ps, BinaryForm([0] * (d + 1)))


def minimal_family(family, d: int, params=(1, 1, 0, 0, 0)) -> PerazzoForm:
    """The three normal forms with minimal h-vector; params = (lambda, mu, a, b, c).

    I:   u^(d-1) x0 + u^(d-2) v x1 + u^(d-3) v^2 x2 + a u^d + b u^(d-1) v + c u^(d-2) v^2
    II:  u^(d-1) x0 + u^(d-2) v x1 + v^(d-1) x2 + a u^d + b u^(d-1) v + c v^d
    III: u^(d-1) x0 + l^(d-1) x1 + v^(d-1) x2 + a u^d + b l^d + c v^d, l = lambda u + mu v
    """
    family = {"1": "I", "2": "II", "3": "III", "i": "I", "ii": "II", "iii": "III"}.get(str(family).lower(), str(family))
    if family not in ("I", "II", "III"):
        raise InvalidParams(f"unknown family {family!r}")
    if d < 4:
        raise DegreeTooSmall(f"minimal families need d >= 4, got {d}")
    if len(params) != 5:
        raise InvalidParams("params must be (lambda, mu, a, b, c)")
    lam, mu, a, b, c = (to_scalar(p) for p in params)

    def mono(t, j):
        """u^(t-j) v^j in normalized coordinates."""
        return BinaryForm([Fraction(1, comb(t, j)) if i == j else 0 for i in range(t + 1)])

    if family == "III":
        if not lam or not mu:
            raise InvalidParams("family III needs lambda and mu nonzero")
        p1 = BinaryForm.power(lam, mu, d - 1)
        g = mono(d, 0).scale(a) + BinaryForm.power(lam, mu, d).scale(b) + mono(d, d).scale(c)
        return build_perazzo(mono(d - 1, 0), p1, mono(d - 1, d - 1), g)
    p2 = mono(d - 1, 2) if family == "I" else mono(d - 1, d - 1)
    last = mono(d, 2) if family == "I" else mono(d, d)
    g = mono(d, 0).scale(a) + mono(d, 1).scale(b) + last.scale(c)
    return build_perazzo(mono(d - 1, 0), mono(d - 1, 1), p2, g)


class Extremal(str, Enum):
    MINIMAL = "Minimal"
    MAXIMAL = "Maximal"
    INTERMEDIATE = "Intermediate"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ExtremalClass:
    kind: Extremal
    hvector: HilbertVector

    def __str__(self):
        if self.kind == Extremal.INTERMEDIATE:
            return f"Intermediate({tuple(self.hvector)})"
        return str(self.kind)


def classify_extremal(f: PerazzoForm) -> ExtremalClass:
    """Compare the h-vector with the two bounds.

    For d <= 4 the bounds coincide; the answer is then Minimal, which is the
    case carrying the WLP.
    """
    h = perazzo_hilbert(f)
    if f.d < 4 or h == min_hvector(f.d):
        return ExtremalClass(Extremal.MINIMAL, h)
    if h == max_hvector(f.d):
        return ExtremalClass(Extremal.MAXIMAL, h)
    return ExtremalClass(Extremal.INTERMEDIATE, h)
