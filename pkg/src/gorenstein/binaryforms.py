"""Binary forms: catalecticants, border rank, secant position, Sylvester's algorithm.

A binary form of degree t is stored by its normalized coefficients h_i,
meaning h(u, v) = sum_i C(t, i) h_i u^(t-i) v^i.  In these coordinates the
k-th catalecticant is the Hankel matrix (h_{i+j}) and the t-th power of
a u + b v has coefficients h_i = a^(t-i) b^i.

A kernel vector (c_0, ..., c_k) of Cat_k(h) is read as the operator
g = sum_j c_j U^(k-j) V^j, which annihilates h.
"""

from __future__ import annotations

import cmath
import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb, isqrt

from .errors import DegreeOutOfRange, DegreeTooSmall, InvalidInput, ZeroForm
from .exactmath import ExactMatrix, GaussianRational, kernel_basis, rank, solve, to_scalar
from .polyring import Form

NUMERIC_TOLERANCE = 1e-12


class BinaryForm:
    """Binary form given by its normalized coefficients h_0, ..., h_t."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(to_scalar(c) for c in coeffs)
        if not coeffs:
            raise InvalidInput("a binary form needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryForm is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_plain(cls, plain) -> BinaryForm:
        """From plain coefficients of u^t, u^(t-1) v, ..., v^t."""
        plain = [to_scalar(c) for c in plain]
        t = len(plain) - 1
        return cls(c / comb(t, i) for i, c in enumerate(plain))

    @classmethod
    def from_form(cls, f: Form, degree: int | None = None) -> BinaryForm:
        if f.nvars != 2:
            raise InvalidInput(f"expected a form in 2 variables, got {f.nvars}")
        t = f.degree if degree is None else degree
        return cls.from_plain(f.coefficient((t - i, i)) for i in range(t + 1))

    @classmethod
    def power(cls, a, b, t: int) -> BinaryForm:
        """(a u + b v)^t."""
        a, b = to_scalar(a), to_scalar(b)
        return cls(a ** (t - i) * b ** i for i in range(t + 1))

    def plain(self) -> tuple:
        t = self.degree
        return tuple(to_scalar(comb(t, i) * c) for i, c in enumerate(self.coeffs))

    def to_form(self, variables=("u", "v")) -> Form:
        t = self.degree
        return Form(variables, {(t - i, i): c for i, c in enumerate(self.plain())}, t)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(isinstance(c, GaussianRational) for c in self.coeffs)

    def __add__(self, other: BinaryForm) -> BinaryForm:
        if self.degree != other.degree:
            raise InvalidInput("adding binary forms of different degrees")
        return BinaryForm(a + b for a, b in zip(self.coeffs, other.coeffs))

    def scale(self, c) -> BinaryForm:
        return BinaryForm(c * x for x in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"BinaryForm({self.to_form()})"


def cat_matrix(h: BinaryForm, k: int) -> ExactMatrix:
    """The (t-k+1) x (k+1) Hankel matrix (h_{i+j})."""
    t = h.degree
    if not 0 <= k <= t:
        raise DegreeOutOfRange(f"k={k} outside 0..{t}")
    return ExactMatrix([[h.coeffs[i + j] for j in range(k + 1)] for i in range(t - k + 1)], k + 1)


def border_rank(h: BinaryForm) -> int:
    """Symmetric border rank: the rank of the middle catalecticant."""
    if h.is_zero():
        raise ZeroForm("border rank of the zero form")
    return rank(cat_matrix(h, h.degree // 2))


def apolar_dual(linear: BinaryForm) -> BinaryForm:
    """a u + b v  ->  b u - a v (the linear form killed by a U + b V)."""
    if linear.degree != 1:
        raise InvalidInput("apolar_dual expects a linear form")
    if linear.is_zero():
        raise ZeroForm("apolar dual of the zero form")
    a, b = linear.coeffs
    return BinaryForm((b, -a))


# -- univariate helpers (coefficient lists, constant term first) ---------------------


def _trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def _derivative(p):
    return [i * c for i, c in enumerate(p)][1:]


def _divmod(p, q):
    p, q = _trim(p), _trim(q)
    quotient = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    lead = q[-1]
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        factor = p[-1] / lead
        quotient[shift] = factor
        for i, c in enumerate(q):
            p[i + shift] -= factor * c
        p = _trim(p)
    return _trim(quotient), p


def _gcd(p, q):
    p, q = _trim(p), _trim(q)
    while q:
        p, q = q, _divmod(p, q)[1]
    return [c / p[-1] for c in p] if p else p


def _evaluate(p, x):
    value = 0
    for c in reversed(p):
        value = value * x + c
    return value


def _kernel_poly(g) -> tuple[list, int]:
    """Dehomogenize g = sum c_j U^(k-j) V^j at V = 1.

    Returns (p, m) with p(x) = sum c_j x^(k-j) (constant term first) and m the
    multiplicity of the factor V.
    """
    p = _trim(list(reversed([to_scalar(c) for c in g])))
    return p, len(g) - len(p)


def is_squarefree_binary(g) -> bool:
    p, m = _kernel_poly(g)
    if not p:
        return False
    if m > 1:
        return False
    return len(_gcd(p, _derivative(p))) <= 1


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _rational_roots(p) -> list[Fraction]:
    """Rational roots of a squarefree rational polynomial."""
    roots = []
    p = _trim(p)
    if p and p[0] == 0:
        roots.append(Fraction(0))
        while p and p[0] == 0:
            p = p[1:]
    if len(p) <= 1:
        return roots
    den = 1
    for c in p:
        den = den * c.denominator // __import__("math").gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    a0, an = ints[0], ints[-1]
    if max(abs(a0), abs(an)) > 10 ** 12:
        return roots
    for num in _divisors(a0):
        for d in _divisors(an):
            for cand in (Fraction(num, d), Fraction(-num, d)):
                if cand not in roots and _evaluate(p, cand) == 0:
                    roots.append(cand)
    return roots


def _aberth(p, tol: float = NUMERIC_TOLERANCE, max_iter: int = 500) -> list[complex]:
    """All complex roots of p by the Aberth-Ehrlich iteration."""
    coeffs = [complex(c) for c in _trim(p)]
    n = len(coeffs) - 1
    if n < 1:
        return []
    lead = coeffs[-1]
    monic = [c / lead for c in coeffs]
    radius = 1 + max(abs(c) for c in monic[:-1])
    roots = [radius * cmath.exp(2j * cmath.pi * (k + 0.25) / n) for k in range(n)]
    deriv = [i * c for i, c in enumerate(monic)][1:]
    for _ in range(max_iter):
        worst = 0.0
        for i, z in enumerate(roots):
            pz = _evaluate(monic, z)
            dz = _evaluate(deriv, z)
            if pz == 0:
                continue
            ratio = pz / dz if dz else pz
            repulsion = sum(1 / (z - w) for j, w in enumerate(roots) if j != i and z != w)
            step = ratio / (1 - ratio * repulsion)
            roots[i] = z - step
            worst = max(worst, abs(step))
        if worst < tol:
            break
    return roots


def _snap(z: complex, limit: int = 10 ** 6) -> GaussianRational:
    return GaussianRational(Fraction(z.real).limit_denominator(limit), Fraction(z.imag).limit_denominator(limit))


def binary_roots(g):
    """Linear factors of the binary form g = sum c_j U^(k-j) V^j.

    Returns (factors, exactness) where factors are pairs (a, b) for
    a U + b V and exactness is "ExactQ", "ExactQi" or "NumericApprox".
    """
    p, m = _kernel_poly(g)
    factors = [(Fraction(0), Fraction(1))] * m
    exact_roots: list = []
    remaining = p
    for r in _rational_roots(p):
        exact_roots.append(r)
        remaining = _divmod(remaining, [-r, Fraction(1)])[0]
    needs_i = False
    if len(remaining) == 3:
        c, b, a = remaining
        disc = b * b - 4 * a * c
        s = _rational_sqrt(-disc)
        if s is not None and disc < 0:
            exact_roots += [GaussianRational(-b / (2 * a), s / (2 * a)), GaussianRational(-b / (2 * a), -s / (2 * a))]
            remaining = [Fraction(1)]
            needs_i = True
    if len(remaining) > 3:
        snapped = [_snap(z) for z in _aberth(remaining)]
        if len(set(snapped)) == len(snapped) and all(_evaluate(remaining, z) == 0 for z in snapped):
            exact_roots += [to_scalar(z) for z in snapped]
            needs_i = needs_i or any(isinstance(to_scalar(z), GaussianRational) for z in snapped)
            remaining = [Fraction(1)]
    if len(remaining) > 1:
        numeric = [complex(r) for r in exact_roots] + _aberth(remaining)
        return factors + [(1.0 + 0j, -z) for z in numeric], "NumericApprox"
    return factors + [(Fraction(1), -to_scalar(r)) for r in exact_roots], ("ExactQi" if needs_i else "ExactQ")


# -- secant position ---------------------------------------------------------------------


class SecantPosition(str, Enum):
    PURE_POWER = "PurePower"
    RANK_TWO = "RankTwo"
    TANGENT = "Tangent"
    RANK_THREE = "RankThree"
    JOIN_TANGENT = "JoinTangent"
    BEYOND = "Beyond"

    def __str__(self):
        return self.value


def _unique_kernel_vector(h: BinaryForm, k: int):
    if k > h.degree:
        raise DegreeTooSmall(f"degree {h.degree} too small to separate border rank {k} cases")
    basis = kernel_basis(cat_matrix(h, k))
    if len(basis) != 1:
        raise DegreeTooSmall(
            f"degree {h.degree} too small to separate border rank {k} cases (kernel of Cat_{k} has dimension {len(basis)})"
        )
    return basis[0]


def classify_secant_position(h: BinaryForm) -> SecantPosition:
    if not h.is_rational():
        raise InvalidInput("classification is implemented for rational forms")
    r = border_rank(h)
    if r == 1:
        return SecantPosition.PURE_POWER
    if r == 2:
        g = _unique_kernel_vector(h, 2)
        return SecantPosition.RANK_TWO if is_squarefree_binary(g) else SecantPosition.TANGENT
    if r == 3:
        g = _unique_kernel_vector(h, 3)
        return SecantPosition.RANK_THREE if is_squarefree_binary(g) else SecantPosition.JOIN_TANGENT
    return SecantPosition.BEYOND


# -- Sylvester's algorithm -------------------------------------------------------------------


@dataclass
class WaringTerm:
    coefficient: object
    """The scalar lambda (exact, or complex for NumericApprox)."""
    linear: tuple
    """(a, b) for the linear form a u + b v, first nonzero coordinate 1."""

    def linear_form_text(self, variables=("u", "v")) -> str:
        a, b = self.linear
        u, v = variables
        parts = []
        if a:
            parts.append(u if a == 1 else f"({a})*{u}")
        if b:
            parts.append(v if b == 1 else f"({b})*{v}")
        return " + ".join(parts)


@dataclass
class WaringDecomposition:
    degree: int
    terms: list[WaringTerm]
    exactness: str
    kernel_degree: int = 0
    kernel_vector: tuple = field(default_factory=tuple)
    """Coefficients c_j of the apolar form sum c_j U^(k-j) V^j that was factored."""

    def __len__(self):
        return len(self.terms)

    @property
    def is_exact(self) -> bool:
        return self.exactness != "NumericApprox"

    def expand(self) -> BinaryForm:
        """sum lambda_j l_j^t as an exact binary form (exact decompositions only)."""
        if not self.is_exact:
            raise InvalidInput("numeric decompositions have no exact expansion")
        t = self.degree
        total = [Fraction(0)] * (t + 1)
        for term in self.terms:
            a, b = term.linear
            for i in range(t + 1):
                total[i] = total[i] + term.coefficient * a ** (t - i) * b ** i
        return BinaryForm(total)

    def expand_numeric(self) -> list[complex]:
        t = self.degree
        total = [0j] * (t + 1)
        for term in self.terms:
            a, b = (complex(x) for x in term.linear)
            for i in range(t + 1):
                total[i] += complex(term.coefficient) * a ** (t - i) * b ** i
        return total

    def residual(self, h: BinaryForm) -> float:
        return max(abs(x - complex(y)) for x, y in zip(self.expand_numeric(), h.coeffs))


def _normalize_linear(a, b):
    """Scale (a, b) so the first nonzero coordinate is 1; return (unit, pair)."""
    lead = a if a else b
    return lead, (a / lead, b / lead)


def _kernel_candidates(basis, budget: int = 4000, seed: int = 0):
    """Deterministic stream of kernel elements: basis vectors first, then
    small integer combinations, then seeded random combinations."""
    dim = len(basis)
    seen = set()

    def combine(coeffs):
        vec = tuple(sum((c * v[i] for c, v in zip(coeffs, basis)), Fraction(0)) for i in range(len(basis[0])))
        return vec

    for v in basis:
        seen.add(v)
        yield v
    if dim == 1:
        return
    max_nonzero = dim if dim <= 4 else 2
    combos = []
    for coeffs in itertools.product(range(-2, 3), repeat=dim):
        nz = [c for c in coeffs if c]
        if len(nz) < 2 or len(nz) > max_nonzero or nz[0] < 0:
            continue
        combos.append((len(nz), max(abs(c) for c in nz), tuple(-c for c in coeffs), coeffs))
    combos.sort()
    count = 0
    for *_, coeffs in combos:
        vec = combine(coeffs)
        if vec not in seen:
            seen.add(vec)
            yield vec
            count += 1
            if count >= budget:
                return
    rng = random.Random(seed)
    for _ in range(200):
        yield combine([rng.randint(-9, 9) for _ in range(dim)])


def _solve_numeric(columns, rhs) -> list[complex]:
    """Least-residual solve of an overdetermined consistent complex system."""
    rows = [[col[i] for col in columns] + [rhs[i]] for i in range(len(rhs))]
    n = len(columns)
    pivot_rows = []
    for c in range(n):
        candidates = [i for i in range(len(rows)) if i not in pivot_rows]
        p = max(candidates, key=lambda i: abs(rows[i][c]))
        pivot_rows.append(p)
        for i in range(len(rows)):
            if i != p and rows[p][c]:
                factor = rows[i][c] / rows[p][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[p])]
    return [rows[p][n] / rows[p][c] for c, p in enumerate(pivot_rows)]


def sylvester_decompose(h: BinaryForm) -> WaringDecomposition:
    """Waring decomposition h = sum lambda_j (a_j u + b_j v)^t.

    Starting at the border rank k, look for a squarefree apolar form g of
    degree k (kernel of Cat_k(h)); its roots give the linear forms and a
    linear solve gives the coefficients.  Among squarefree kernel elements
    one that splits over Q or Q(i) is preferred; otherwise the roots are
    computed numerically and the result is tagged NumericApprox.
    """
    if h.is_zero():
        raise ZeroForm("Waring decomposition of the zero form")
    if not h.is_rational():
        raise InvalidInput("Sylvester's algorithm is implemented for rational forms")
    t = h.degree
    if t == 0:
        return WaringDecomposition(0, [WaringTerm(h.coeffs[0], (Fraction(1), Fraction(0)))], "ExactQ")
    k = border_rank(h)
    while k <= t:
        basis = kernel_basis(cat_matrix(h, k))
        fallback = None
        chosen = None
        for g in _kernel_candidates(basis) if basis else ():
            if not is_squarefree_binary(g):
                continue
            factors, exactness = binary_roots(g)
            if exactness != "NumericApprox":
                chosen = (g, factors, exactness)
                break
            if fallback is None:
                fallback = (g, factors, exactness)
        chosen = chosen or fallback
        if chosen is not None:
            return _finish(h, k, *chosen)
        k += 1
    raise InvalidInput("no squarefree apolar form found")  # unreachable for nonzero h


def _finish(h: BinaryForm, k: int, g, factors, exactness) -> WaringDecomposition:
    t = h.degree
    linears = []
    for a, b in factors:
        # the factor a U + b V kills (b u - a v)^t
        la, lb = b, -a
        if exactness == "NumericApprox":
            lead = la if abs(la) > 1e-300 else lb
            linears.append((complex(la) / lead, complex(lb) / lead))
        else:
            _, pair = _normalize_linear(to_scalar(la), to_scalar(lb))
            linears.append(tuple(to_scalar(x) for x in pair))
    if exactness == "NumericApprox":
        columns = [[a ** (t - i) * b ** i for i in range(t + 1)] for a, b in linears]
        lambdas = _solve_numeric(columns, [complex(c) for c in h.coeffs])
    else:
        matrix = ExactMatrix([[a ** (t - i) * b ** i for a, b in linears] for i in range(t + 1)], len(linears))
        lambdas = solve(matrix, h.coeffs)
    terms = [WaringTerm(lam, lin) for lam, lin in zip(lambdas, linears) if (lam if exactness != "NumericApprox" else abs(lam) > NUMERIC_TOLERANCE)]
    decomposition = WaringDecomposition(t, terms, exactness, k, tuple(g))
    if exactness != "NumericApprox" and decomposition.expand() != h:
        raise InvalidInput("internal error: decomposition does not reproduce the form")
    return decomposition
