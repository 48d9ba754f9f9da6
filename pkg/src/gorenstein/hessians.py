"""Hessian and higher Hessian matrices with exact or probabilistic verdicts.

The k-th Hessian of f with respect to a monomial basis (a_i) of A_k is the
matrix of forms ((a_i a_j).f).  Its determinant is the object of interest:
a nonzero value at a point is an exact certificate, while vanishing of a
large determinant is established by exact evaluation along random lines.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .artinian import algebra
from .errors import DegreeOutOfRange, DegreeTooSmall, NotSquare
from .exactmath import ExactMatrix, determinant, rank
from .polyring import Form, evaluate

SYMBOLIC_MAX_SIZE = 6
COORDINATE_BOUND = 9
LINES = 3
GENERIC_RANK_POINTS = 5


class VerdictStatus(str, Enum):
    NONZERO_CERTIFIED = "NonzeroCertified"
    ZERO_PROBABILISTIC = "ZeroProbabilistic"
    ZERO_SYMBOLIC = "ZeroSymbolic"

    def __str__(self):
        return self.value


@dataclass
class VanishingVerdict:
    status: VerdictStatus
    witness: tuple | None = None
    """A point with nonzero determinant (NonzeroCertified only)."""
    value: Fraction | None = None
    """The determinant at the witness point."""
    determinant: Form | None = None
    """The symbolic determinant when it was computed."""
    trials: int = 0
    """Number of exact determinant evaluations performed."""
    lines: list = field(default_factory=list)
    """(p, q) pairs of the random lines used by the probabilistic route."""

    @property
    def is_zero(self) -> bool:
        return self.status != VerdictStatus.NONZERO_CERTIFIED


@dataclass
class HessianSpec:
    f: Form
    k: int
    basis: list
    entries: list

    @property
    def size(self) -> int:
        return len(self.basis)


def hessian_matrix(f: Form) -> list[list[Form]]:
    if f.degree < 2:
        raise DegreeTooSmall(f"the Hessian needs degree >= 2, got {f.degree}")
    first = [f.derivative(i) for i in range(f.nvars)]
    return [[first[i].derivative(j) for j in range(f.nvars)] for i in range(f.nvars)]


def higher_hessian(f: Form, k: int, basis=None) -> HessianSpec:
    """Matrix ((a_i a_j).f) over a basis of A_k (greedy-lex unless given)."""
    if not 0 <= k <= f.degree // 2:
        raise DegreeOutOfRange(f"k={k} outside 0..{f.degree // 2}")
    if basis is None:
        basis = algebra(f).basis(k)
    basis = [tuple(b) for b in basis]
    entries = [[None] * len(basis) for _ in basis]
    for i, a in enumerate(basis):
        for j in range(i, len(basis)):
            g = f.differentiate(tuple(x + y for x, y in zip(a, basis[j])))
            entries[i][j] = entries[j][i] = g
    return HessianSpec(f, k, basis, entries)


def evaluate_matrix(entries, point) -> ExactMatrix:
    return ExactMatrix([[evaluate(e, point) for e in row] for row in entries], len(entries[0]) if entries else 0)


def symbolic_determinant(entries) -> Form:
    """Division-free determinant by expansion over column subsets.

    Rows are processed in order; the state maps a set of used columns to the
    signed sum of the corresponding partial products.
    """
    n = len(entries)
    variables = next((e.variables for row in entries for e in row), ())
    if n == 0:
        return Form.constant(variables, 1)
    state = {0: Form.constant(variables, 1)}
    for r in range(n):
        new_state: dict[int, Form] = {}
        for mask, partial in state.items():
            for c in range(n):
                bit = 1 << c
                if mask & bit:
                    continue
                entry = entries[r][c]
                if not entry.terms:
                    continue
                term = partial * entry
                if bin(mask >> (c + 1)).count("1") % 2:
                    term = -term
                prev = new_state.get(mask | bit)
                new_state[mask | bit] = term if prev is None else prev + term
        state = {m: p for m, p in new_state.items() if p.terms}
        if not state:
            return Form.zero(variables, sum(row[0].degree for row in entries))
    return state[(1 << n) - 1]


def _max_entry_degree(entries) -> int:
    return max((e.degree for row in entries for e in row if e.terms), default=0)


def _random_point(rng: random.Random, nvars: int, bound: int) -> tuple[int, ...]:
    return tuple(rng.randint(-bound, bound) for _ in range(nvars))


def vanishing_verdict(
    entries,
    seed: int | None = 0,
    *,
    rng: random.Random | None = None,
    symbolic_max: int = SYMBOLIC_MAX_SIZE,
    bound: int = COORDINATE_BOUND,
    lines: int = LINES,
) -> VanishingVerdict:
    """Decide whether det(entries) is the zero polynomial.

    Matrices of size at most ``symbolic_max`` get an exact answer: a couple of
    random evaluations first (any nonzero value is already a certificate),
    then the symbolic determinant if those all vanish.  Larger matrices are
    restricted to ``lines`` random lines p + t q; on each line the
    determinant is a polynomial in t of degree at most D = (entry degree) *
    size, so D + 1 exact evaluations decide it on that line.
    """
    entries = [list(row) for row in entries]
    n = len(entries)
    if any(len(row) != n for row in entries):
        raise NotSquare(f"matrix with {n} rows is not square")
    rng = rng or random.Random(seed)
    if n == 0:
        return VanishingVerdict(VerdictStatus.NONZERO_CERTIFIED, witness=(), value=Fraction(1))
    nvars = next((e.nvars for row in entries for e in row), 0)
    if not any(e.terms for row in entries for e in row):
        return VanishingVerdict(VerdictStatus.ZERO_SYMBOLIC, determinant=Form.zero(entries[0][0].variables))
    trials = 0
    if n <= symbolic_max:
        for _ in range(2):
            point = _random_point(rng, nvars, bound)
            trials += 1
            value = determinant(evaluate_matrix(entries, point))
            if value:
                return VanishingVerdict(VerdictStatus.NONZERO_CERTIFIED, witness=point, value=value, trials=trials)
        det = symbolic_determinant(entries)
        if not det.terms:
            return VanishingVerdict(VerdictStatus.ZERO_SYMBOLIC, determinant=det, trials=trials)
        while True:
            point = _random_point(rng, nvars, bound)
            trials += 1
            value = evaluate(det, point)
            if value:
                return VanishingVerdict(
                    VerdictStatus.NONZERO_CERTIFIED, witness=point, value=value, determinant=det, trials=trials
                )
    degree_bound = _max_entry_degree(entries) * n
    used_lines = []
    for _ in range(lines):
        p = _random_point(rng, nvars, bound)
        q = _random_point(rng, nvars, bound)
        used_lines.append((p, q))
        for t in range(degree_bound + 1):
            point = tuple(a + t * b for a, b in zip(p, q))
            trials += 1
            value = determinant(evaluate_matrix(entries, point))
            if value:
                return VanishingVerdict(
                    VerdictStatus.NONZERO_CERTIFIED, witness=point, value=value, trials=trials, lines=used_lines
                )
    return VanishingVerdict(VerdictStatus.ZERO_PROBABILISTIC, trials=trials, lines=used_lines)


def hessian_generic_rank(f: Form, seed: int | None = 0, points: int = GENERIC_RANK_POINTS, bound: int = COORDINATE_BOUND) -> int:
    """Largest rank of Hess(f) over a few random integer points.

    Always a lower bound for the generic rank, equal to it unless every
    sampled point lies on a proper subvariety.
    """
    if f.degree < 2:
        return 0
    rng = random.Random(seed)
    hess = hessian_matrix(f)
    return max(rank(evaluate_matrix(hess, _random_point(rng, f.nvars, bound))) for _ in range(points))
