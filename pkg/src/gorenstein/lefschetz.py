"""Weak and strong Lefschetz properties of A = S/Ann_S(f).

Positive answers carry an explicit linear form L whose multiplication maps
were checked to have full rank.  Negative answers are never "all random
trials failed": they carry a certificate (a vanishing higher Hessian on a
flat stretch of the h-vector, an h-vector that no algebra with the WLP can
have, or a forced zero block).  Otherwise the verdict is Inconclusive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

from .artinian import HilbertVector, algebra, is_SI_sequence, linear_operator
from .errors import NotPerazzoShape
from .exactmath import rank
from .hessians import (
    COORDINATE_BOUND,
    VanishingVerdict,
    evaluate_matrix,
    higher_hessian,
    vanishing_verdict,
)
from .polyring import Form, OperatorPoly, evaluate

TRIALS = 5
SLP_ATTEMPTS = 20


class Status(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass
class LefschetzVerdict:
    status: Status
    witness: OperatorPoly | None = None
    """The Lefschetz element found (Holds only)."""
    reason: str = ""
    certificate: dict = field(default_factory=dict)
    ranks: dict = field(default_factory=dict)
    """Per-degree ranks of the multiplication maps checked for the witness."""

    @property
    def holds(self) -> bool:
        return self.status == Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status == Status.FAILS


@dataclass
class LefschetzReport:
    hvector: HilbertVector
    wlp: LefschetzVerdict
    slp: LefschetzVerdict
    hessian_verdicts: dict[int, VanishingVerdict]
    seed: int | None
    trials: int


def _random_linear(rng: random.Random, names, bound: int = COORDINATE_BOUND) -> OperatorPoly:
    while True:
        coeffs = [rng.randint(-bound, bound) for _ in names]
        if any(coeffs):
            return linear_operator(coeffs, names)


def weak_lefschetz_ranks(f: Form, L) -> dict[int, int]:
    view = algebra(f)
    return {i: rank(view.multiplication_matrix(L, i, 1)) for i in range(f.degree)}


def is_weak_lefschetz_element(f: Form, L, method: str = "scan") -> bool:
    """Whether every map x L : A_i -> A_{i+1} has full rank.

    ``method="scan"`` checks all degrees; ``method="shortcut"`` checks only
    the pivotal degree in the middle of the (symmetric) h-vector, which is
    equivalent for Gorenstein algebras.
    """
    view = algebra(f)
    d = f.degree
    h = view.hilbert_vector()
    L = linear_operator(L, view.operator_variables)
    if method == "scan":
        return all(
            rank(view.multiplication_matrix(L, i, 1)) == min(h[i], h[i + 1]) for i in range(d)
        )
    if method != "shortcut":
        raise ValueError(f"unknown method {method!r}")
    if d == 0:
        return True
    if not h.is_unimodal():
        return False
    if d % 2:
        k0 = (d - 1) // 2
        return rank(view.multiplication_matrix(L, k0, 1)) == h[k0]
    m = d // 2
    # h[m-1] == h[m]: check the isomorphism; h[m-1] < h[m]: check injectivity
    return rank(view.multiplication_matrix(L, m - 1, 1)) == h[m - 1]


def flat_window_degrees(h) -> list[int]:
    """Degrees k < d/2 with h_k = h_{k+1} = ... = h_{d-k}, largest first.

    For such k the WLP forces x L^{d-2k}: A_k -> A_{d-k} to be bijective, so
    a vanishing k-th Hessian rules the WLP out.
    """
    d = len(h) - 1
    out = []
    for k in range((d - 1) // 2, -1, -1):
        if all(h[i] == h[k] for i in range(k, d - k + 1)):
            out.append(k)
        else:
            break
    return out


def is_perazzo_shape(f: Form) -> bool:
    if f.nvars != 5:
        return False
    return all(sum(m[:3]) <= 1 for m in f.terms)


def zero_block_size(f, k: int) -> int | None:
    """Size of the all-zero block of hess^k spanned by basis monomials with
    positive degree in y0, y1, y2, or None if that block is not zero."""
    form = getattr(f, "assembled", f)
    if not isinstance(form, Form) or not is_perazzo_shape(form):
        raise NotPerazzoShape("expected a form in 5 variables, linear in the first three")
    block = [b for b in algebra(form).basis(k) if sum(b[:3]) >= 1]
    for i, a in enumerate(block):
        for b in block[i:]:
            if form.differentiate(tuple(x + y for x, y in zip(a, b))).terms:
                return None
    return len(block)


def structural_zero_block(f, k: int) -> bool:
    """Whether the k-th Hessian of a Perazzo 3-fold vanishes for block reasons.

    Basis monomials of A_k that involve y0, y1 or y2 pair to operators of
    degree >= 2 in those variables, which kill f.  If there are m of them and
    2m > h_k, the matrix has an m x m zero block and its determinant is zero.
    """
    m = zero_block_size(f, k)
    form = getattr(f, "assembled", f)
    return m is not None and 2 * m > algebra(form).h(k)


def wlp_verdict(f: Form, trials: int = TRIALS, seed: int | None = 0, rng: random.Random | None = None) -> LefschetzVerdict:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = rng or random.Random(seed)
    view = algebra(f)
    h = view.hilbert_vector()
    for _ in range(trials):
        L = _random_linear(rng, view.operator_variables)
        if is_weak_lefschetz_element(f, L, method="shortcut"):
            ranks = weak_lefschetz_ranks(f, L)
            if all(ranks[i] == min(h[i], h[i + 1]) for i in ranks):
                return LefschetzVerdict(Status.HOLDS, witness=L, ranks=ranks)
    if not h.is_unimodal():
        return LefschetzVerdict(Status.FAILS, reason="h-vector is not unimodal", certificate={"hvector": list(h)})
    if not is_SI_sequence(h):
        return LefschetzVerdict(Status.FAILS, reason="h-vector is not an SI-sequence", certificate={"hvector": list(h)})
    window = flat_window_degrees(h)
    if is_perazzo_shape(f):
        for k in window:
            if structural_zero_block(f, k):
                m = zero_block_size(f, k)
                return LefschetzVerdict(
                    Status.FAILS,
                    reason=f"hess^{k} vanishes: {m}x{m} zero block in a {h[k]}x{h[k]} matrix",
                    certificate={"k": k, "kind": "structural zero block", "block": m, "size": h[k]},
                )
    for k in window:
        if 2 * k == f.degree:
            continue
        verdict = vanishing_verdict(higher_hessian(f, k).entries, rng=rng)
        if verdict.is_zero:
            return LefschetzVerdict(
                Status.FAILS,
                reason=f"hess^{k} vanishes while h is flat from degree {k} to {f.degree - k}",
                certificate={"k": k, "kind": str(verdict.status), "trials": verdict.trials},
            )
    return LefschetzVerdict(Status.INCONCLUSIVE, reason=f"no Lefschetz element in {trials} trials and no certificate")


def slp_verdict(
    f: Form, seed: int | None = 0, attempts: int = SLP_ATTEMPTS, rng: random.Random | None = None,
    hessian_verdicts: dict | None = None,
) -> LefschetzVerdict:
    """Strong Lefschetz property via the higher Hessians (Watanabe's criterion)."""
    rng = rng or random.Random(seed)
    d = f.degree
    specs = {}
    verdicts = {} if hessian_verdicts is None else hessian_verdicts
    for k in range(1, d // 2 + 1):
        spec = higher_hessian(f, k)
        specs[k] = spec
        verdicts[k] = vanishing_verdict(spec.entries, rng=rng)
        if verdicts[k].is_zero:
            return LefschetzVerdict(
                Status.FAILS,
                reason=f"hess^{k} vanishes",
                certificate={"k": k, "kind": str(verdicts[k].status), "trials": verdicts[k].trials},
            )
    for _ in range(attempts):
        point = tuple(rng.randint(-COORDINATE_BOUND, COORDINATE_BOUND) for _ in range(f.nvars))
        if not evaluate(f, point):
            continue
        if all(evaluate_matrix(spec.entries, point).det() for spec in specs.values()):
            view = algebra(f)
            L = linear_operator(point, view.operator_variables)
            return LefschetzVerdict(Status.HOLDS, witness=L, certificate={"point": list(point)})
    return LefschetzVerdict(
        Status.INCONCLUSIVE, reason=f"all higher Hessians are nonzero but {attempts} points missed a common witness"
    )


def lefschetz_report(f: Form, seed: int | None = 0, trials: int = TRIALS) -> LefschetzReport:
    rng = random.Random(seed)
    h = algebra(f).hilbert_vector()
    wlp = wlp_verdict(f, trials=trials, rng=rng)
    verdicts: dict = {}
    slp = slp_verdict(f, rng=rng, hessian_verdicts=verdicts)
    return LefschetzReport(h, wlp, slp, verdicts, seed, trials)
