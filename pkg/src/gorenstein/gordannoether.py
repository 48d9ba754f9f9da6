"""Algebraic relations among partials, self-vanishing systems, the
Gordan-Noether identity and Cremona reductions to a cone.

A system h = (h_0, ..., h_n) is self-vanishing when the derivation
D_h = sum_j h_j d/dx_j kills every h_i.  Forms killed by D_h satisfy
f(x + t h(x)) = f(x), and substituting t = -x_p / h_p(x) removes the
variable x_p after a birational change of coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .errors import DegreeMismatch, InvalidInput, PivotZero, RelationInvalid, RelationNotFound
from .exactmath import ExactMatrix, kernel_basis
from .polyring import Form, RationalFunction, monomials, partials, substitute

DEFAULT_MAX_DEGREE = 4


@dataclass(frozen=True)
class AlgebraicRelation:
    """g(y) with g(df/dx_0, ..., df/dx_n) = 0; found with degree bound ``search_bound``."""

    g: Form
    search_bound: int = 0

    @property
    def degree(self) -> int:
        return self.g.degree


@dataclass(frozen=True)
class SelfVanishingSystem:
    h: tuple
    source_relation: AlgebraicRelation | None = None
    removed_factor: tuple = field(default_factory=tuple)
    """Exponents of the common monomial factor divided out of the raw system."""

    def __iter__(self):
        return iter(self.h)

    def __len__(self):
        return len(self.h)

    def __getitem__(self, i):
        return self.h[i]


def relation_variables(n: int) -> tuple[str, ...]:
    return tuple(f"y{i}" for i in range(n))


def find_min_relation(f: Form, max_degree: int = DEFAULT_MAX_DEGREE) -> AlgebraicRelation:
    """Least-degree homogeneous g with g(grad f) = 0.

    For each degree e the products of partials indexed by the degree-e
    monomials in y (in lex order) are written in the monomial basis; the
    first kernel vector of that coefficient matrix gives g, scaled to
    coprime integers with positive leading coefficient.
    """
    if max_degree < 1:
        raise InvalidInput("max_degree must be >= 1")
    if not f.is_rational():
        raise InvalidInput("relation search is implemented for rational forms")
    derivs = partials(f)
    n = f.nvars
    names = relation_variables(n)
    products: dict[tuple, Form] = {(0,) * n: Form.constant(f.variables, 1)}
    for e in range(1, max_degree + 1):
        monos = monomials(n, e)
        columns = []
        for m in monos:
            i = next(j for j, a in enumerate(m) if a)
            prev = tuple(a - (j == i) for j, a in enumerate(m))
            products[m] = products[prev] * derivs[i]
            columns.append(products[m])
        support = sorted({t for p in columns for t in p.terms}, reverse=True)
        if not support:
            kernel = [tuple(int(j == 0) for j in range(len(monos)))]
        else:
            kernel = kernel_basis(ExactMatrix([[p.coefficient(t) for p in columns] for t in support], len(monos)))
        if kernel:
            vec = kernel[0]
            lead = next(c for c in vec if c)
            sign = 1 if lead > 0 else -1
            g = Form(names, {m: sign * c for m, c in zip(monos, vec) if c}, e)
            return AlgebraicRelation(g, max_degree)
    raise RelationNotFound(max_degree)


def _derivation(h, q: Form) -> Form | None:
    """sum_j h_j dq/dx_j, or None when every summand vanishes."""
    total = None
    for j, hj in enumerate(h):
        if not hj.terms:
            continue
        dq = q.derivative(j)
        if not dq.terms:
            continue
        term = hj * dq
        total = term if total is None else total + term
    return total


def _vanishes(form: Form | None) -> bool:
    return form is None or not form.terms


def _common_degree(h) -> int:
    degrees = {p.degree for p in h if p.terms}
    if len(degrees) > 1:
        raise DegreeMismatch(f"components have degrees {sorted(degrees)}")
    return degrees.pop() if degrees else 0


def is_self_vanishing(h) -> bool:
    """Whether D_h h_i = 0 for every component."""
    h = list(h)
    _common_degree(h)
    return all(_vanishes(_derivation(h, hi)) for hi in h)


def _strip_monomial_factor(h):
    nonzero = [p for p in h if p.terms]
    n = nonzero[0].nvars
    common = tuple(min(m[i] for p in nonzero for m in p.terms) for i in range(n))
    if not any(common):
        return list(h), common
    out = []
    for p in h:
        terms = {tuple(a - b for a, b in zip(m, common)): c for m, c in p.terms.items()}
        out.append(Form(p.variables, terms, p.degree - sum(common)) if terms else Form.zero(p.variables, p.degree - sum(common)))
    return out, common


def build_svs(f: Form, rel: AlgebraicRelation | Form) -> SelfVanishingSystem:
    """h_j = (dg/dy_j)(grad f), with any common monomial factor removed.

    The syzygy, self-vanishing and solution properties are checked before
    returning; a relation that does not hold or gives h = 0 is rejected.
    """
    g = rel.g if isinstance(rel, AlgebraicRelation) else rel
    relation = rel if isinstance(rel, AlgebraicRelation) else AlgebraicRelation(g)
    if g.nvars != f.nvars:
        raise RelationInvalid(f"relation has {g.nvars} variables, form has {f.nvars}")
    derivs = partials(f)
    if substitute(g, derivs).terms:
        raise RelationInvalid(f"g = {g} does not vanish on the partials")
    raw = [substitute(g.derivative(j), derivs) for j in range(g.nvars)]
    if not any(p.terms for p in raw):
        raise RelationInvalid(f"g = {g} gives the trivial system")
    h, common = _strip_monomial_factor(raw)
    if not _vanishes(_derivation(h, f)):
        raise RelationInvalid("h is not a syzygy of the partials")
    if not all(_vanishes(_derivation(h, fj)) for fj in derivs):
        raise RelationInvalid("some partial is not a solution of D_h")
    for j in range(f.nvars):
        dh = [p.derivative(j) for p in h]
        if not _vanishes(_derivation(dh, f)):
            raise RelationInvalid(f"f is not a solution of d h/d x_{j}")
    if not is_self_vanishing(h):
        raise RelationInvalid("h is not self-vanishing")
    return SelfVanishingSystem(tuple(h), relation, common)


# -- Gordan-Noether identity ----------------------------------------------------------


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for i, p in a.items():
        for j, q in b.items():
            term = p * q
            if not term.terms:
                continue
            out[i + j] = term if i + j not in out else out[i + j] + term
    return out


def shifted_expansion(f: Form, h) -> dict[int, Form]:
    """Coefficients of t^j in f(x + t h(x)), by multiplying out the products."""
    h = list(h)
    variables = f.variables
    linear = []
    for i in range(f.nvars):
        factor = {0: Form.variable(variables, i)}
        if h[i].terms:
            factor[1] = h[i]
        linear.append(factor)
    total: dict = {}
    for m, c in f.terms.items():
        poly = {0: Form.constant(variables, c)}
        for i, a in enumerate(m):
            for _ in range(a):
                poly = _poly_mul(poly, linear[i])
        for j, p in poly.items():
            total[j] = p if j not in total else total[j] + p
    return {j: p for j, p in total.items() if p.terms}


def polarization_expansion(f: Form, h) -> dict[int, Form]:
    """Coefficients f^(j)(x, h(x)) with f^(j)(x, y) = (1/j!) (sum y_i d/dx_i)^j f.

    The polar forms are built in the doubled variable set (x, y) and only
    then is y replaced by h.
    """
    h = list(h)
    n = f.nvars
    ext_vars = tuple(f.variables) + tuple(f"{v}__dir" for v in f.variables)
    current = Form(ext_vars, {m + (0,) * n: c for m, c in f.terms.items()}, f.degree)
    out = {}
    for j in range(f.degree + 1):
        if j:
            nxt = None
            for i in range(n):
                d = current.derivative(i)
                if d.terms:
                    term = Form.variable(ext_vars, n + i) * d
                    nxt = term if nxt is None else nxt + term
            if nxt is None:
                break
            current = nxt
        value = None
        for m, c in current.terms.items():
            term = Form.monomial(f.variables, m[:n], c / factorial(j))
            for i, b in enumerate(m[n:]):
                if b:
                    term = term * h[i] ** b
            if term.terms:
                value = term if value is None else value + term
        if value is not None and value.terms:
            out[j] = value
    return out


@dataclass(frozen=True)
class GNReport:
    expansion: dict
    polarization: dict
    agree: bool
    holds: bool


def gn_identity_report(f: Form, svs) -> GNReport:
    h = list(svs)
    if len(h) != f.nvars:
        raise InvalidInput(f"system has {len(h)} components, form has {f.nvars} variables")
    first = shifted_expansion(f, h)
    second = polarization_expansion(f, h)
    agree = first == second
    holds = set(first) <= {0} and first.get(0) == f
    return GNReport(first, second, agree, holds)


def verify_gn_identity(f: Form, svs) -> bool:
    """Whether f(x + t h(x)) = f(x), checked by expansion and by polar forms."""
    report = gn_identity_report(f, svs)
    return report.agree and report.holds


# -- Cremona reduction ------------------------------------------------------------------------


@dataclass(frozen=True)
class CremonaReduction:
    pivot: int
    reduced: Form
    """f written in the s-variables; it does not involve s_pivot."""
    forward: tuple
    """s_i as rational functions of x."""
    backward: tuple
    """x_i as rational functions of s."""


def s_variables(variables) -> tuple[str, ...]:
    return tuple(f"{v}'" for v in variables)


def cremona_reduce(f: Form, svs, pivot: int) -> CremonaReduction:
    """Birational change of coordinates making f independent of s_pivot.

    forward:  s_i = x_i - (h_i / h_p) x_p  (i != p),  s_p = x_p
    backward: x_i = s_i + (h_i(s) / h_p(s)) s_p
    The reduced form is f composed with the backward map; the forward map
    sends it back to f, which is checked.
    """
    h = list(svs)
    if len(h) != f.nvars:
        raise InvalidInput(f"system has {len(h)} components, form has {f.nvars} variables")
    if not 0 <= pivot < f.nvars:
        raise InvalidInput(f"pivot {pivot} outside 0..{f.nvars - 1}")
    hp = h[pivot]
    if not hp.terms:
        raise PivotZero(f"h_{pivot} is zero")
    svars = s_variables(f.variables)
    x = [Form.variable(f.variables, i) for i in range(f.nvars)]
    s = [Form.variable(svars, i) for i in range(f.nvars)]
    hp_s = hp.rename(svars)
    forward, backward = [], []
    for i in range(f.nvars):
        if i == pivot:
            forward.append(RationalFunction(x[i] * hp, hp))
            backward.append(RationalFunction(s[i] * hp_s, hp_s))
            continue
        forward.append(RationalFunction(x[i] * hp - h[i] * x[pivot], hp) if h[i].terms else RationalFunction(x[i] * hp, hp))
        hi_s = h[i].rename(svars)
        backward.append(RationalFunction(s[i] * hp_s + hi_s * s[pivot], hp_s) if h[i].terms else RationalFunction(s[i] * hp_s, hp_s))
    reduced = substitute(f, backward)
    if any(m[pivot] for m in reduced.terms):
        raise RelationInvalid(f"the reduced form still involves {svars[pivot]}")
    if substitute(reduced, forward) != f:
        raise RelationInvalid("the forward map does not restore f")
    return CremonaReduction(pivot, reduced, tuple(forward), tuple(backward))
