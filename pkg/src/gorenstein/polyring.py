"""Sparse homogeneous polynomials and the differentiation action.

A :class:`Form` is a homogeneous polynomial in an explicit, ordered list of
variables.  Terms live in a dict mapping exponent tuples to exact scalars.
Monomials are plain tuples of ints; Python's tuple comparison is exactly the
pure lexicographic order with respect to the declared variable order, and
"lex order" throughout the package means descending order (``x0^k`` first).

:class:`OperatorPoly` has the same shape but is read as a polynomial in the
differential operators ``X_i = d/dx_i``; :func:`apply_operator` lets it act by
plain iterated differentiation (no factorial rescaling).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import (
    ArityMismatch,
    NonPolynomialResult,
    NotHomogeneous,
    ParseError,
    VariableMismatch,
)
from .exactmath import GaussianRational, to_scalar

PERAZZO_VARIABLES = ("x0", "x1", "x2", "u", "v")
PERAZZO_OPERATORS = ("y0", "y1", "y2", "U", "V")


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given total degree, in descending lex order."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict:
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


def _falling(a: int, b: int) -> int:
    """a (a-1) ... (a-b+1)."""
    out = 1
    for i in range(b):
        out *= a - i
    return out


_coerce = to_scalar


class Form:
    """Homogeneous polynomial with an explicit variable list.

    >>> f = parse_form("u^2*x + u*v*y + v^2*z", ["x", "y", "z", "u", "v"])
    >>> f.degree
    3
    """

    __slots__ = ("variables", "degree", "terms", "_hash")

    def __init__(self, variables, terms=None, degree: int | None = None):
        variables = tuple(variables)
        clean = {}
        for mono, coef in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != len(variables):
                raise ArityMismatch(
                    f"monomial {mono} has {len(mono)} exponents for {len(variables)} variables"
                )
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            coef = _coerce(coef)
            if coef:
                clean[mono] = coef
        degrees = {sum(m) for m in clean}
        if len(degrees) > 1:
            a, b = sorted(degrees)[:2]
            raise NotHomogeneous(a, b)
        if degrees:
            (found,) = degrees
            if degree is not None and degree != found:
                raise NotHomogeneous(degree, found)
            degree = found
        elif degree is None:
            degree = 0
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def _raw(cls, variables, terms, degree):
        """Build without re-validating (terms already clean and homogeneous)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "variables", variables)
        object.__setattr__(obj, "degree", degree)
        object.__setattr__(obj, "terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def zero(cls, variables, degree: int = 0):
        return cls._raw(tuple(variables), {}, degree)

    @classmethod
    def constant(cls, variables, value):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value}, 0)

    @classmethod
    def variable(cls, variables, name_or_index):
        variables = tuple(variables)
        i = variables.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        mono = tuple(int(j == i) for j in range(len(variables)))
        return cls._raw(variables, {mono: Fraction(1)}, 1)

    @classmethod
    def monomial(cls, variables, exponents, coefficient=1):
        return cls(variables, {tuple(exponents): coefficient})

    def _like(self, terms, degree, variables=None):
        return type(self)._raw(self.variables if variables is None else variables, terms, degree)

    # -- basic properties -----------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        """Terms in descending lex order."""
        return sorted(self.terms.items(), reverse=True)

    def coefficient(self, mono):
        return self.terms.get(tuple(mono), Fraction(0))

    def leading_term(self):
        mono = max(self.terms)
        return mono, self.terms[mono]

    def is_rational(self) -> bool:
        return not any(isinstance(c, GaussianRational) for c in self.terms.values())

    def used_variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # -- arithmetic -------------------------------------------------------

    def _check_same(self, other):
        if self.variables != other.variables:
            raise VariableMismatch(f"{self.variables} vs {other.variables}")

    def _add(self, other, sign):
        if not isinstance(other, Form):
            if other == 0:
                return self
            other = type(self).constant(self.variables, other)
        self._check_same(other)
        if not other.terms:
            return self
        if not self.terms:
            return other if sign > 0 else -other
        if self.degree != other.degree:
            raise NotHomogeneous(self.degree, other.degree)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            new = terms.get(m, 0) + c if sign > 0 else terms.get(m, 0) - c
            if new:
                terms[m] = _coerce(new)
            else:
                terms.pop(m, None)
        return self._like(terms, self.degree)

    def __add__(self, other):
        return self._add(other, 1)

    def __radd__(self, other):
        return self._add(other, 1)

    def __sub__(self, other):
        return self._add(other, -1)

    def __rsub__(self, other):
        return (-self)._add(other, 1)

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()}, self.degree)

    def scale(self, c):
        c = _coerce(c)
        if not c:
            return self._like({}, self.degree)
        return self._like({m: _coerce(v * c) for m, v in self.terms.items()}, self.degree)

    def __mul__(self, other):
        if not isinstance(other, Form):
            return self.scale(other)
        self._check_same(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        terms = {m: _coerce(c) for m, c in terms.items() if c}
        return self._like(terms, self.degree + other.degree)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(1 / _coerce(c))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a form")
        result = type(self).constant(self.variables, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Form):
            return self.variables == other.variables and self.terms == other.terms and (
                not self.terms or self.degree == other.degree
            )
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.variables, frozenset(self.terms.items()))))
        return self._hash

    # -- calculus and evaluation ------------------------------------------

    def derivative(self, index: int | str) -> Form:
        i = self.variables.index(index) if isinstance(index, str) else index
        terms = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                terms[m[:i] + (e - 1,) + m[i + 1:]] = _coerce(c * e)
        return self._like(terms, max(self.degree - 1, 0))

    def differentiate(self, exponents) -> Form:
        """Apply the monomial operator with the given exponents."""
        exponents = tuple(exponents)
        k = sum(exponents)
        if k > self.degree:
            return self._like({}, 0)
        terms = {}
        for m, c in self.terms.items():
            if all(a >= b for a, b in zip(m, exponents)):
                factor = 1
                for a, b in zip(m, exponents):
                    if b:
                        factor *= _falling(a, b)
                terms[tuple(a - b for a, b in zip(m, exponents))] = _coerce(c * factor)
        return self._like(terms, self.degree - k)

    def contract(self, exponents) -> Form:
        """Contraction by a monomial: x^a -> x^(a-b), no factorial factors."""
        exponents = tuple(exponents)
        k = sum(exponents)
        if k > self.degree:
            return self._like({}, 0)
        terms = {}
        for m, c in self.terms.items():
            if all(a >= b for a, b in zip(m, exponents)):
                terms[tuple(a - b for a, b in zip(m, exponents))] = c
        return self._like(terms, self.degree - k)

    def evaluate(self, point):
        return evaluate(self, point)

    def rename(self, variables) -> Form:
        variables = tuple(variables)
        if len(variables) != self.nvars:
            raise ArityMismatch("renaming must keep the number of variables")
        return self._like(dict(self.terms), self.degree, variables)

    def as_form(self) -> Form:
        return Form._raw(self.variables, dict(self.terms), self.degree)

    def as_operator(self, names=None) -> OperatorPoly:
        names = operator_names(self.variables) if names is None else tuple(names)
        return OperatorPoly._raw(names, dict(self.terms), self.degree)

    # -- printing ----------------------------------------------------------

    def __str__(self):
        return format_form(self)

    def __repr__(self):
        return f"{type(self).__name__}({format_form(self)!r}, variables={self.variables})"


class OperatorPoly(Form):
    """Polynomial in the differential operators X_i = d/dx_i."""

    __slots__ = ()


def operator_names(variables) -> tuple[str, ...]:
    """Default operator names: the Perazzo convention, else upper case."""
    variables = tuple(variables)
    if variables == PERAZZO_VARIABLES:
        return PERAZZO_OPERATORS
    upper = tuple(v.upper() for v in variables)
    if len(set(upper)) == len(upper) and not set(upper) & set(variables):
        return upper
    return tuple(f"D{v}" for v in variables)


def _check_pairing(q: Form, f: Form):
    if q.nvars != f.nvars:
        raise VariableMismatch(f"operator has {q.nvars} variables, form has {f.nvars}")
    if not isinstance(q, OperatorPoly) and q.variables != f.variables:
        raise VariableMismatch(f"{q.variables} vs {f.variables}")


def apply_operator(q: Form, f: Form) -> Form:
    """q(d/dx_0, ..., d/dx_n) applied to f by plain differentiation."""
    _check_pairing(q, f)
    result_degree = f.degree - q.degree
    if result_degree < 0 or not q.terms or not f.terms:
        return Form.zero(f.variables, max(result_degree, 0))
    terms: dict = {}
    for b, cq in q.terms.items():
        for a, cf in f.terms.items():
            if all(x >= y for x, y in zip(a, b)):
                factor = 1
                for x, y in zip(a, b):
                    if y:
                        factor *= _falling(x, y)
                m = tuple(x - y for x, y in zip(a, b))
                terms[m] = terms.get(m, 0) + cq * cf * factor
    terms = {m: _coerce(c) for m, c in terms.items() if c}
    return Form._raw(f.variables, terms, result_degree)


def contract_operator(q: Form, f: Form) -> Form:
    """Contraction action (x^a contracted by X^b is x^(a-b))."""
    _check_pairing(q, f)
    result_degree = f.degree - q.degree
    if result_degree < 0 or not q.terms or not f.terms:
        return Form.zero(f.variables, max(result_degree, 0))
    terms: dict = {}
    for b, cq in q.terms.items():
        for a, cf in f.terms.items():
            if all(x >= y for x, y in zip(a, b)):
                m = tuple(x - y for x, y in zip(a, b))
                terms[m] = terms.get(m, 0) + cq * cf
    terms = {m: _coerce(c) for m, c in terms.items() if c}
    return Form._raw(f.variables, terms, result_degree)


def divided_powers(f: Form) -> Form:
    """Divide the coefficient of x^a by a! (multi-index factorial).

    divided_powers(q contracted into f) equals q applied to divided_powers(f)
    by differentiation, so both conventions give the same annihilator.
    """
    terms = {}
    for m, c in f.terms.items():
        denom = 1
        for e in m:
            denom *= factorial(e)
        terms[m] = _coerce(c / denom)
    return Form._raw(f.variables, terms, f.degree)


def partials(f: Form) -> list[Form]:
    return [f.derivative(i) for i in range(f.nvars)]


def evaluate(f: Form, point):
    point = [_coerce(p) for p in point]
    if len(point) != f.nvars:
        raise ArityMismatch(f"point has {len(point)} coordinates, form has {f.nvars} variables")
    powers = [dict() for _ in point]
    total = Fraction(0)
    for m, c in f.terms.items():
        term = c
        for i, e in enumerate(m):
            if e:
                cache = powers[i]
                if e not in cache:
                    cache[e] = point[i] ** e
                term = term * cache[e]
        total = total + term
    return _coerce(total)


# -- substitution -------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """Quotient num/den of two forms in the same variables."""

    num: Form
    den: Form

    def __post_init__(self):
        if not self.den:
            raise ZeroDivisionError("rational function with zero denominator")
        if self.num.variables != self.den.variables:
            raise VariableMismatch("numerator and denominator use different variables")

    @property
    def variables(self):
        return self.num.variables

    @property
    def degree(self) -> int:
        return self.num.degree - self.den.degree

    def __str__(self):
        return f"({self.num}) / ({self.den})"


def divide_exact(num: Form, den: Form) -> Form:
    """Exact quotient num/den; raises NonPolynomialResult if den does not divide num."""
    num._check_same(den)
    if not den.terms:
        raise ZeroDivisionError("division by the zero form")
    if not num.terms:
        return Form.zero(num.variables, max(num.degree - den.degree, 0))
    lead_m, lead_c = den.leading_term()
    remainder = dict(num.terms)
    quotient = {}
    qdeg = num.degree - den.degree
    while remainder:
        m = max(remainder)
        if any(a < b for a, b in zip(m, lead_m)):
            raise NonPolynomialResult(f"({num}) is not divisible by ({den})")
        qm = tuple(a - b for a, b in zip(m, lead_m))
        qc = _coerce(remainder[m] / lead_c)
        quotient[qm] = qc
        for dm, dc in den.terms.items():
            mm = tuple(a + b for a, b in zip(qm, dm))
            new = remainder.get(mm, 0) - qc * dc
            if new:
                remainder[mm] = _coerce(new)
            else:
                remainder.pop(mm, None)
    return Form._raw(num.variables, quotient, qdeg)


def substitute(f: Form, images) -> Form:
    """Replace x_i by images[i] (forms or rational functions).

    All images must share one variable list and one degree e (zero images are
    allowed); the result has degree e*deg f.  Rational images are accepted
    only if the denominators cancel in the result.
    """
    images = list(images)
    if len(images) != f.nvars:
        raise ArityMismatch(f"{len(images)} images for {f.nvars} variables")
    if not images:
        return f
    variables = images[0].variables
    for im in images:
        if tuple(im.variables) != tuple(variables):
            raise VariableMismatch("images use different variable lists")
    nonzero = [im for im in images if (im.num if isinstance(im, RationalFunction) else im)]
    degrees = {im.degree for im in nonzero}
    if len(degrees) > 1:
        raise NotHomogeneous(*sorted(degrees)[:2])
    e = degrees.pop() if degrees else 0
    one = Form.constant(variables, 1)
    # common denominator: product of the distinct non-constant denominators
    dens: list[Form] = []
    for im in images:
        if isinstance(im, RationalFunction) and im.den.degree > 0 and im.den not in dens:
            dens.append(im.den)
    common = one
    for den in dens:
        common = common * den
    numerators = []
    for im in images:
        if isinstance(im, RationalFunction):
            if im.den.degree == 0:
                num = im.num.scale(1 / im.den.terms[(0,) * len(variables)]) * common
            else:
                num = im.num
                for den in dens:
                    if den != im.den:
                        num = num * den
        else:
            num = im * common
        numerators.append(num)
    total = Form.zero(variables, f.degree * (e + common.degree))
    power_cache: dict = {}
    for m, c in f.terms.items():
        term = Form.constant(variables, c)
        for i, a in enumerate(m):
            if a:
                key = (i, a)
                if key not in power_cache:
                    power_cache[key] = numerators[i] ** a
                term = term * power_cache[key]
        total = total + term
    if dens:
        for _ in range(f.degree):
            total = divide_exact(total, common)
    if not total.terms:
        return Form.zero(variables, f.degree * e)
    return total


# -- parsing and printing ---------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*'*)|(?P<op>[-+*^]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:].strip()[:1]!r} at position {pos}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def parse_form(text: str, variables, cls=Form) -> Form:
    """Parse ``[+|-] term (+|- term)*`` where a term is
    ``coef``, ``coef*v^e*...`` or ``v^e*...`` and coef is ``p`` or ``p/q``.
    """
    variables = tuple(variables)
    index = {v: i for i, v in enumerate(variables)}
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty input")
    pos = 0
    terms: dict = {}
    degrees_seen = {}

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    first = True
    while pos < len(tokens):
        sign = 1
        kind, value, where = peek()
        if kind == "op" and value in "+-":
            sign = -1 if value == "-" else 1
            pos += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' at position {where}")
        first = False
        coef = Fraction(sign)
        mono = [0] * len(variables)
        expect_factor = True
        saw_factor = False
        while expect_factor:
            kind, value, where = peek()
            if kind == "num":
                pos += 1
                try:
                    coef *= Fraction(value)
                except ZeroDivisionError as exc:
                    raise ParseError(f"zero denominator at position {where}") from exc
            elif kind == "name":
                if value not in index:
                    raise ParseError(f"unknown variable {value!r} at position {where}")
                pos += 1
                exponent = 1
                nk, nv, nw = peek()
                if nk == "op" and nv == "^":
                    pos += 1
                    ek, ev, ew = peek()
                    if ek != "num" or "/" in ev:
                        raise ParseError(f"expected integer exponent at position {ew}")
                    exponent = int(ev)
                    pos += 1
                mono[index[value]] += exponent
            else:
                raise ParseError(f"expected a coefficient or variable at position {where}")
            saw_factor = True
            nk, nv, nw = peek()
            if nk == "op" and nv == "*":
                pos += 1
                expect_factor = True
            else:
                expect_factor = False
        if not saw_factor:
            raise ParseError("empty term")
        mono = tuple(mono)
        d = sum(mono)
        if coef:
            degrees_seen.setdefault(d, mono)
        terms[mono] = terms.get(mono, 0) + coef
    terms = {m: c for m, c in terms.items() if c}
    if len(degrees_seen) > 1:
        a, b = sorted(degrees_seen)[:2]
        raise NotHomogeneous(a, b)
    return cls(variables, terms)


def parse_operator(text: str, names) -> OperatorPoly:
    return parse_form(text, names, cls=OperatorPoly)


def _format_scalar(c) -> str:
    if isinstance(c, GaussianRational):
        return f"({c})"
    return str(c)


def format_form(f: Form) -> str:
    """Deterministic text in the parser's grammar (descending lex order)."""
    if not f.terms:
        return "0"
    pieces = []
    for m, c in f.sorted_terms():
        factors = []
        for name, e in zip(f.variables, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        negative = not isinstance(c, GaussianRational) and c < 0
        mag = -c if negative else c
        if factors:
            body = "*".join(factors)
            if mag != 1:
                body = f"{_format_scalar(mag)}*{body}"
        else:
            body = _format_scalar(mag)
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(pieces)
