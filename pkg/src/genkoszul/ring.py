"""Exact multivariate polynomials over the rationals.

A :class:`PolyRing` fixes the variable names and a monomial order.  A
:class:`Polynomial` stores its terms as a mapping from exponent tuples to
nonzero :class:`~fractions.Fraction` coefficients; the descending term list
is derived on demand.  Values are never mutated after construction.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

ORDERS = ("degrevlex", "lex")


class RingMismatch(ValueError):
    pass


class DoesNotDivide(ArithmeticError):
    pass


class NotAssociate(ArithmeticError):
    pass


def _lex_key(e: Exponent):
    return e


def _degrevlex_key(e: Exponent):
    return (sum(e), tuple(-a for a in reversed(e)))


class PolyRing:
    """Polynomial ring Q[variables] with a fixed monomial order."""

    def __init__(self, variables: Sequence[str], order: str = "degrevlex"):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct: %r" % (variables,))
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError("bad variable name %r" % v)
        if order not in ORDERS:
            raise ValueError("unknown term order %r" % order)
        self.variables = variables
        self.order = order
        self.nvars = len(variables)
        self.key = _lex_key if order == "lex" else _degrevlex_key
        self._zero_exp = (0,) * self.nvars

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.order))

    def __repr__(self):
        return "PolyRing(%r, %r)" % (list(self.variables), self.order)

    # constructors

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self._zero_exp: Fraction(1)})

    def const(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {self._zero_exp: c} if c else {})

    def gen(self, name_or_index) -> "Polynomial":
        i = self.variables.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> List["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Exponent, coeff: Scalar = 1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(a < 0 for a in exps):
            raise ValueError("bad exponent vector %r" % (exps,))
        c = Fraction(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def from_dict(self, terms: Dict[Exponent, Scalar]) -> "Polynomial":
        return Polynomial(self, {tuple(e): Fraction(c) for e, c in terms.items() if c})

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatch("polynomial from another ring")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def extend(self, name: str) -> "PolyRing":
        """Ring with one extra variable appended (same order type)."""
        return PolyRing(self.variables + (name,), self.order)

    def embed(self, p: "Polynomial", target: "PolyRing") -> "Polynomial":
        """Image of p in a ring whose variables start with ours."""
        pad = (0,) * (target.nvars - self.nvars)
        return Polynomial(target, {e + pad: c for e, c in p._terms.items()})

    def fresh_name(self, stem: str = "t") -> str:
        name = stem
        k = 0
        while name in self.variables:
            k += 1
            name = "%s%d" % (stem, k)
        return name


class Polynomial:
    """Immutable polynomial; terms map exponent tuples to nonzero rationals."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Exponent, Fraction]):
        self.ring = ring
        self._terms = terms
        self._hash = None

    # inspection

    @property
    def terms(self) -> List[Tuple[Fraction, Exponent]]:
        """(coefficient, exponents) pairs, strictly descending in the term order."""
        key = self.ring.key
        return [(self._terms[e], e) for e in sorted(self._terms, key=key, reverse=True)]

    def term_dict(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self.ring._zero_exp in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant: %s" % self)
        return self._terms.get(self.ring._zero_exp, Fraction(0))

    def leading_exponent(self) -> Exponent:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms, key=self.ring.key)

    def leading_coefficient(self) -> Fraction:
        return self._terms[self.leading_exponent()]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> Tuple[bool, Optional[int]]:
        """(True, d) if every term has total degree d; zero gives (True, None)."""
        if not self._terms:
            return True, None
        degs = {sum(e) for e in self._terms}
        if len(degs) == 1:
            return True, degs.pop()
        return False, None

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self * (1 / self.leading_coefficient())

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch("operands belong to different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self._terms)
        for e, c in other._terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return Polynomial(self.ring, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    del t[e]
        return Polynomial(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, exps: Exponent, coeff: Fraction) -> "Polynomial":
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(e, exps)): c * coeff
                                      for e, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.ring.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return "Polynomial(%r)" % str(self)

    def substitute(self, values: Dict[int, "Polynomial"]) -> "Polynomial":
        """Replace variable i by values[i] (ring homomorphism into the same ring)."""
        R = self.ring
        out = R.zero()
        for e, c in self._terms.items():
            term = R.const(c)
            rest = list(e)
            for i, v in values.items():
                if e[i]:
                    term = term * v ** e[i]
                    rest[i] = 0
            out = out + term * R.monomial(tuple(rest))
        return out


# ring-level operations with the names used throughout the package

def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exact_div(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return r with q*r == p; raise DoesNotDivide otherwise."""
    q = p._coerce(q)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    R = p.ring
    key = R.key
    lq = q.leading_exponent()
    lcq = q._terms[lq]
    rem = dict(p._terms)
    quot: Dict[Exponent, Fraction] = {}
    while rem:
        lr = max(rem, key=key)
        if not _divides(lq, lr):
            raise DoesNotDivide("%s does not divide %s" % (q, p))
        e = tuple(b - a for a, b in zip(lq, lr))
        c = rem[lr] / lcq
        quot[e] = c
        for qe, qc in q._terms.items():
            m = tuple(a + b for a, b in zip(qe, e))
            s = rem.get(m, 0) - qc * c
            if s:
                rem[m] = s
            else:
                del rem[m]
    return Polynomial(R, quot)


def divides(q: Polynomial, p: Polynomial) -> bool:
    try:
        exact_div(p, q)
    except DoesNotDivide:
        return False
    return True


def associate_power(p: Polynomial, f: Polynomial) -> Tuple[int, Fraction]:
    """Return (alpha, c) with p == c * f**alpha, c a nonzero rational.

    Raises NotAssociate when the cofactor left after dividing out f is not a
    constant.
    """
    if f.is_constant():
        raise ValueError("f must be nonconstant, got %s" % f)
    if p.is_zero():
        raise ValueError("p must be nonzero")
    alpha = 0
    rest = p
    while True:
        try:
            rest = exact_div(rest, f)
        except DoesNotDivide:
            break
        alpha += 1
    if not rest.is_constant():
        raise NotAssociate("%s is not a unit times a power of %s" % (p, f))
    return alpha, rest.constant_value()


def is_homogeneous(p: Polynomial) -> Tuple[bool, Optional[int]]:
    return p.is_homogeneous()


# text grammar

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^]))")


class ParseError(ValueError):
    pass


def _tokens(text: str) -> Iterator[Tuple[str, str]]:
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character at %d in %r" % (pos, text))
        pos = m.end()
        kind = m.lastgroup
        yield kind, m.group(kind)


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse e.g. ``3*x^2*y - 1/2*y + 7``."""
    if not isinstance(text, str):
        raise ParseError("polynomial must be given as a string, got %r" % (text,))
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty polynomial text")
    terms: Dict[Exponent, Fraction] = {}
    i = 0
    n = len(toks)
    first = True
    while i < n:
        sign = 1
        if toks[i] == ("op", "+") or toks[i] == ("op", "-"):
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError("expected + or - in %r" % text)
        first = False
        coeff = Fraction(sign)
        exps = [0] * ring.nvars
        expect_factor = True
        while i < n and expect_factor:
            kind, val = toks[i]
            if kind == "num":
                num, _, den = val.partition("/")
                if den and int(den) == 0:
                    raise ParseError("zero denominator in %r" % text)
                coeff *= Fraction(int(num), int(den) if den else 1)
                i += 1
            elif kind == "name":
                if val not in ring.variables:
                    raise ParseError("unknown variable %r in %r" % (val, text))
                k = 1
                i += 1
                if i < n and toks[i] == ("op", "^"):
                    if i + 1 >= n or toks[i + 1][0] != "num" or "/" in toks[i + 1][1]:
                        raise ParseError("bad exponent in %r" % text)
                    k = int(toks[i + 1][1])
                    i += 2
                exps[ring.variables.index(val)] += k
            else:
                raise ParseError("unexpected %r in %r" % (val, text))
            if i < n and toks[i] == ("op", "*"):
                i += 1
                if i >= n:
                    raise ParseError("dangling * in %r" % text)
            else:
                expect_factor = False
        if expect_factor:
            raise ParseError("missing term in %r" % text)
        e = tuple(exps)
        s = terms.get(e, 0) + coeff
        if s:
            terms[e] = s
        else:
            terms.pop(e, None)
    return Polynomial(ring, terms)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    names = p.ring.variables
    pieces = []
    for idx, (c, e) in enumerate(p.terms):
        mono = "*".join(v if k == 1 else "%s^%d" % (v, k) for v, k in zip(names, e) if k)
        a = abs(c)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = _format_coeff(a) + "*" + mono
        if idx == 0:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces)


def polys(ring: PolyRing, texts: Iterable[str]) -> List[Polynomial]:
    return [ring(t) for t in texts]
