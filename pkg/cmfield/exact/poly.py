''' Sparse bivariate polynomials over the rationals

    A BiPoly stores a map (i, j) -> coefficient for the monomials x^i y^j.
    Zero coefficients are never stored and integral coefficients are kept
    as python ints, so that evaluation at integers stays in big-int arithmetic.
'''
import re
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy.parsing.sympy_parser import parse_expr, standard_transformations, convert_xor
from sympy.polys.polyerrors import BasePolynomialError

from cmfield.exact.scalars import rational, normalize, ContractViolation

NEG_INF = float("-inf")

_X, _Y = sympy.symbols("x y")


class PolyParseError(Exception):

    def __init__(self, reason, line=1, column=1):
        super().__init__("line {}, column {}: {}".format(line, column, reason))
        self.reason = reason
        self.line = line
        self.column = column


class MixedMonomialError(Exception):

    def __init__(self, monomials):
        super().__init__("mixed monomials present: " + ", ".join(str(m) for m in monomials))
        self.monomials = monomials


class BiPoly():
    __slots__ = ('_terms', '_hash')

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ContractViolation("negative exponent in (%d, %d)" % (i, j))
                c = rational(c)
                if c != 0:
                    clean[(int(i), int(j))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms):
        ''' build from an accumulator, dropping zeros without re-validating keys '''
        poly = cls.__new__(cls)
        poly._terms = {k: normalize(c) for k, c in terms.items() if c != 0}
        poly._hash = None
        return poly

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, c, i, j):
        return cls({(i, j): c})

    @classmethod
    def univariate(cls, coeffs, var="x"):
        ''' coeffs[k] is the coefficient of var^k '''
        if var == "x":
            return cls({(k, 0): c for k, c in enumerate(coeffs)})
        return cls({(0, k): c for k, c in enumerate(coeffs)})

    @staticmethod
    def coerce(value):
        if isinstance(value, BiPoly):
            return value
        return BiPoly.const(value)

    # -- container protocol ------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(k == (0, 0) for k in self._terms)

    @property
    def constant_term(self):
        return self._terms.get((0, 0), 0)

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self._terms == other._terms
        if isinstance(other, str):
            return NotImplemented
        try:
            other = rational(other)
        except (TypeError, ValueError):
            return NotImplemented
        if other == 0:
            return not self._terms
        return self._terms == {(0, 0): other}

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term)
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- ring operations ---------------------------------------------------

    def _combine(self, other, sign):
        if not isinstance(other, BiPoly):
            try:
                other = BiPoly.const(other)
            except TypeError:
                return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + sign * c
        return BiPoly._wrap(acc)

    def __add__(self, other):
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self)._combine(other, 1)

    def __neg__(self):
        return BiPoly._wrap({k: -c for k, c in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            try:
                other = rational(other)
            except TypeError:
                return NotImplemented
            return BiPoly._wrap({k: c * other for k, c in self._terms.items()})
        acc = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                key = (i1 + i2, j1 + j2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return BiPoly._wrap(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, BiPoly):
            if not other.is_constant() or other.is_zero():
                raise ContractViolation("division by a non-constant polynomial")
            other = other.constant_term
        other = Fraction(rational(other))
        return BiPoly._wrap({k: c / other for k, c in self._terms.items()})

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ContractViolation("polynomial powers must be non-negative ints")
        result, base = BiPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- degrees -----------------------------------------------------------

    def deg_x(self):
        return max((i for i, _ in self._terms), default=NEG_INF)

    def deg_y(self):
        return max((j for _, j in self._terms), default=NEG_INF)

    def total_degree(self):
        return max((i + j for i, j in self._terms), default=NEG_INF)

    def in_x_only(self):
        return all(j == 0 for _, j in self._terms)

    def in_y_only(self):
        return all(i == 0 for i, _ in self._terms)

    def univariate_coeffs(self):
        ''' (variable, [c_0, ..., c_d]) of a polynomial in one variable '''
        if self.in_x_only():
            var, degree = "x", self.deg_x()
            pick = lambda k: self._terms.get((k, 0), 0)
        elif self.in_y_only():
            var, degree = "y", self.deg_y()
            pick = lambda k: self._terms.get((0, k), 0)
        else:
            raise ContractViolation("polynomial %s is not univariate" % self)
        if degree == NEG_INF:
            return var, []
        return var, [pick(k) for k in range(degree + 1)]

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))

    def leading_coefficient(self):
        if not self._terms:
            return 0
        return self.sorted_terms()[0][1]

    def content(self):
        ''' positive rational c such that self / c has coprime integer coefficients '''
        if not self._terms:
            return 0
        num, den = 0, 1
        for c in self._terms.values():
            c = Fraction(c)
            num = math.gcd(num, c.numerator)
            den = math.lcm(den, c.denominator)
        return normalize(Fraction(num, den))

    # -- evaluation and substitution -------------------------------------

    def eval(self, x, y=0):
        xs, ys = _powers(x), _powers(y)
        total = 0
        for (i, j), c in self._terms.items():
            total += c * xs(i) * ys(j)
        return normalize(total) if isinstance(total, Fraction) else total

    def __call__(self, x, y=0):
        if isinstance(x, BiPoly) or isinstance(y, BiPoly):
            return self.compose(BiPoly.coerce(x), BiPoly.coerce(y))
        return self.eval(x, y)

    def compose(self, X, Y):
        ''' substitute polynomials X, Y for x, y '''
        xs, ys = _powers(X, BiPoly.const(1)), _powers(Y, BiPoly.const(1))
        result = BiPoly()
        for (i, j), c in self._terms.items():
            result = result + xs(i) * ys(j) * c
        return result

    def shift(self, alpha, beta=0):
        ''' p(x + alpha, y + beta) '''
        if alpha == 0 and beta == 0:
            return self
        return self.compose(BiPoly.x() + alpha, BiPoly.y() + beta)

    def partial(self, x=None, y=None):
        ''' substitute a scalar for one variable, keeping the other symbolic '''
        acc = {}
        if x is not None:
            xs = _powers(x)
            for (i, j), c in self._terms.items():
                acc[(0, j)] = acc.get((0, j), 0) + c * xs(i)
        elif y is not None:
            ys = _powers(y)
            for (i, j), c in self._terms.items():
                acc[(i, 0)] = acc.get((i, 0), 0) + c * ys(j)
        else:
            return self
        return BiPoly._wrap(acc)

    def swap(self):
        ''' p(y, x) '''
        return BiPoly._wrap({(j, i): c for (i, j), c in self._terms.items()})

    def mixed_part(self):
        return BiPoly._wrap({(i, j): c for (i, j), c in self._terms.items() if i > 0 and j > 0})

    def monomials(self):
        return [BiPoly._wrap({k: c}) for k, c in self.sorted_terms()]

    # -- sympy bridge ----------------------------------------------------

    def to_sympy(self, x=_X, y=_Y):
        return sympy.Add(*[sympy.Rational(Fraction(c).numerator, Fraction(c).denominator) * x ** i * y ** j
                           for (i, j), c in self._terms.items()])

    @classmethod
    def from_sympy(cls, expr, x=_X, y=_Y):
        poly = sympy.Poly(expr, x, y, domain=sympy.QQ)
        return cls({monom: Fraction(int(c.p), int(c.q)) for monom, c in poly.terms()})

    # -- text ------------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        out = ""
        for idx, ((i, j), c) in enumerate(self.sorted_terms()):
            mono = "*".join(p for p in (_power_str("x", i), _power_str("y", j)) if p)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = "%s*%s" % (mag, mono)
            if idx == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self):
        return "BiPoly('%s')" % self

    @classmethod
    def parse(cls, text, variables=None):
        ''' parse a poly-string; variables maps accepted names onto "x" or "y" '''
        if variables is None:
            variables = {"x": "x", "y": "y"}
        _prescan(text, variables)
        local = {name: sympy.Symbol(target) for name, target in variables.items()}
        try:
            expr = parse_expr(text, local_dict=local,
                              transformations=standard_transformations + (convert_xor,))
            return cls.from_sympy(expr)
        except (BasePolynomialError, sympy.SympifyError, SyntaxError, TypeError, ValueError, ZeroDivisionError) as e:
            raise PolyParseError("not a polynomial ({})".format(type(e).__name__), 1, 1)


@dataclass(frozen=True)
class AdditiveSplit():
    bX: BiPoly
    bY: BiPoly
    offset: object = 0


def mixed_part(p):
    return p.mixed_part()


def split_additive(p, offset=0):
    ''' write p(x,y) = bX(x) + bY(y) with bX = p(x,0) - p(0,0) + offset '''
    mixed = p.mixed_part()
    if mixed:
        raise MixedMonomialError(mixed.monomials())
    offset = rational(offset)
    c0 = p.constant_term
    bX = p.partial(y=0) - c0 + offset
    bY = p.partial(x=0) - offset
    return AdditiveSplit(bX, bY, offset)


def _powers(base, one=1):
    cache = [one]

    def power(k):
        while len(cache) <= k:
            cache.append(cache[-1] * base)
        return cache[k]
    return power


def _power_str(var, k):
    if k == 0:
        return ""
    if k == 1:
        return var
    return "%s^%d" % (var, k)


_TOKEN = re.compile(r"(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^])|([()])|(\s+)")


def _position(text, pos):
    line = text.count("\n", 0, pos) + 1
    column = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, column


def _prescan(text, variables):
    ''' reject malformed input with the line/column of the first problem '''
    pos, prev, opened = 0, None, []

    def fail(reason, at):
        line, column = _position(text, at)
        raise PolyParseError(reason, line, column)

    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            fail("illegal character %r" % text[pos], pos)
        number, name, op, paren, space = match.groups()
        if space is None:
            operand_before = prev in ("num", "name", ")")
            if number or name or paren == "(":
                if operand_before:
                    fail("implicit multiplication is not allowed", pos)
                if name and name not in variables:
                    fail("unknown symbol %r" % name, pos)
                if paren == "(":
                    opened.append(pos)
                prev = "num" if number else ("name" if name else "(")
            elif paren == ")":
                if not opened:
                    fail("unbalanced ')'", pos)
                if not operand_before:
                    fail("expected an operand before ')'", pos)
                opened.pop()
                prev = ")"
            else:
                if not operand_before and op not in ("+", "-"):
                    fail("unexpected operator %r" % op, pos)
                prev = "op"
        pos = match.end()
    if opened:
        fail("unbalanced '('", opened[-1])
    if prev is None:
        fail("empty polynomial", 0)
    if prev in ("op", "("):
        fail("expression ends with an operator", len(text) - 1)
