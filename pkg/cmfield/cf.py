''' Generalized continued fractions a0 + K_{i>=1} b_i / a_i

    Convergents follow the indexing p_0 = 1, q_0 = 0, p_1 = a0, q_1 = 1 and
    p_{n+1} = a_n p_n + b_n p_{n-1}, so that p_n / q_n = a0 + K_1^{n-1} and
    (p_n; q_n) = U_{a0} M_1 ... M_{n-1} e_2 with M_i = (0 b_i; 1 a_i).
'''
import json
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import mpmath
import numpy as np
import pandas as pd

from cmfield.exact import (BiPoly, ContractViolation, Mat2, Vec2, rational, normalize,
                           log_abs, int_log, product)

logger = logging.getLogger(__name__)

SUPPORTS = "supports-irrationality"
INCONCLUSIVE = "inconclusive"
NO_SUPPORT = "no-support"


class DivisionByZeroInRecurrence(Exception):
    pass


class Sentinel(str, Enum):
    INF = "INF"
    UNDET = "UNDET"
    UNDEF = "UNDEF"


def format_delta(delta, places=6):
    if isinstance(delta, Sentinel):
        return delta.value
    return "%.*f" % (places, delta)


class PolyTerms():
    ''' k -> poly(k) for a polynomial in x '''

    def __init__(self, poly):
        if not poly.in_x_only():
            raise ContractViolation("term polynomial %s must be univariate in x" % poly)
        self.poly = poly

    def __call__(self, k):
        return self.poly.eval(k, 0)

    def __repr__(self):
        return str(self.poly)


class ListTerms():
    ''' k -> values[k-1] for an explicit finite list '''

    def __init__(self, values):
        self.values = tuple(rational(v) for v in values)

    def __call__(self, k):
        if not 1 <= k <= len(self.values):
            raise ContractViolation("term list of length %d has no index %d" % (len(self.values), k))
        return self.values[k - 1]

    def __repr__(self):
        return "ListTerms(%d)" % len(self.values)


@dataclass(frozen=True)
class CFSpec():
    a_terms: object
    b_terms: object
    a0: object = 0

    @classmethod
    def from_polys(cls, a, b, a0=0):
        return cls(PolyTerms(BiPoly.coerce(a)), PolyTerms(BiPoly.coerce(b)), rational(a0))

    @classmethod
    def from_lists(cls, a, b, a0=0):
        return cls(ListTerms(a), ListTerms(b), rational(a0))

    @classmethod
    def from_json(cls, text):
        ''' {"a_poly": ..., "b_poly": ..., "a0": ..., "depth": ...} -> (spec, depth) '''
        doc = json.loads(text)
        names = {"n": "x", "x": "x"}
        a = BiPoly.parse(str(doc["a_poly"]), names)
        b = BiPoly.parse(str(doc["b_poly"]), names)
        return cls.from_polys(a, b, doc.get("a0", 0)), int(doc.get("depth", 20))

    def a(self, k):
        return self.a_terms(k)

    def b(self, k):
        return self.b_terms(k)

    def companion(self, k):
        return Mat2.companion(self.b(k), self.a(k))


@dataclass(frozen=True)
class Convergent():
    n: int
    p: object
    q: object

    @property
    def value(self):
        if self.q == 0:
            raise DivisionByZeroInRecurrence("q_%d = 0" % self.n)
        return normalize(Fraction(self.p, self.q))


def convergent_stream(cf, n_max):
    ''' yields Convergent(n, p_n, q_n) for n = 0..n_max '''
    if n_max < 1:
        raise ContractViolation("n_max must be at least 1")
    p_prev, q_prev = 1, 0
    p, q = cf.a0, 1
    yield Convergent(0, p_prev, q_prev)
    yield Convergent(1, p, q)
    for n in range(1, n_max):
        a, b = cf.a(n), cf.b(n)
        p_prev, p = p, normalize(a * p + b * p_prev)
        q_prev, q = q, normalize(a * q + b * q_prev)
        yield Convergent(n + 1, p, q)


def matrix_convergent(cf, n):
    ''' (p_n; q_n) from the matrix product, used to cross-check the recurrence '''
    if n == 0:
        return Vec2(1, 0)
    M = product((cf.companion(i) for i in range(1, n)), start=Mat2.U(cf.a0))
    return M @ Vec2(0, 1)


def cf_value(cf, depth):
    ''' a0 + K_1^depth b_i / a_i '''
    last = None
    for last in convergent_stream(cf, depth + 1):
        pass
    return last.value


@dataclass(frozen=True)
class ErrorBound():
    value: Fraction
    rigorous: bool
    terms: int


def error_bound(cf, n, horizon, ratio_cap=0.9):
    ''' bound on |L - p_n/q_n| from sum_{k=n}^{horizon} prod_1^k |b_i| / |q_k q_{k+1}|

        A geometric tail is added when the last two summand ratios are below
        ratio_cap; only then is the bound flagged rigorous.
    '''
    if n < 1 or horizon < n:
        raise ContractViolation("need 1 <= n <= horizon, got n=%d horizon=%d" % (n, horizon))
    qs = [c.q for c in convergent_stream(cf, horizon + 1)]
    b_prod = 1
    summands = []
    for k in range(1, horizon + 1):
        b_prod = b_prod * abs(cf.b(k))
        if k < n:
            continue
        if qs[k] == 0 or qs[k + 1] == 0:
            raise DivisionByZeroInRecurrence("q_%d = 0 inside the bound range" % (k if qs[k] == 0 else k + 1))
        summands.append(Fraction(b_prod, abs(qs[k] * qs[k + 1])))
    total = sum(summands, Fraction(0))
    rigorous = False
    if len(summands) >= 3 and summands[-2] and summands[-3]:
        r1 = summands[-2] / summands[-3]
        r2 = summands[-1] / summands[-2]
        r = max(r1, r2)
        if r < Fraction(ratio_cap):
            total += summands[-1] * r / (1 - r)
            rigorous = True
        elif r >= 1:
            logger.warning("summands stop decreasing near k=%d, the continued fraction may diverge", horizon)
    return ErrorBound(normalize(total), rigorous, len(summands))


@dataclass(frozen=True)
class EulerSpec():
    ''' b(x) = -h1(x) h2(x), a(x) f(x) = f(x-1) h1(x) + f(x+1) h2(x+1) '''
    h1: BiPoly
    h2: BiPoly
    f: BiPoly = field(default_factory=lambda: BiPoly.const(1))

    def to_cf(self):
        return CFSpec(EulerTerms(self, "a"), EulerTerms(self, "b"), 0)


class EulerTerms():

    def __init__(self, spec, kind):
        self.spec = spec
        self.kind = kind

    def __call__(self, k):
        h1, h2, f = self.spec.h1, self.spec.h2, self.spec.f
        if self.kind == "b":
            return normalize(-h1.eval(k) * h2.eval(k))
        fk = f.eval(k)
        if fk == 0:
            raise DivisionByZeroInRecurrence("f(%d) = 0" % k)
        return normalize(Fraction(f.eval(k - 1) * h1.eval(k) + f.eval(k + 1) * h2.eval(k + 1)) / fk)


def euler_partial(spec, n):
    ''' closed form of K_1^n b(i)/a(i) for the Euler continued fraction of spec '''
    if n == 0:
        return 0
    f = [spec.f.eval(k) for k in range(n + 2)]
    if any(v == 0 for v in f):
        raise DivisionByZeroInRecurrence("f vanishes on 0..%d" % (n + 1))
    total = Fraction(0)
    ratio = Fraction(1)
    for k in range(n + 1):
        if k > 0:
            h2 = spec.h2.eval(k + 1)
            if h2 == 0:
                raise DivisionByZeroInRecurrence("h2(%d) = 0" % (k + 1))
            ratio *= Fraction(spec.h1.eval(k), h2)
        total += Fraction(f[0] * f[1], f[k] * f[k + 1]) * ratio
    if total == 0:
        raise DivisionByZeroInRecurrence("Euler partial sum vanishes")
    h2_1 = spec.h2.eval(1)
    C = Fraction(f[1] * h2_1, f[0])
    return normalize(C * (1 / total - 1))


def delta_measure(p, q, L):
    ''' -1 - ln|L - p/q| / ln|q| for the reduced fraction, or a Sentinel '''
    if q == 0:
        raise ContractViolation("q must be non-zero")
    frac = Fraction(p, q)
    err = abs(L.value - frac)
    if err == 0 and L.radius == 0:
        return Sentinel.INF
    if frac.denominator == 1:
        return Sentinel.UNDEF
    if err <= L.radius or L.radius * 2 ** 32 > err:
        return Sentinel.UNDET
    return -1.0 - log_abs(err) / int_log(frac.denominator)


@dataclass
class IrrationalityReport():
    log_ratios: list
    decay_factor: float
    eventually_constant: bool
    resolved: bool
    verdict: str

    def to_dict(self):
        return {"verdict": self.verdict, "decay_factor": self.decay_factor,
                "eventually_constant": self.eventually_constant, "resolved": self.resolved}


def irrationality_check(records, L):
    ''' trend of |q_n L - p_n| / gcd(p_n, q_n) along a sequence of (p, q) '''
    records = [(int(p), int(q)) for p, q in records]
    if len(records) < 3:
        raise ContractViolation("irrationality_check needs at least 3 records")
    bits = 4 * max(abs(q).bit_length() for _, q in records)
    L = L.refine(bits)
    values = [Fraction(p, q) for p, q in records]
    eventually_constant = values[-1] == values[-2] == values[-3]
    log_ratios, resolved = [], True
    for p, q in records:
        residual = abs(q * L.value - p)
        if residual == 0 or residual <= abs(q) * L.radius * 256:
            resolved = False
            break
        log_ratios.append(log_abs(residual) - int_log(math.gcd(p, q)))
    if not resolved or eventually_constant:
        return IrrationalityReport(log_ratios, float("nan"), eventually_constant, resolved, INCONCLUSIVE)
    slope = np.polyfit(np.arange(len(log_ratios), dtype=float), np.array(log_ratios), 1)[0]
    decay = math.exp(slope)
    verdict = SUPPORTS if decay < 0.99 and log_ratios[-1] < log_ratios[0] else INCONCLUSIVE
    return IrrationalityReport(log_ratios, decay, eventually_constant, resolved, verdict)


def convergent_table(cf, depth, L=None, digits=30):
    rows = []
    for c in convergent_stream(cf, depth):
        if c.n == 0:
            continue
        if c.q == 0:
            rows.append([c.n, c.p, c.q, None, None, "INF", Sentinel.UNDEF.value])
            continue
        value = Fraction(c.p, c.q)
        with mpmath.workdps(digits + 5):
            decimal = mpmath.nstr(mpmath.mpf(value.numerator) / value.denominator, digits)
        delta = format_delta(delta_measure(c.p, c.q, L)) if L is not None else ""
        rows.append([c.n, c.p, c.q, value.numerator, value.denominator, decimal, delta])
    return pd.DataFrame(rows, columns=["n", "p", "q", "p_reduced", "q_reduced", "value_decimal", "delta"])
