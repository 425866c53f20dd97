#!/bin/env python
''' Lattice-wide convergents of a conjugate-pair matrix field

    Everything here runs on the twisted form
        MX(x,y) = (0 1; bX(x+1) a(x,y)),   MY(x,y) = (fbar 1; bX(x) f)
    with P, Q at (n, m) given by MY(0,1) ... MY(0,m-1) MX(0,m) ... MX(n-1,m) e2.
    The row part v_n(m) = (p_n(m); q_n(m)) obeys v_0 = (0,1), v_1 = (1, a(0,m)) and
    v_{n+1} = a(n,m) v_n + bX(n) v_{n-1}.
'''
import logging
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import mpmath
import numpy as np
import pandas as pd

from cmfield.cf import delta_measure, format_delta
from cmfield.exact import (BiPoly, Mat2, Vec2, ContractViolation, SingularMatrixError, factorial,
                           lcm_upto, normalize, is_integral)
from cmfield.field import ConjugatePair, twisted_field, dual, validate_pair

logger = logging.getLogger(__name__)

Y = BiPoly.y()

BOUNDED = "bounded"
POWER_GROWTH = "power_growth"
NEEDS_ANALYSIS = "needs_analysis"


class InapplicableError(Exception):
    pass


@dataclass(frozen=True)
class ConvergentRecord():
    n: int
    m: int
    P: object
    Q: object
    p_red: object
    q_red: object
    g: object
    delta: object = None

    def as_row(self):
        delta = "" if self.delta is None else format_delta(self.delta)
        return [self.n, self.m, self.P, self.Q, self.p_red, self.q_red, self.g, delta]


def make_record(n, m, P, Q, L=None):
    if Q == 0:
        return ConvergentRecord(n, m, P, Q, None, None, None)
    if is_integral(P) and is_integral(Q):
        P, Q = int(P), int(Q)
        g = math.gcd(P, Q)
    else:
        g = None
    reduced = Fraction(P, Q)
    delta = delta_measure(P, Q, L) if L is not None else None
    return ConvergentRecord(n, m, P, Q, reduced.numerator, reduced.denominator, g, delta)


def records_frame(records):
    return pd.DataFrame([r.as_row() for r in records],
                        columns=["n", "m", "P", "Q", "p_reduced", "q_reduced", "gcd", "delta"])


@dataclass(frozen=True)
class RowPolys():
    n: int
    p: BiPoly
    q: BiPoly
    hat_p: BiPoly = None
    hat_q: BiPoly = None


@dataclass
class AuditReport():
    N: int
    exponent: int
    checks: int = 0
    violations: list = dc_field(default_factory=list)
    all_m: dict = dc_field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def fail(self, kind, n, m, detail):
        self.violations.append({"kind": kind, "n": n, "m": m, "detail": detail})

    def to_dict(self):
        return {"N": self.N, "exponent": self.exponent, "checks": self.checks, "ok": self.ok,
                "violations": self.violations,
                "all_m": {str(k): v for k, v in sorted(self.all_m.items())}}


@dataclass(frozen=True)
class RatioClass():
    kind: str
    exponent: object = None
    partial_products: dict = dc_field(default_factory=dict)
    note: str = ""


def _aitken(values):
    x0, x1, x2 = values[-3:]
    denom = x2 - 2 * x1 + x0
    if denom == 0:
        return x2
    return x2 - (x2 - x1) ** 2 / denom


def _mpf(value):
    value = Fraction(value)
    return mpmath.mpf(value.numerator) / value.denominator


def _monic_coeffs(poly):
    ''' descending float coefficients of poly made monic, and its leading coefficient '''
    var, coeffs = poly.univariate_coeffs()
    lc = Fraction(coeffs[-1])
    return [float(Fraction(c) / lc) for c in reversed(coeffs)], lc


def product_ratio(F, Fbar, depth=10 ** 4):
    ''' growth of |prod_{k<=n} Fbar(k)/F(k)|

        Monic polynomials of the same degree give a bounded product when their
        subleading coefficients agree and n^(abar - a) growth otherwise.
    '''
    F, Fbar = BiPoly.coerce(F), BiPoly.coerce(Fbar)
    if F.is_zero() or Fbar.is_zero():
        raise ContractViolation("product_ratio needs non-zero polynomials")
    f_coeffs, f_lc = _monic_coeffs(F)
    g_coeffs, g_lc = _monic_coeffs(Fbar)
    ks = np.arange(1, depth + 1, dtype=float)
    with np.errstate(divide="ignore"):
        logs = (np.log(np.abs(np.polyval(g_coeffs, ks))) + math.log(abs(g_lc))
                - np.log(np.abs(np.polyval(f_coeffs, ks))) - math.log(abs(f_lc)))
    # skip the integer roots of either polynomial
    logs[~np.isfinite(logs)] = 0.0
    cumulative = np.cumsum(logs)
    samples = {}
    n = 10
    while n <= depth:
        samples[n] = float(np.exp(cumulative[n - 1]))
        n *= 10
    degree, degree_bar = len(f_coeffs) - 1, len(g_coeffs) - 1
    if degree != degree_bar or abs(f_lc) != abs(g_lc):
        note = "degrees %d/%d, leading coefficients %s/%s" % (degree_bar, degree, g_lc, f_lc)
        if degree_bar < degree or (degree_bar == degree and abs(g_lc) < abs(f_lc)):
            return RatioClass(NEEDS_ANALYSIS, float("-inf"), samples, "decays faster than any power, " + note)
        return RatioClass(NEEDS_ANALYSIS, float("inf"), samples, "grows faster than any power, " + note)
    if degree == 0:
        return RatioClass(BOUNDED, 0, samples)
    a = Fraction(F.univariate_coeffs()[1][-2]) / f_lc
    abar = Fraction(Fbar.univariate_coeffs()[1][-2]) / g_lc
    if a == abar:
        return RatioClass(BOUNDED, 0, samples)
    return RatioClass(POWER_GROWTH, normalize(abar - a), samples)


class Lattice():
    ''' Exact P(n,m), Q(n,m) over the first quadrant of a twisted matrix field

        Column prefixes MY(0,1)...MY(0,m-1) and the row vectors v_n(m) are cached,
        so filling an N x M grid costs one matrix-vector step per cell.
    '''

    def __init__(self, pair, name=None, limit=None, reduction_exponent=None):
        if not isinstance(pair, ConjugatePair):
            raise ContractViolation("Lattice expects a validated ConjugatePair")
        self.pair = pair
        self.name = name or "field"
        self.limit = limit
        self.reduction_exponent = reduction_exponent
        self._field = None
        self._dual = None
        self._columns = [Mat2.identity()]
        self._rows = {}
        self._bX = {}
        self.error_log = []

    @classmethod
    def from_definition(cls, definition):
        return cls(definition.pair(), definition.name, definition.limit, definition.reduction_exponent)

    @property
    def field(self):
        if self._field is None:
            self._field = twisted_field(self.pair)
        return self._field

    @field.setter
    def field(self, value):
        self._field = value

    @property
    def dual(self):
        if self._dual is None:
            self._dual = Lattice(dual(self.pair), name=self.name + "-dual")
        return self._dual

    @dual.setter
    def dual(self, value):
        self._dual = value

    def bX(self, k):
        if k not in self._bX:
            self._bX[k] = self.pair.bX.eval(k, 0)
        return self._bX[k]

    def a(self, k, m):
        return self.pair.a.eval(k, m)

    def column_prefix(self, m):
        ''' MY(0,1) ... MY(0,m-1) '''
        if m < 1:
            raise ContractViolation("column prefixes start at m = 1, got %d" % m)
        while len(self._columns) < m:
            k = len(self._columns)
            M = self.field.my(0, k)
            if M.det() == 0:
                raise SingularMatrixError("singular MY", (0, k))
            self._columns.append(self._columns[-1] @ M)
        return self._columns[m - 1]

    def _extend(self, m, n):
        rows = self._rows.setdefault(m, [Vec2(0, 1)])
        while len(rows) <= n:
            k = len(rows) - 1
            b = self.bX(k + 1)
            if b == 0:
                raise SingularMatrixError("singular MX", (k, m))
            a = self.a(k, m)
            if k == 0:
                rows.append(Vec2(1, a))
                continue
            prev, cur = rows[-2], rows[-1]
            b_k = self.bX(k)
            rows.append(Vec2(normalize(a * cur.top + b_k * prev.top),
                             normalize(a * cur.bottom + b_k * prev.bottom)))
        return rows

    def row(self, m, n):
        ''' [v_0(m), ..., v_n(m)] '''
        return self._extend(m, n)[:n + 1]

    def row_value(self, n, m):
        return self._extend(m, n)[n]

    def pq(self, n, m):
        return self.column_prefix(m) @ self.row_value(n, m)

    def record(self, n, m, L=None):
        P, Q = self.pq(n, m)
        return make_record(n, m, P, Q, L)

    def pq_table(self, N, M, L=None):
        ''' {(n, m): ConvergentRecord} for 0 <= n <= N, 1 <= m <= M '''
        if N < 0 or M < 1:
            raise ContractViolation("need N >= 0 and M >= 1")
        table = {}
        for m in range(1, M + 1):
            prefix = self.column_prefix(m)
            for n, v in enumerate(self.row(m, N)):
                P, Q = prefix @ v
                table[(n, m)] = make_record(n, m, P, Q, L)
        return table

    def row_polys(self, n, with_dual=True):
        ''' (p_n(y); q_n(y)) as polynomials in y, with the dual row when requested '''
        prev, cur = Vec2(BiPoly(), BiPoly.const(1)), None
        if n == 0:
            cur = prev
        for k in range(n):
            a = self.pair.a.partial(x=k)
            if k == 0:
                prev, cur = prev, Vec2(BiPoly.const(1), a)
                continue
            b = self.bX(k)
            prev, cur = cur, Vec2(cur.top * a + prev.top * b, cur.bottom * a + prev.bottom * b)
        hat_p = hat_q = None
        if with_dual:
            hat = self.dual.row_polys(n, with_dual=False)
            hat_p, hat_q = hat.p, hat.q
        return RowPolys(n, BiPoly.coerce(cur.top), BiPoly.coerce(cur.bottom), hat_p, hat_q)

    def _split_state(self):
        pair = self.pair
        return pair.split_offset == 0, pair.product.constant_term == 0

    def additive_form_check(self, n, m):
        ''' both product factorizations of (P;Q)(n, m+1) through row and dual-row values

            Part 1 (zero split offset):
                U^t_{fbar(0,0)} MX(0,1)...MX(n-1,1) U^t_{-fbar(n,0)} = prod_{i<=n} (-fbar(i,0) 1; 0 f(i,0))
            Part 2 (also (f fbar)(0,0) = 0):
                (P;Q)(n,m+1) = (prod fbar(0,k), p^_m(1); 0, prod f(0,k)) (p_n(m+1); q_n(m+1))
                             = U^t_{-fbar(0,0)} (prod -fbar(k,0), p_n(1); 0, prod f(k,0)) (p^_m(n+1); q^_m(n+1))
        '''
        zero_offset, zero_origin = self._split_state()
        result = {"n": n, "m": m, "applicable": zero_offset and zero_origin}
        if not zero_offset:
            result["reason"] = "split offset is %s, the factorization needs 0" % self.pair.split_offset
            return result
        f, fbar = self.pair.f, self.pair.fbar
        fbar00 = fbar.eval(0, 0)
        left = Mat2.U_tau(fbar00)
        for i in range(n):
            left = left @ self.field.mx(i, 1)
        left = left @ Mat2.U_tau(-fbar.eval(n, 0))
        right = Mat2.identity()
        for i in range(1, n + 1):
            right = right @ Mat2(-fbar.eval(i, 0), 1, 0, f.eval(i, 0))
        result["part1"] = left == right
        if not zero_origin:
            result["reason"] = "(f fbar)(0,0) = %s, part 2 needs 0" % self.pair.product.constant_term
            return result
        direct = self.pq(n, m + 1)
        hat_low = self.dual.row_value(m, 1)
        hat_high = self.dual.row_value(m, n + 1)
        row_high = self.row_value(n, m + 1)
        row_low = self.row_value(n, 1)
        col_fbar = math.prod(fbar.eval(0, k) for k in range(1, m + 1))
        col_f = math.prod(f.eval(0, k) for k in range(1, m + 1))
        first = Mat2(col_fbar, hat_low.top, 0, col_f) @ row_high
        row_fbar = math.prod(-fbar.eval(k, 0) for k in range(1, n + 1))
        row_f = math.prod(f.eval(k, 0) for k in range(1, n + 1))
        second = Mat2.U_tau(-fbar00) @ Mat2(row_fbar, row_low.top, 0, row_f) @ hat_high
        result["part2_columns"] = first == direct
        result["part2_rows"] = second == direct
        if fbar00 == 0:
            result["remark"] = (direct.bottom == hat_low.bottom * row_high.bottom
                                == row_low.bottom * hat_high.bottom)
        checks = [v for k, v in result.items() if k in ("part1", "part2_columns", "part2_rows", "remark")]
        result["ok"] = all(checks)
        if not result["ok"]:
            self.error_log.append("additive form fails at (%d, %d)" % (n, m))
        return result

    def vertical_step(self, n, m):
        ''' (p_n(m+1); q_n(m+1)) = MY(0,m)^-1 (p_{n-1} p_n; q_{n-1} q_n)(m) (bX(n); f(n,m)) '''
        if n == 0:
            return Vec2(0, 1)
        MY = self.field.my(0, m)
        if MY.det() == 0:
            raise InapplicableError("(f fbar)(0,%d) - bX(0) vanishes, MY(0,%d) is not invertible" % (m, m))
        rows = self.row(m, n)
        prev, cur = rows[n - 1], rows[n]
        step = Mat2(prev.top, cur.top, prev.bottom, cur.bottom) @ Vec2(self.bX(n), self.pair.f.eval(n, m))
        return MY.inverse() @ step

    def factorial_reduction_audit(self, N, exponent=None, window=None):
        ''' divisibility claims of the factorial reduction, reported per violation

            window(n) gives the heights m checked for row n, by default -n..n+1.
        '''
        c = exponent or self.reduction_exponent or max(self.pair.f.total_degree(), 1)
        window = window or (lambda n: range(-n, n + 2))
        report = AuditReport(N, c)
        deg_a = max(self.pair.a.deg_y(), 0)
        for n in range(N + 1):
            fact = factorial(n) ** c
            lcm = lcm_upto(n) ** c
            p_div = fact // lcm
            heights = list(window(n))
            for m in heights:
                v = self.row_value(n, m)
                report.checks += 2
                if not is_integral(v.bottom) or int(v.bottom) % fact:
                    report.fail("q_n(m) divisible by (n!)^c", n, m, str(v.bottom))
                if not is_integral(v.top) or int(v.top) % p_div:
                    report.fail("p_n(m) divisible by (n!/lcm)^c", n, m, str(v.top))
            report.checks += 1
            if self.row_value(n, 1).bottom != fact:
                report.fail("q_n(1) = (n!)^c", n, 1, str(self.row_value(n, 1).bottom))
            report.all_m[n] = len(heights) >= n * deg_a + 1
            diag = self.record(n, n + 1)
            report.checks += 1
            if diag.g is None or diag.g % (factorial(n) ** (2 * c) // lcm):
                report.fail("((n!)^2/lcm)^c divides gcd on the diagonal", n, n + 1, str(diag.g))
            for m in range(N + 1):
                if m == n:
                    continue
                rec = self.record(n, m + 1)
                qq = self.row_value(m, 1).bottom * self.row_value(n, 1).bottom
                report.checks += 2
                if qq == 0 or not is_integral(qq):
                    report.fail("q_m(1) q_n(1) is a non-zero integer", n, m + 1, str(qq))
                    continue
                if rec.g is None or rec.Q % qq:
                    report.fail("q_m(1) q_n(1) divides Q(n,m+1)", n, m + 1, str(rec.Q))
                lcm_nm = lcm_upto(max(m, n)) ** c
                if rec.g is None or (rec.g * lcm_nm) % qq:
                    report.fail("q_m(1) q_n(1)/lcm^c divides gcd(P,Q)", n, m + 1, str(rec.g))
        if not report.ok:
            logger.warning("factorial reduction audit of %s found %d violations", self.name, len(report.violations))
            self.error_log.extend("%(kind)s at n=%(n)d m=%(m)d" % v for v in report.violations)
        return report

    def line_limit(self, m, depth, dps=50):
        ''' limit estimate of P(n,m)/Q(n,m) along row m, with the hypothesis of the row theorem

            d = deg_y(f(y,x) + fbar(y,x+1)); the row limit is independent of m when
            |prod fbar(k,0)/f(k,0)| = o(n^d).
        '''
        if depth < 3:
            raise ContractViolation("line_limit needs depth >= 3")
        prefix = self.column_prefix(m)
        rows = self.row(m, depth)
        with mpmath.workdps(dps):
            twisted, raw = [], []
            for v in rows[-3:]:
                P, Q = prefix @ v
                twisted.append(_mpf(Fraction(P, Q)))
                raw.append(_mpf(Fraction(v.top, v.bottom)))
            estimate = _aitken(twisted)
            row_estimate = _aitken(raw)
            cf_estimate = 1 / estimate - _mpf(self.a(0, 1))
        f, fbar = self.pair.f, self.pair.fbar
        d = (f.swap() + fbar.swap().shift(1, 0)).deg_y()
        try:
            ratio = product_ratio(f.partial(y=0), fbar.partial(y=0))
        except ContractViolation as e:
            self.error_log.append(str(e))
            ratio = None
        if ratio is None:
            hypothesis = "unknown"
        elif ratio.kind == BOUNDED:
            hypothesis = "holds" if d > 0 else "fails"
        elif ratio.kind == POWER_GROWTH:
            hypothesis = "holds" if ratio.exponent < d else "fails"
        elif ratio.exponent == float("-inf"):
            hypothesis = "holds"
        else:
            hypothesis = "fails"
        if hypothesis != "holds":
            self.error_log.append("row theorem hypothesis %s for %s" % (hypothesis, self.name))
        return {"m": m, "depth": depth, "estimate": estimate, "cf_estimate": cf_estimate,
                "row_estimate": row_estimate, "d": d, "ratio": ratio, "hypothesis": hypothesis}

    def uniform_bound(self, n, m):
        ''' sum_{j<=n} prod_{k<j} |bX(k)| / |q_{j-1}(m) q_j(m)|, an upper bound for |p_n(m)/q_n(m)| '''
        rows = self.row(m, n)
        total, b_prod = Fraction(0), 1
        for j in range(1, n + 1):
            if j > 1:
                b_prod *= abs(self.bX(j - 1))
            denom = abs(rows[j - 1].bottom * rows[j].bottom)
            if denom == 0:
                return None
            total += Fraction(b_prod, 1) / denom
        return total

    def any_path_limit_probe(self, paths, L=None, dps=30):
        ''' P/Q along each path of lattice points, with the uniform bound at every point '''
        results = []
        for path in paths:
            path = list(path)
            values, bounds_ok = [], True
            for n, m in path:
                P, Q = self.pq(n, m)
                v = self.row_value(n, m)
                if Q == 0 or v.bottom == 0:
                    self.error_log.append("Q vanishes at (%d, %d)" % (n, m))
                    continue
                values.append(Fraction(P, Q))
                bound = self.uniform_bound(n, m)
                if bound is not None and abs(Fraction(v.top, v.bottom)) > bound:
                    bounds_ok = False
            with mpmath.workdps(dps):
                end = _mpf(values[-1]) if values else None
                error = abs(_mpf(L.value) - end) if (L is not None and end is not None) else None
            results.append({"start": path[0], "end": path[-1], "points": len(path),
                            "estimate": end, "error": error, "bound_ok": bounds_ok})
        return results


def diagonal_path(N, start=1):
    return [(n, n + 1) for n in range(start, N + 1)]


def row_path(m, N, start=1):
    return [(n, m) for n in range(start, N + 1)]


def column_path(n, M, start=1):
    return [(n, m) for m in range(start, M + 1)]


def lattice_for(pair_or_definition):
    if isinstance(pair_or_definition, Lattice):
        return pair_or_definition
    if isinstance(pair_or_definition, ConjugatePair):
        return Lattice(pair_or_definition)
    if hasattr(pair_or_definition, "pair"):
        return Lattice.from_definition(pair_or_definition)
    f, fbar = pair_or_definition
    return Lattice(validate_pair(f, fbar))
