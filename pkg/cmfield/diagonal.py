''' The diagonal (n, n+1) of a twisted field as a polynomial continued fraction

    One diagonal step is A(k) = MX(k-1,k) MY(k,k). After removing the polynomial
    gcd g(k) of its entries, A'(k) = (alpha beta; gamma delta) is conjugated by
    U(k) = (0 u; 1 t(k)) into the companion matrix (0 B(k); 1 F(k)), where
        u = beta (a non-zero constant), t = delta, F(k) = alpha(k) + t(k+1), B = -det A'.
    Then P(n,n+1)/Q(n,n+1) is U(1) applied to the n-th convergent of K B(k)/F(k).
'''
import functools
import json
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np
import sympy

from cmfield.cf import CFSpec, SUPPORTS, INCONCLUSIVE, NO_SUPPORT, convergent_stream
from cmfield.exact import (BiPoly, Mat2, Vec2, INF, ContractViolation, factorial, log_abs, int_log,
                           mobius_apply)
from cmfield.exact.poly import _X

logger = logging.getLogger(__name__)

X = BiPoly.x()


class UnsupportedFieldError(Exception):
    pass


class NonIntegralityError(Exception):
    pass


@dataclass(frozen=True)
class DiagonalPCF():
    A: Mat2
    g: BiPoly
    reduced: Mat2
    u: object
    t: BiPoly
    F: BiPoly
    B: BiPoly

    @property
    def prefix(self):
        return Mat2(0, self.u, 1, self.t.eval(1))

    @property
    def cf(self):
        return CFSpec.from_polys(self.F, self.B, 0)

    def conjugation(self):
        ''' U(k) M(k) and A'(k) U(k+1), equal as polynomial matrices '''
        U = Mat2(0, self.u, 1, self.t)
        M = Mat2(0, self.B, 1, self.F)
        return U @ M, self.reduced @ U.shift(1, 0)

    def values(self, N):
        ''' P(n,n+1)/Q(n,n+1) for n = 1..N through the prefix map '''
        out = []
        for c in convergent_stream(self.cf, N):
            if c.n == 0:
                continue
            out.append(mobius_apply(self.prefix, c.value if c.q else INF))
        return out


def _poly_gcd(entries):
    polys = [sympy.Poly(e.to_sympy(), _X, domain=sympy.QQ) for e in entries if not e.is_zero()]
    if not polys:
        raise UnsupportedFieldError("diagonal step matrix vanishes")
    g = functools.reduce(lambda a, b: a.gcd(b), polys)
    return g


def _divide(entry, g):
    if entry.is_zero():
        return entry
    quotient = sympy.Poly(entry.to_sympy(), _X, domain=sympy.QQ).exquo(g)
    return BiPoly.from_sympy(quotient.as_expr())


def diagonal_step(matrix_field):
    ''' A(k) = MX(k-1, k) MY(k, k) as a matrix of polynomials in k (stored as x) '''
    return matrix_field.MX.compose(X - 1, X) @ matrix_field.MY.compose(X, X)


def diagonal_pcf(lattice):
    A = diagonal_step(lattice.field)
    for e in A.entries():
        if not BiPoly.coerce(e).in_x_only():
            raise ContractViolation("diagonal step should depend on k only")
    entries = [BiPoly.coerce(e) for e in A.entries()]
    g = _poly_gcd(entries)
    reduced = Mat2(*[_divide(e, g) for e in entries])
    alpha, beta, gamma, delta = [BiPoly.coerce(e) for e in reduced.entries()]
    if beta.is_zero() or not beta.is_constant():
        raise UnsupportedFieldError("no conjugation (0 u; 1 t(k)) with constant u: beta(k) = %s" % beta)
    u = beta.constant_term
    t = delta
    pcf = DiagonalPCF(A, BiPoly.from_sympy(g.as_expr()), reduced, u, t,
                      alpha + t.shift(1, 0), -BiPoly.coerce(reduced.det()))
    left, right = pcf.conjugation()
    if left != right:
        raise UnsupportedFieldError("conjugation identity fails for %s" % lattice.name)
    logger.info("diagonal of %s: F(k) = %s, B(k) = %s", lattice.name, pcf.F, pcf.B)
    return pcf


def apery_form_matches(F):
    ''' F(k) = 17 (k^3 + (k+1)^3) - 12 (2k+1) '''
    return F == (X ** 3 + (X + 1) ** 3) * 17 - (X * 2 + 1) * 12


@dataclass
class GrowthEstimate():
    lambda_hat: float
    lambda_roots: tuple
    lambda_values: tuple
    n_used: int
    lambda_corrected: float = float("nan")
    power: float = float("nan")


def characteristic_roots(F, B):
    ''' roots of x^2 - LC(F) x - LC(B), meaningful when deg B = 2 deg F '''
    if B.deg_x() != 2 * F.deg_x():
        return None
    t, d = F.leading_coefficient(), B.leading_coefficient()
    z = sympy.Symbol("z")
    roots = sympy.Poly(z ** 2 - sympy.Rational(t) * z - sympy.Rational(d), z).all_roots()
    roots = sorted(roots, key=lambda r: float(sympy.re(r)), reverse=True)
    return tuple(str(sympy.nsimplify(r)) for r in roots), tuple(float(sympy.re(r)) for r in roots)


def power_corrected(v, terms=8):
    ''' fit log v_n = n log(lambda) + beta log(n) + c over the last terms, returns (lambda, beta)

        Plain ratios v_{n+1}/v_n carry the factor (1 + 1/n)^beta and approach lambda only like 1/n.
    '''
    points = [(n, v[n]) for n in range(max(1, len(v) - terms), len(v)) if v[n] > 0]
    if len(points) < 3:
        return float("nan"), float("nan")
    ns = np.array([n for n, _ in points], dtype=float)
    logs = np.array([int_log(int(value)) for _, value in points])
    design = np.column_stack([ns, np.log(ns), np.ones_like(ns)])
    coef = np.linalg.lstsq(design, logs, rcond=None)[0]
    return math.exp(coef[0]), float(coef[1])


@dataclass
class VSequence():
    v: list
    exponent: int
    growth: GrowthEstimate
    recurrence_ok: bool
    tenfold_from_3: bool


def diagonal_pq(lattice, N):
    ''' [(P(n,n+1), Q(n,n+1)) for n = 0..N] from the numeric diagonal steps '''
    A = diagonal_step(lattice.field)
    out = [Vec2(0, 1)]
    M = Mat2.identity()
    for k in range(1, N + 1):
        M = M @ A.evaluate(k, 0)
        out.append(M @ Vec2(0, 1))
    return out


def v_sequence(lattice, N, exponent=None, pcf=None):
    ''' v_n = Q(n,n+1)/(n!)^(2c), checked integral, with the diagonal recurrence re-verified '''
    c = exponent or lattice.reduction_exponent
    if not c:
        raise ContractViolation("v_sequence needs a reduction exponent for %s" % lattice.name)
    pcf = pcf or diagonal_pcf(lattice)
    pq = diagonal_pq(lattice, N + 1)
    v = []
    for n in range(N + 1):
        Q = pq[n].bottom
        div = factorial(n) ** (2 * c)
        if Fraction(Q) % div:
            raise NonIntegralityError("(%d!)^%d does not divide Q(%d,%d) = %s" % (n, 2 * c, n, n + 1, Q))
        v.append(int(Q) // div)
    # w_n = Q(n,n+1) / prod g(k) follows the continued fraction recurrence
    G, w = 1, []
    for n in range(N + 2):
        if n > 0:
            G *= pcf.g.eval(n)
        w.append(Fraction(pq[n].bottom) / G)
    recurrence_ok = all(w[n + 1] == pcf.F.eval(n) * w[n] + pcf.B.eval(n) * w[n - 1] for n in range(1, N + 1))
    if not recurrence_ok:
        logger.warning("diagonal recurrence fails for %s", lattice.name)
    ratios = [Fraction(v[n + 1], v[n]) for n in range(len(v) - 1) if v[n]]
    if len(ratios) >= 3:
        r0, r1, r2 = [float(r) for r in ratios[-3:]]
        denom = r2 - 2 * r1 + r0
        lam = r2 - (r2 - r1) ** 2 / denom if denom else r2
    else:
        lam = float(ratios[-1]) if ratios else float("nan")
    roots = characteristic_roots(pcf.F, pcf.B)
    corrected, power = power_corrected(v)
    growth = GrowthEstimate(lam, roots[0] if roots else None, roots[1] if roots else None, len(v) - 1,
                            corrected, power)
    tenfold = all(v[n + 1] >= 10 * v[n] for n in range(3, N))
    return VSequence(v, c, growth, recurrence_ok, tenfold)


@dataclass
class CertificateReport():
    name: str
    line: str
    N: int
    verdict: str
    error_rate: float
    gcd_rate: float
    lambda_hat: float
    decay: float
    reduction_exponent: int = None
    audit_ok: bool = None
    low_confidence: bool = False
    constant: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def e_c(self):
        return math.exp(self.reduction_exponent) if self.reduction_exponent else None

    def to_dict(self):
        return {"verdict": self.verdict,
                "error_rate": self.error_rate,
                "gcd_rate": self.gcd_rate,
                "lambda_hat": self.lambda_hat,
                "decay": self.decay,
                "line": self.line,
                "N": self.N,
                "reduction_exponent": self.reduction_exponent,
                "audit_ok": self.audit_ok,
                "low_confidence": self.low_confidence,
                "constant": self.constant,
                "notes": self.notes}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self):
        lines = ["field:        %s (%s line, N = %d)" % (self.name, self.line, self.N),
                 "constant:     %s" % self.constant.get("name", "?"),
                 "error rate:   |L - P/Q| ~ exp(%.4f n), lambda ~ %.4f" % (self.error_rate, self.lambda_hat),
                 "gcd rate:     gcd/(n!)^2c ~ exp(-%.4f n)" % math.log(self.gcd_rate) if self.gcd_rate > 0
                 else "gcd rate:     n/a",
                 "decay:        |QL - P|/gcd shrinks by %.4f per step" % self.decay]
        if self.e_c is not None:
            sign = "<" if self.e_c < self.lambda_hat else ">="
            lines.append("comparison:   e^%d = %.2f %s lambda = %.2f" % (self.reduction_exponent, self.e_c,
                                                                    sign, self.lambda_hat))
        if self.audit_ok is not None:
            lines.append("audit:        %s" % ("factorial reduction holds" if self.audit_ok else "violations found"))
        if self.low_confidence:
            lines.append("warning:      low confidence, fewer than 10 terms")
        lines.extend("note:         %s" % n for n in self.notes)
        lines.append("verdict:      %s" % self.verdict)
        return "\n".join(lines)


def _line_records(lattice, line, N):
    if line == "diagonal":
        pq = diagonal_pq(lattice, N)
        return [(n, pq[n].top, pq[n].bottom) for n in range(1, N + 1)]
    if line == "bottom":
        prefix = lattice.column_prefix(1)
        return [(n, *(prefix @ v)) for n, v in enumerate(lattice.row(1, N)) if n >= 1]
    raise ContractViolation("line must be 'diagonal' or 'bottom', got %r" % line)


def certificate(lattice, L, N, line="diagonal", reduction_exponent=None, audit_depth=20):
    ''' numerical evidence for the irrationality of L along a line of the lattice

        supports-irrationality needs |QL - P|/gcd(P,Q) to decay, e^c < lambda and
        a clean factorial reduction audit for the claimed exponent c.
    '''
    c = reduction_exponent or lattice.reduction_exponent
    records = _line_records(lattice, line, N)
    bits = 4 * max(abs(int(Q)).bit_length() for _, _, Q in records)
    L = L.refine(bits)
    notes = []
    if L.source == "decimal":
        notes.append("user constant trusted to half a unit of its last digit")
    ns, log_err, log_gcd, log_r = [], [], [], []
    for n, P, Q in records:
        P, Q = int(P), int(Q)
        if Q == 0:
            continue
        residual = abs(Q * L.value - P)
        if residual <= abs(Q) * L.radius:
            notes.append("n = %d not resolved by the constant's precision" % n)
            continue
        g = math.gcd(P, Q)
        ns.append(n)
        log_err.append(log_abs(residual) - int_log(abs(Q)))
        log_gcd.append(int_log(g) - 2 * (c or 1) * int_log(factorial(n)))
        log_r.append(log_abs(residual) - int_log(g))
    if len(ns) < 2:
        raise ContractViolation("not enough resolved terms on the %s line" % line)
    x = np.array(ns, dtype=float)
    error_rate = float(np.polyfit(x, np.array(log_err), 1)[0])
    gcd_rate = math.exp(-float(np.polyfit(x, np.array(log_gcd), 1)[0]))
    lambda_hat = math.exp(-error_rate / 2)
    start = max(1, ns[-1] // 4)
    i0 = next(i for i, n in enumerate(ns) if n >= start)
    if ns[-1] > ns[i0]:
        decay = math.exp((log_r[-1] - log_r[i0]) / (ns[-1] - ns[i0]))
    else:
        decay = float("nan")
    audit_ok = None
    if c:
        audit = lattice.factorial_reduction_audit(min(N, audit_depth), exponent=c)
        audit_ok = audit.ok
    if c and decay < 1 and math.exp(c) < lambda_hat and audit_ok:
        verdict = SUPPORTS
    elif L.is_exact and not decay < 1:
        verdict = NO_SUPPORT
    else:
        verdict = INCONCLUSIVE
    if not c:
        notes.append("no factorial reduction exponent claimed")
    report = CertificateReport(lattice.name, line, N, verdict, error_rate, gcd_rate, lambda_hat, decay,
                               c, audit_ok, N < 10, L.metadata(), notes)
    logger.info("certificate for %s: %s", lattice.name, verdict)
    return report


def diagonal_digits(pcf, N, dps=60):
    ''' decimal value of the prefixed diagonal convergent at depth N '''
    value = pcf.values(N)[-1]
    with mpmath.workdps(dps):
        return mpmath.mpf(value.numerator) / value.denominator
