''' Reference constants carried as exact rationals with a certified error radius '''
import hashlib
import logging
from dataclasses import dataclass, replace
from decimal import Decimal, InvalidOperation
from fractions import Fraction

import mpmath

from cmfield.config import config
from cmfield.exact import ContractViolation, Mat2, INF, mobius_apply

logger = logging.getLogger(__name__)


class UnknownConstantError(Exception):
    pass


def binary_split(a, b, term):
    ''' P, Q, B, T for sum_{k=a}^{b-1} A(k)/B(k) * prod_{j=a}^{k} p(j)/q(j)

        term(k) returns (A(k), B(k), p(k), q(k)); the partial sum is T / (B Q).
    '''
    if b - a == 1:
        A, Bk, p, q = term(a)
        return p, q, Bk, A * p
    m = (a + b) // 2
    P1, Q1, B1, T1 = binary_split(a, m, term)
    P2, Q2, B2, T2 = binary_split(m, b, term)
    return P1 * P2, Q1 * Q2, B1 * B2, B2 * Q2 * T1 + B1 * P1 * T2


def _series(a, b, term):
    _, Q, B, T = binary_split(a, b, term)
    return Fraction(T, B * Q)


def _zeta3(bits):
    # 5/2 sum (-1)^(k+1) / (k^3 binom(2k, k)), terms shrink like 4^-k
    K = bits // 2 + 8
    value = _series(1, K + 1, lambda k: (-5, 2 * k ** 3, -k, 2 * (2 * k - 1)))
    tail = Fraction(5, (K + 1) ** 2 * 4 ** (K + 1))
    return value, tail


def _e(bits):
    K = 8
    while Fraction(2, _factorial(K + 1)) > Fraction(1, 2 ** (bits + 2)):
        K *= 2
    value = 1 + _series(1, K + 1, lambda k: (1, 1, 1, k))
    return value, Fraction(2, _factorial(K + 1))


def _ln2(bits):
    K = bits + 8
    value = _series(1, K + 1, lambda k: (1, k, 1, 2))
    return value, Fraction(1, (K + 1) * 2 ** K)


def _atan_inv(x, bits):
    ''' atan(1/x) with the alternating tail bound '''
    K = 1
    while Fraction(1, (2 * K + 1) * x ** (2 * K + 1)) > Fraction(1, 2 ** (bits + 6)):
        K *= 2
    value = _series(0, K, lambda k: (1, 2 * k + 1, 1 if k == 0 else -1, x if k == 0 else x * x))
    return value, Fraction(1, (2 * K + 1) * x ** (2 * K + 1))


def _pi(bits):
    a, ta = _atan_inv(5, bits + 6)
    b, tb = _atan_inv(239, bits + 6)
    return 16 * a - 4 * b, 16 * ta + 4 * tb


def _factorial(n):
    result = 1
    for k in range(2, n + 1):
        result *= k
    return result


@dataclass(frozen=True)
class HighPrecisionConstant():
    ''' the interval [value - radius, value + radius] known to contain the constant '''
    name: str
    value: Fraction
    radius: Fraction
    source: str
    bits: int = 0

    @classmethod
    def exact(cls, name, value):
        return cls(name, Fraction(value), Fraction(0), "exact")

    @classmethod
    def from_decimal(cls, name, text):
        ''' a user decimal is trusted to half a unit of its last digit '''
        try:
            dec = Decimal(text.strip())
        except InvalidOperation:
            raise ContractViolation("not a decimal constant: %r" % text)
        if not dec.is_finite():
            raise ContractViolation("not a finite decimal constant: %r" % text)
        exponent = dec.as_tuple().exponent
        radius = Fraction(1, 2) * Fraction(10) ** exponent
        return cls(name, Fraction(dec), radius, "decimal")

    @classmethod
    def builtin(cls, name, bits=None):
        if name not in BUILTINS:
            raise UnknownConstantError("unknown constant %r, choose from %s" % (name, ", ".join(sorted(BUILTINS))))
        bits = bits or config['CONST_BITS']
        return BUILTINS[name](bits)

    @classmethod
    def resolve(cls, spec, bits=None):
        ''' builtin name, "a/b" rational, or decimal string '''
        if spec in BUILTINS:
            return cls.builtin(spec, bits)
        if "/" in spec:
            return cls.exact(spec, Fraction(spec))
        return cls.from_decimal(spec, spec)

    @property
    def is_exact(self):
        return self.radius == 0

    @property
    def lower(self):
        return self.value - self.radius

    @property
    def upper(self):
        return self.value + self.radius

    def refine(self, bits):
        if self.source != "builtin":
            if self.radius:
                logger.info("constant %s cannot be refined beyond its given digits", self.name)
            return self
        if bits <= self.bits:
            return self
        return HighPrecisionConstant.builtin(self.name, bits)

    def mobius(self, M, name=None):
        ''' image of the interval under a Mobius map with rational entries '''
        a, b, c, d = M.entries()
        if c != 0:
            pole = Fraction(-d, c)
            if self.lower <= pole <= self.upper:
                raise ContractViolation("Mobius pole %s inside the interval of %s" % (pole, self.name))
        centre = mobius_apply(M, self.value)
        if centre is INF:
            raise ContractViolation("Mobius image of %s is infinite" % self.name)
        ends = [mobius_apply(M, self.lower), mobius_apply(M, self.upper)]
        radius = max(abs(Fraction(e) - centre) for e in ends)
        return replace(self, name=name or self.name, value=Fraction(centre), radius=Fraction(radius))

    def shifted(self, delta, name=None):
        return self.mobius(Mat2.U(delta), name)

    def to_mpf(self, dps=50):
        with mpmath.workdps(dps):
            return mpmath.mpf(self.value.numerator) / self.value.denominator

    def digest(self):
        text = "{}/{}~{}/{}".format(self.value.numerator, self.value.denominator,
                                    self.radius.numerator, self.radius.denominator)
        return hashlib.sha256(text.encode()).hexdigest()

    def metadata(self):
        return {"name": self.name,
                "source": self.source,
                "bits": self.bits,
                "digest": self.digest(),
                "radius_log2": None if self.radius == 0 else
                float(mpmath.log(mpmath.mpf(self.radius.numerator) / self.radius.denominator, 2))}


def _rounded(name, bits, computed):
    value, tail = computed
    scale = 2 ** bits
    rounded = Fraction(round(value * scale), scale)
    return HighPrecisionConstant(name, rounded, tail + Fraction(1, scale), "builtin", bits)


def _derived(base, name, M):
    def make(bits):
        return replace(BUILTINS[base](bits).mobius(M, name), source="builtin")
    return make


def _pi2_12(bits):
    pi = BUILTINS["pi"](bits + 4)
    value = pi.value ** 2 / 12
    radius = (2 * abs(pi.value) * pi.radius + pi.radius ** 2) / 12
    return HighPrecisionConstant("pi^2/12", value, radius, "builtin", bits)


BUILTINS = {
    "zeta3": lambda bits: _rounded("zeta3", bits, _zeta3(bits)),
    "e": lambda bits: _rounded("e", bits, _e(bits)),
    "ln2": lambda bits: _rounded("ln2", bits, _ln2(bits)),
    "pi": lambda bits: _rounded("pi", bits, _pi(bits)),
}
BUILTINS["pi^2/12"] = _pi2_12
BUILTINS["zeta3-1"] = _derived("zeta3", "zeta3-1", Mat2.U(-1))
BUILTINS["e-1"] = _derived("e", "e-1", Mat2.U(-1))
# continued-fraction normalizations of the ln 2 and e rows
BUILTINS["(1-ln2)/ln2"] = _derived("ln2", "(1-ln2)/ln2", Mat2(-1, 1, 1, 0))
BUILTINS["1/(e-1)"] = _derived("e", "1/(e-1)", Mat2(0, 1, 1, -1))
