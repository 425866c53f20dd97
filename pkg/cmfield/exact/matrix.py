from dataclasses import dataclass
from fractions import Fraction

from cmfield.exact.poly import BiPoly
from cmfield.exact.scalars import normalize, rational


class SingularMatrixError(Exception):

    def __init__(self, message, point=None):
        if point is not None:
            message = "{} at lattice point {}".format(message, point)
        super().__init__(message)
        self.point = point


class _Infinity():
    ''' the point at infinity of the projective line '''
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def _scalar(value):
    if isinstance(value, BiPoly):
        return value
    return normalize(value) if isinstance(value, Fraction) else value


@dataclass(frozen=True)
class Vec2():
    top: object
    bottom: object

    def __iter__(self):
        yield self.top
        yield self.bottom

    def ratio(self):
        return normalize(Fraction(self.top, self.bottom))


@dataclass(frozen=True)
class Mat2():
    ''' 2x2 matrix (a11 a12; a21 a22) over BiPoly or exact scalars '''
    a11: object
    a12: object
    a21: object
    a22: object

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def U(cls, alpha):
        return cls(1, alpha, 0, 1)

    @classmethod
    def D(cls, alpha):
        return cls(alpha, 0, 0, 1)

    @classmethod
    def tau(cls):
        return cls(0, 1, 1, 0)

    @classmethod
    def U_tau(cls, alpha):
        return cls(1, 0, alpha, 1)

    @classmethod
    def companion(cls, b, a):
        return cls(0, b, 1, a)

    def entries(self):
        return (self.a11, self.a12, self.a21, self.a22)

    def map(self, fn):
        return Mat2(*[fn(e) for e in self.entries()])

    def is_zero(self):
        return all(e == 0 for e in self.entries())

    def __matmul__(self, other):
        if isinstance(other, Vec2):
            return Vec2(_scalar(self.a11 * other.top + self.a12 * other.bottom),
                        _scalar(self.a21 * other.top + self.a22 * other.bottom))
        if not isinstance(other, Mat2):
            return NotImplemented
        return Mat2(_scalar(self.a11 * other.a11 + self.a12 * other.a21),
                    _scalar(self.a11 * other.a12 + self.a12 * other.a22),
                    _scalar(self.a21 * other.a11 + self.a22 * other.a21),
                    _scalar(self.a21 * other.a12 + self.a22 * other.a22))

    def __mul__(self, other):
        if isinstance(other, (Mat2, Vec2)):
            return self @ other
        return self.map(lambda e: _scalar(e * other))

    def __rmul__(self, other):
        return self.map(lambda e: _scalar(other * e))

    def __add__(self, other):
        return Mat2(*[_scalar(a + b) for a, b in zip(self.entries(), other.entries())])

    def __sub__(self, other):
        return Mat2(*[_scalar(a - b) for a, b in zip(self.entries(), other.entries())])

    def __neg__(self):
        return self.map(lambda e: -e)

    def __truediv__(self, scalar):
        if isinstance(scalar, BiPoly):
            return self.map(lambda e: BiPoly.coerce(e) / scalar)
        scalar = Fraction(rational(scalar))
        return self.map(lambda e: e / scalar if isinstance(e, BiPoly) else normalize(Fraction(e) / scalar))

    def __pow__(self, k):
        result, base = Mat2.identity(), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def det(self):
        return _scalar(self.a11 * self.a22 - self.a12 * self.a21)

    def adjugate(self):
        return Mat2(self.a22, -self.a12, -self.a21, self.a11)

    def inverse(self):
        det = self.det()
        if isinstance(det, BiPoly):
            if det.is_zero() or not det.is_constant():
                raise SingularMatrixError("determinant %s is not an invertible constant" % det)
            det = det.constant_term
        if det == 0:
            raise SingularMatrixError("singular matrix")
        return self.adjugate() / det

    def evaluate(self, x, y=0):
        return self.map(lambda e: e.eval(x, y) if isinstance(e, BiPoly) else e)

    def compose(self, X, Y):
        return self.map(lambda e: e.compose(X, Y) if isinstance(e, BiPoly) else e)

    def shift(self, alpha, beta=0):
        return self.map(lambda e: e.shift(alpha, beta) if isinstance(e, BiPoly) else e)

    def __str__(self):
        return "({} {}; {} {})".format(*self.entries())


def mobius_apply(M, z):
    ''' (a z + b) / (c z + d) on the projective line; INF is an ordinary value '''
    a, b, c, d = M.entries()
    if z is INF:
        if c == 0:
            return INF
        return normalize(Fraction(a, c))
    num = a * z + b
    den = c * z + d
    if den == 0:
        return INF
    return normalize(Fraction(num, den))


def product(matrices, start=None):
    result = Mat2.identity() if start is None else start
    for M in matrices:
        result = result @ M
    return result
