''' Conservative matrix fields built from conjugate polynomial pairs

    A pair (f, fbar) is conjugate when
        f(x+1, y-1) - fbar(x, y-1) = f(x, y) - fbar(x+1, y)      (linear)
        f(x, y) fbar(x, y) has no mixed monomials                 (quadratic)
    and then a = f - fbar(x+1, y), f fbar = bX(x) + bY(y) generate the field.
'''
import logging
import random
from dataclasses import dataclass

from cmfield.exact import (BiPoly, Mat2, ContractViolation, SingularMatrixError, MixedMonomialError,
                           rational, split_additive)

logger = logging.getLogger(__name__)

X = BiPoly.x()
Y = BiPoly.y()


class ConjugacyError(Exception):
    pass


class LinearConditionError(ConjugacyError):

    def __init__(self, residual):
        super().__init__("linear condition fails, residual %s" % residual)
        self.residual = residual


class QuadraticConditionError(ConjugacyError):

    def __init__(self, monomials):
        super().__init__("quadratic condition fails, mixed monomials in f*fbar: "
                         + ", ".join(str(m) for m in monomials))
        self.monomials = monomials


class DegenerateSplitError(ConjugacyError):
    pass


class FieldIdentityError(Exception):
    ''' a conservativeness or determinant identity failed on a constructed field '''
    pass


@dataclass(frozen=True)
class ConjugatePair():
    f: BiPoly
    fbar: BiPoly
    a: BiPoly
    bX: BiPoly
    bY: BiPoly
    split_offset: object = 0

    @property
    def product(self):
        return self.f * self.fbar

    def key(self):
        return (str(self.f), str(self.fbar))


def validate_pair(f, fbar, split_offset=0):
    ''' check both conjugacy conditions and derive a, bX, bY

        The split is bX(x) = (f fbar)(x,0) + s and bY(y) = (f fbar)(0,y) - (f fbar)(0,0) - s.
    '''
    f, fbar = BiPoly.coerce(f), BiPoly.coerce(fbar)
    split_offset = rational(split_offset)
    lhs = f.shift(1, -1) - fbar.shift(0, -1)
    rhs = f - fbar.shift(1, 0)
    if lhs != rhs:
        raise LinearConditionError(lhs - rhs)
    prod = f * fbar
    try:
        split = split_additive(prod, prod.constant_term + split_offset)
    except MixedMonomialError as e:
        raise QuadraticConditionError(e.monomials)
    if split.bX.is_zero():
        raise DegenerateSplitError("b(x) vanishes identically for f=%s, fbar=%s" % (f, fbar))
    return ConjugatePair(f, fbar, rhs, split.bX, split.bY, split_offset)


def check_conditions(f, fbar):
    ''' (linear residual, mixed monomials of f*fbar), each checked on its own '''
    f, fbar = BiPoly.coerce(f), BiPoly.coerce(fbar)
    residual = (f.shift(1, -1) - fbar.shift(0, -1)) - (f - fbar.shift(1, 0))
    return residual, (f * fbar).mixed_part().monomials()


@dataclass(frozen=True)
class MatrixField():
    MX: Mat2
    MY: Mat2
    form: str = "cf"
    origin: tuple = (0, 0)
    pair: ConjugatePair = None

    def mx(self, x, y):
        return self.MX.evaluate(x, y)

    def my(self, x, y):
        return self.MY.evaluate(x, y)

    def residual(self):
        return check_conservative(self.MX, self.MY)

    def is_conservative(self):
        return self.residual().is_zero()


def check_conservative(MX, MY):
    ''' MX(x,y) MY(x+1,y) - MY(x,y) MX(x,y+1), the zero matrix for a conservative field '''
    return MX @ MY.shift(1, 0) - MY @ MX.shift(0, 1)


def _verify(field, det_x, det_y):
    residual = field.residual()
    if not residual.is_zero():
        raise FieldIdentityError("field is not conservative, residual %s" % residual)
    if field.MX.det() != det_x:
        raise FieldIdentityError("det MX = %s, expected %s" % (field.MX.det(), det_x))
    if field.MY.det() != det_y:
        raise FieldIdentityError("det MY = %s, expected %s" % (field.MY.det(), det_y))
    return field


def build_cf_field(pair):
    ''' MX = (0 bX; 1 a), MY = (fbar bX; 1 f) '''
    MX = Mat2(0, pair.bX, 1, pair.a)
    MY = Mat2(pair.fbar, pair.bX, 1, pair.f)
    field = MatrixField(MX, MY, "cf", (0, 0), pair)
    return _verify(field, -pair.bX, pair.bY)


def twist(field):
    ''' conjugate by D_{b(x)} into the form MX = (0 1; b(x+1) a), MY = (fbar 1; b f) '''
    if field.form != "cf":
        raise ContractViolation("twist expects a cf-form field, got %s" % field.form)
    pair = field.pair
    b, b1 = pair.bX, pair.bX.shift(1, 0)
    MX = Mat2(0, 1, b1, pair.a)
    MY = Mat2(pair.fbar, 1, b, pair.f)
    if Mat2.D(b) @ MX != field.MX @ Mat2.D(b1) or Mat2.D(b) @ MY != field.MY @ Mat2.D(b):
        raise FieldIdentityError("twisted matrices are not D-conjugates of the cf form")
    twisted = MatrixField(MX, MY, "twisted", field.origin, pair)
    return _verify(twisted, -b1, pair.bY)


def twisted_field(pair):
    return twist(build_cf_field(pair))


def twist_consistency(pair, n, m=1):
    ''' tau U_{a(0,m)} applied to the cf-form row product equals the twisted row product at 0 '''
    from cmfield.exact import mobius_apply
    cf = build_cf_field(pair)
    tw = twist(cf)
    cf_prod = Mat2.identity()
    for k in range(1, n):
        cf_prod = cf_prod @ cf.mx(k, m)
    tw_prod = Mat2.identity()
    for k in range(0, n):
        tw_prod = tw_prod @ tw.mx(k, m)
    prefix = Mat2.tau() @ Mat2.U(pair.a.eval(0, m))
    return mobius_apply(prefix @ cf_prod, 0) == mobius_apply(tw_prod, 0)


def dual(pair):
    ''' the pair (f(y,x), -fbar(y,x)) with split bX^ = -bY, bY^ = -bX '''
    return validate_pair(pair.f.swap(), -pair.fbar.swap(), pair.bX.constant_term)


def translate_origin(pair, alpha, beta):
    ''' move the origin to (alpha, beta): splits become bX(x+alpha), bY(y+beta) '''
    if alpha == 0 and beta == 0:
        return pair
    f = pair.f.shift(alpha, beta)
    fbar = pair.fbar.shift(alpha, beta)
    return validate_pair(f, fbar, -pair.bY.eval(0, beta))


def is_degenerate(pair):
    return pair.a.deg_y() <= 0


def _matrix_poly(poly, U, V):
    ''' sum c U^i V^j for commuting matrices U, V '''
    result = Mat2(0, 0, 0, 0)
    for (i, j), c in poly.items():
        result = result + (U ** i) @ (V ** j) * c
    return result


def commutative_field(fX, fY, B):
    ''' MX = fX(x I, B), MY = fY(y I, B) with fX, fY polynomials in (u, v) stored as (x, y) '''
    xI = Mat2(X, 0, 0, X)
    yI = Mat2(Y, 0, 0, Y)
    field = MatrixField(_matrix_poly(fX, xI, B), _matrix_poly(fY, yI, B), "general")
    if not field.is_conservative():
        raise FieldIdentityError("commutative construction did not conserve")
    return field


def inflation_field(M):
    ''' MX = MY = M(x + y) for a matrix M(t) of polynomials in t (stored as x) '''
    lifted = M.compose(X + Y, BiPoly())
    field = MatrixField(lifted, lifted, "general")
    if not field.is_conservative():
        raise FieldIdentityError("inflation did not conserve")
    return field


def trivial_fields(kind, *args):
    if kind == "commutative":
        return commutative_field(*args)
    if kind == "inflation":
        return inflation_field(*args)
    raise ContractViolation("unknown trivial construction %r" % kind)


@dataclass(frozen=True)
class LatticePath():
    start: tuple
    steps: str = ""

    def __post_init__(self):
        if set(self.steps) - {"R", "U"}:
            raise ContractViolation("lattice paths use only R and U steps")

    @property
    def end(self):
        return (self.start[0] + self.steps.count("R"), self.start[1] + self.steps.count("U"))

    @classmethod
    def canonical(cls, start, end):
        dx, dy = end[0] - start[0], end[1] - start[1]
        if dx < 0 or dy < 0:
            raise ContractViolation("end %s is not above and right of %s" % (end, start))
        return cls(tuple(start), "R" * dx + "U" * dy)

    @classmethod
    def random(cls, start, end, rng=None):
        rng = rng or random.Random()
        steps = list(cls.canonical(start, end).steps)
        rng.shuffle(steps)
        return cls(tuple(start), "".join(steps))

    def points(self):
        x, y = self.start
        for step in self.steps:
            yield step, (x, y)
            if step == "R":
                x += 1
            else:
                y += 1


def potential(field, path):
    ''' product of field matrices along a monotone path '''
    result = Mat2.identity()
    for step, point in path.points():
        M = field.mx(*point) if step == "R" else field.my(*point)
        if M.det() == 0:
            raise SingularMatrixError("singular M%s" % ("X" if step == "R" else "Y"), point)
        result = result @ M
    return result
